from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from src.diagram import YoungDiagram, enumerate_subdiagrams, staircase
from src.logging import get_logger
from src.qtpoly import exponent_sum
from src.semigroup import make_semigroup
from src.semimodule import (
    SemiModule,
    SemiModuleError,
    dimension,
    from_diagram,
    g,
    g_values,
    p_basis,
    to_diagram,
    validate,
)

logger = get_logger(__name__)


class NonMonotoneDualError(Exception):
    pass


class NotInImageError(Exception):
    pass


Collision = Tuple[YoungDiagram, YoungDiagram, YoungDiagram]


@dataclass
class GPermutation:
    p: int
    q: int
    pairs: Tuple[Tuple[YoungDiagram, YoungDiagram], ...] = ()
    collisions: List[Collision] = field(default_factory=list)
    outside: List[YoungDiagram] = field(default_factory=list)
    generating_functions_match: bool = True

    @property
    def is_bijective(self) -> bool:
        return not self.collisions and not self.outside

    def preimages(self, diagram: YoungDiagram) -> List[YoungDiagram]:
        return [source for source, target in self.pairs if target == diagram]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "q": self.q,
            "bijective": self.is_bijective,
            "generating_functions_match": self.generating_functions_match,
            "pairs": [[list(s.columns), list(t.columns)] for s, t in self.pairs],
            "collisions": [
                [list(a.columns), list(b.columns), list(t.columns)]
                for a, b, t in self.collisions
            ],
        }


def d_prime(module: SemiModule) -> YoungDiagram:
    values = g_values(module)
    for index in range(len(values) - 1):
        if values[index] < values[index + 1]:
            raise NonMonotoneDualError(
                f"g-values {list(values)} of cogaps {list(module.cogaps)} over "
                f"({module.p},{module.q}) increase at position {index + 1}"
            )
    dual = YoungDiagram.from_heights(values)
    assert dual.area == dimension(module)
    assert staircase(module.p, module.q).contains_diagram(dual), (
        f"D' = {dual} does not fit in R+ for ({module.p},{module.q})"
    )
    return dual


def G(diagram: YoungDiagram, p: int, q: int) -> YoungDiagram:
    return d_prime(from_diagram(make_semigroup(p, q), diagram))


def check_G_bijective(p: int, q: int) -> GPermutation:
    semigroup = make_semigroup(p, q)
    stairs = staircase(p, q)
    pairs = []
    seen: Dict[YoungDiagram, YoungDiagram] = {}
    permutation = GPermutation(p=p, q=q)
    for source in enumerate_subdiagrams(stairs.diagram):
        target = d_prime(from_diagram(semigroup, source))
        pairs.append((source, target))
        if not stairs.contains_diagram(target):
            permutation.outside.append(source)
        if target in seen:
            collision = (seen[target], source, target)
            logger.error(
                "G collision over (%s,%s): %s and %s both map to %s", p, q, *collision
            )
            permutation.collisions.append(collision)
        else:
            seen[target] = source
    permutation.pairs = tuple(pairs)

    sources_sum = exponent_sum((0, 2 * s.area) for s, _ in pairs)
    images_sum = exponent_sum((0, 2 * t.area) for _, t in pairs)
    permutation.generating_functions_match = sources_sum == images_sum
    if not permutation.generating_functions_match:
        logger.error("sum t^2|G(D)| differs from sum t^2|D| over (%s,%s)", p, q)
    logger.debug(
        "G over (%s,%s): %s diagrams, %s collisions", p, q, len(pairs), len(permutation.collisions)
    )
    return permutation


def _counts_below(dual: YoungDiagram, n: int) -> Tuple[int, ...]:
    """c_j = n - g(a_j): the number of generators below a_j + n."""
    if not staircase(n, n + 1).contains_diagram(dual):
        raise NotInImageError(f"{dual} does not fit in R+ for ({n},{n + 1})")
    counts = tuple(n - height for height in dual.padded(n))
    for j, count in enumerate(counts):
        if count <= j:
            raise NotInImageError(f"{dual} is not in the image of G: column {j + 1} is too tall")
    return counts


def _window_bounds(counts: Tuple[int, ...], n: int) -> List[int]:
    bounds = [counts[0]]
    while bounds[-1] < n:
        nxt = counts[bounds[-1]]
        if nxt <= bounds[-1]:
            raise NotInImageError(
                f"window {len(bounds)} would hold no generators (bound stays at {nxt})"
            )
        bounds.append(nxt)
    return bounds


def bounce_windows(dual: YoungDiagram, n: int) -> List[int]:
    """Number of generators in [kn, (k+1)n) for k = 0, 1, ..."""
    bounds = _window_bounds(_counts_below(dual, n), n)
    return [hi - lo for lo, hi in zip([0] + bounds, bounds)]


def _residue_order(counts: Tuple[int, ...], bounds: List[int]) -> List[int]:
    windows = [list(range(lo, hi)) for lo, hi in zip([0] + bounds, bounds)]
    order = list(windows[0])
    for k in range(1, len(windows)):
        previous = set(windows[k - 1])
        position = {index: place for place, index in enumerate(order)}
        cuts = []
        for beta in windows[k]:
            below = []
            for alpha in order:
                if alpha in previous:
                    smaller = beta >= counts[alpha]
                else:
                    smaller = any(
                        position[alpha] < position[gamma] and beta >= counts[gamma]
                        for gamma in windows[k - 1]
                    )
                below.append(smaller)
            cut = sum(below)
            if below != [True] * cut + [False] * (len(order) - cut):
                raise NotInImageError(f"residues below generator {beta} do not form a prefix")
            if cuts and cut < cuts[-1]:
                raise NotInImageError(f"residue of generator {beta} falls below its predecessor")
            cuts.append(cut)
        merged = []
        start = 0
        for beta, cut in zip(windows[k], cuts):
            merged.extend(order[start:cut])
            merged.append(beta)
            start = cut
        merged.extend(order[start:])
        order = merged
    return order


def generators_from_dual(dual: YoungDiagram, n: int) -> Tuple[int, ...]:
    counts = _counts_below(dual, n)
    bounds = _window_bounds(counts, n)
    order = _residue_order(counts, bounds)
    residue = {index: rank for rank, index in enumerate(order)}
    window = {}
    for k, (lo, hi) in enumerate(zip([0] + bounds, bounds)):
        for index in range(lo, hi):
            window[index] = k
    generators = tuple(window[i] * n + residue[i] for i in range(n))
    if generators[0] != 0 or any(a >= b for a, b in zip(generators, generators[1:])):
        raise NotInImageError(f"reconstructed generators {list(generators)} are not 0 < a_1 < ...")
    return generators


def reconstruct_nnp1(dual: YoungDiagram, n: int) -> YoungDiagram:
    """The unique D with G(D) = dual over (n, n+1), rebuilt window by window."""
    generators = generators_from_dual(dual, n)
    semigroup = make_semigroup(n, n + 1)
    least = {a % n: a for a in generators}
    cogaps = [e for e in semigroup.gaps if e >= least[e % n]]
    try:
        module = validate(semigroup, cogaps)
    except SemiModuleError as exc:
        raise NotInImageError(f"{dual} is not in the image of G: {exc}") from exc
    if p_basis(module) != generators:
        raise NotInImageError(f"{dual} is not in the image of G: generators do not contain Γ")
    diagram = to_diagram(module)
    image = G(diagram, n, n + 1)
    if image != dual:
        raise NotInImageError(f"{dual} is not in the image of G: rebuilt {diagram} maps to {image}")
    return diagram


def brute_force_inverse(
    dual: YoungDiagram, p: int, q: int, permutation: Optional[GPermutation] = None
) -> YoungDiagram:
    if permutation is None:
        permutation = check_G_bijective(p, q)
    sources = permutation.preimages(dual)
    if not sources:
        raise NotInImageError(f"{dual} is not in the image of G over ({p},{q})")
    if len(sources) > 1:
        raise NotInImageError(
            f"{dual} has {len(sources)} preimages over ({p},{q}): "
            + ", ".join(str(s) for s in sources)
        )
    return sources[0]


def nnp1_lemma_violations(module: SemiModule) -> List[str]:
    """Check the structural lemmas of the (n, n+1) inverse on one semi-module."""
    n = module.p
    if module.q != n + 1:
        raise NotInImageError(f"lemma checks need q = p + 1, got ({module.p},{module.q})")
    basis = p_basis(module)
    values = [g(module, a) for a in basis]
    found = []

    for i in range(n - 1):
        lo, hi = basis[i] + n, basis[i + 1] + n
        inside = sum(1 for a in basis if lo <= a <= hi)
        if inside != values[i] - values[i + 1]:
            found.append(
                f"{inside} generators in [{lo},{hi}], expected g(a_{i})-g(a_{i + 1})="
                f"{values[i] - values[i + 1]}"
            )
        filled = all(e in module for e in range(basis[i], basis[i + 1] + 1))
        if (values[i] == values[i + 1]) != filled:
            found.append(f"g(a_{i})=g(a_{i + 1}) disagrees with [{basis[i]},{basis[i + 1]}] in Δ")

    by_window: Dict[int, List[int]] = defaultdict(list)
    for a in basis:
        by_window[a // n].append(a)
    for k, members in sorted(by_window.items()):
        smallest = min(members)
        if not all(e in module for e in range(k * n, smallest + 1)):
            found.append(f"[{k * n},{smallest}] is not inside Δ")

    for alpha in basis:
        for beta in basis:
            if (beta - alpha) % n == 1 and beta > alpha + n + 1:
                found.append(
                    f"generators {alpha}, {beta} differ by 1 mod n but {beta} > {alpha}+n+1"
                )

    for message in found:
        logger.error("(%s,%s) cogaps %s: %s", n, n + 1, list(module.cogaps), message)
    return found
