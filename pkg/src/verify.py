from __future__ import annotations

import multiprocessing as mp
import time
from dataclasses import dataclass, field
from math import comb
from typing import Any, Callable, Dict, List, Sequence, Tuple

import pandas as pd

from src.catalog import Catalog
from src.cellgeom import CellGeometryError, certify
from src.diagram import enumerate_subdiagrams, h_plus, label, staircase, transpose
from src.gmap import (
    NonMonotoneDualError,
    NotInImageError,
    brute_force_inverse,
    d_prime,
    nnp1_lemma_violations,
    reconstruct_nnp1,
)
from src.hilbert import HilbertError, fixed_points, unstable_dimension, virtual_poincare
from src.logging import get_logger
from src.qtpoly import (
    LaurentBivariate,
    area_generating,
    bigraded_semimodule_sum,
    catalan_from_semimodules,
    hilbert_cell_poly,
    poincare,
    q_binomial,
    q_integer,
    qt_catalan,
    rational_catalan_number,
    total,
)
from src.semigroup import coprime_pairs
from src.semimodule import (
    chain_bound,
    dimension,
    dimension_via_pairs,
    from_diagram,
    g,
    g_open_closed,
    p_basis,
    p_basis_from_diagram,
    q_cogenerators,
    q_cogenerators_from_diagram,
    to_diagram,
)

logger = get_logger(__name__)

SCHEMA = "jacobi-cells/1"
SCOPES = ("dim", "uv", "gmap", "catalan", "hilbert", "all")
CHECK_ERRORS = (AssertionError, CellGeometryError, NonMonotoneDualError, NotInImageError)


class VerifyError(Exception):
    pass


@dataclass
class InvariantResult:
    name: str
    instance: str
    checked: int = 0
    counterexamples: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def check(self, ok: bool, message: str) -> None:
        self.checked += 1
        if not ok:
            logger.error("%s %s: %s", self.name, self.instance, message)
            self.counterexamples.append(message)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "invariant": self.name,
            "instance": self.instance,
            "checked": self.checked,
            "passed": self.passed,
            "counterexamples": list(self.counterexamples),
        }


@dataclass
class RunReport:
    command: str
    scope: str
    bound: int
    results: List[InvariantResult] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def counterexamples(self) -> List[str]:
        return [
            f"{result.name} {result.instance}: {message}"
            for result in self.results
            for message in result.counterexamples
        ]

    def summary(self) -> pd.DataFrame:
        frame = pd.DataFrame(
            [
                {
                    "invariant": result.name,
                    "instances": 1,
                    "checked": result.checked,
                    "failures": len(result.counterexamples),
                }
                for result in self.results
            ],
            columns=["invariant", "instances", "checked", "failures"],
        )
        grouped = frame.groupby("invariant", sort=False).sum().reset_index()
        grouped["status"] = grouped["failures"].map(lambda n: "PASS" if n == 0 else "FAIL")
        return grouped

    def to_dict(self) -> Dict[str, Any]:
        # wall time stays out so identical runs serialize identically
        return {
            "schema": SCHEMA,
            "command": self.command,
            "scope": self.scope,
            "bound": self.bound,
            "passed": self.passed,
            "results": [result.to_dict() for result in self.results],
        }


def _pair_name(p: int, q: int) -> str:
    return f"({p},{q})"


def suite_dim(p: int, q: int) -> List[InvariantResult]:
    instance = _pair_name(p, q)
    semigroup = Catalog.semigroup(p, q)
    stairs = staircase(p, q)
    labels = InvariantResult("labels-are-gaps", instance)
    round_trip = InvariantResult("round-trip", instance)
    routes = InvariantResult("dimension-routes", instance)
    cogenerator_count = InvariantResult("g-counts-cogenerators", instance)
    open_closed = InvariantResult("g-open-closed", instance)
    from_boxes = InvariantResult("basis-from-diagram", instance)
    swap = InvariantResult("swap-symmetry", instance)
    chains = InvariantResult("chain-bound", instance)
    poincare_area = InvariantResult("poincare-area", instance)
    poincare_swap = InvariantResult("poincare-swap", instance)
    catalan_count = InvariantResult("rational-catalan-count", instance)

    box_labels = sorted(label(p, q, box) for box in stairs.boxes())
    labels.check(box_labels == list(semigroup.gaps), f"labels {box_labels} are not the gaps")
    labels.check(
        all(semigroup.contains(semigroup.frobenius - gap) for gap in semigroup.gaps),
        "gap symmetry fails",
    )

    modules = Catalog.semimodules(p, q)
    for module in modules:
        diagram = to_diagram(module)
        name = f"D={diagram}"
        round_trip.check(from_diagram(semigroup, diagram) == module, f"{name} does not round-trip")
        dim = dimension(module)
        expected = semigroup.delta - h_plus(diagram, p, q)
        routes.check(
            dim == dimension_via_pairs(module) == expected,
            f"{name}: dim={dim}, pairs={dimension_via_pairs(module)}, delta-h+={expected}",
        )
        cogenerators = q_cogenerators(module)
        for a in p_basis(module):
            count = sum(1 for b in cogenerators if b >= a)
            cogenerator_count.check(g(module, a) == count, f"{name}: g({a}) != {count}")
            open_closed.check(
                g(module, a) == g_open_closed(module, a), f"{name}: half-open counts differ at {a}"
            )
        from_boxes.check(
            p_basis_from_diagram(diagram, p, q) == p_basis(module)
            and q_cogenerators_from_diagram(diagram, p, q) == cogenerators,
            f"{name}: generators read off the diagram differ",
        )
        swap.check(dimension(module.swapped()) == dim, f"{name}: dimension changes under swap")
        basis = p_basis(module)
        for k in range(1, p):
            bound = chain_bound(module, k)
            height = stairs.heights[k - 1]
            chains.check(
                g(module, basis[k - 1]) <= bound <= height,
                f"{name}: g(a_{k - 1})={g(module, basis[k - 1])}, bound={bound}, height={height}",
            )

    poly = poincare(p, q)
    areas = area_generating(p, q)
    poincare_area.check(poly == areas, f"P={poly} vs {areas}")
    poincare_swap.check(poly == poincare(q, p), "P(p,q) != P(q,p)")
    catalan_count.check(
        len(modules) == rational_catalan_number(p, q) == poly.value_at_one(),
        f"{len(modules)} semi-modules, expected {rational_catalan_number(p, q)}",
    )
    transposed = {transpose(d) for d in enumerate_subdiagrams(stairs.diagram)}
    swapped = set(enumerate_subdiagrams(staircase(q, p).diagram))
    catalan_count.check(transposed == swapped, "transpose does not match the swapped staircase")
    return [
        labels,
        round_trip,
        routes,
        cogenerator_count,
        open_closed,
        from_boxes,
        swap,
        chains,
        poincare_area,
        poincare_swap,
        catalan_count,
    ]


def suite_uv(p: int, q: int) -> List[InvariantResult]:
    result = InvariantResult("uv-certificate", _pair_name(p, q))
    for diagram in enumerate_subdiagrams(staircase(p, q).diagram):
        try:
            certify(diagram, p, q)
        except CHECK_ERRORS as exc:
            result.check(False, f"D={diagram}: {exc}")
        else:
            result.check(True, "")
    return [result]


def suite_gmap(p: int, q: int) -> List[InvariantResult]:
    instance = _pair_name(p, q)
    bijective = InvariantResult("G-bijective", instance)
    inscribed = InvariantResult("dual-inscribed", instance)
    results = [bijective, inscribed]
    try:
        permutation = Catalog.permutation(p, q)
    except CHECK_ERRORS as exc:
        bijective.check(False, str(exc))
        return results
    for first, second, image in permutation.collisions:
        bijective.check(False, f"counterexample: {first} and {second} both map to {image}")
    bijective.check(
        permutation.is_bijective,
        f"{len(permutation.collisions)} collisions, {len(permutation.outside)} images leave R+",
    )
    bijective.check(
        permutation.generating_functions_match, "sum t^2|G(D)| differs from sum t^2|D|"
    )
    stairs = staircase(p, q)
    for module in Catalog.semimodules(p, q):
        inscribed.check(
            stairs.contains_diagram(d_prime(module)), f"D' of {to_diagram(module)} leaves R+"
        )

    if q == p + 1:
        inverse = InvariantResult("nnp1-inverse", instance)
        lemmas = InvariantResult("nnp1-lemmas", instance)
        results.extend([inverse, lemmas])
        for source, image in permutation.pairs:
            try:
                rebuilt = reconstruct_nnp1(image, p)
                oracle = brute_force_inverse(image, p, q, permutation)
            except CHECK_ERRORS as exc:
                inverse.check(False, f"D'={image}: {exc}")
                continue
            inverse.check(
                rebuilt == oracle == source,
                f"D'={image}: rebuilt {rebuilt}, oracle {oracle}, source {source}",
            )
        for module in Catalog.semimodules(p, q):
            violations = nnp1_lemma_violations(module)
            lemmas.check(not violations, "; ".join(violations))
    return results


def suite_hilbert(p: int, q: int) -> List[InvariantResult]:
    instance = _pair_name(p, q)
    weights = InvariantResult("tangent-weights", instance)
    points = InvariantResult("fixed-points", instance)
    cells = InvariantResult("hilbert-cells", instance)
    stairs = staircase(p, q)
    by_area: Dict[int, set] = {}
    for diagram in enumerate_subdiagrams(stairs.diagram):
        by_area.setdefault(diagram.area, set()).add(diagram)
        try:
            unstable_dimension(diagram, p, q)
        except HilbertError as exc:
            weights.check(False, f"D={diagram}: {exc}")
        else:
            weights.check(True, "")
    polys = []
    for h in range(stairs.area + 1):
        found = set(fixed_points(p, q, h))
        points.check(found == by_area.get(h, set()), f"h={h}: fixed points differ from R+")
        poly = hilbert_cell_poly(p, q, h)
        cells.check(poly == virtual_poincare(p, q, h), f"h={h}: two cell sums differ")
        polys.append(poly)
    count = total(polys).value_at_one()
    cells.check(
        count == rational_catalan_number(p, q), f"sum over h gives {count} fixed points"
    )
    return [weights, points, cells]


def suite_catalan(n: int) -> List[InvariantResult]:
    instance = f"n={n}"
    symmetry = InvariantResult("qt-symmetry", instance)
    specialization = InvariantResult("q-specialization", instance)
    count = InvariantResult("catalan-count", instance)
    bigraded = InvariantResult("bigraded-sum", instance)
    poincare_identity = InvariantResult("poincare-catalan", instance)

    catalan = qt_catalan(n)
    symmetry.check(catalan == catalan.swap(), f"C_{n}(q,t) != C_{n}(t,q)")

    top = comb(n, 2)
    shift = LaurentBivariate.monomial(top, 0)
    folded = catalan.substitute_monomial("t", "q", -1)
    lhs = shift * folded * q_integer(n + 1)
    specialization.check(lhs == q_binomial(2 * n, n), f"{lhs} != binom(2n,n)_q")

    expected = comb(2 * n, n) // (n + 1)
    count.check(catalan.value_at_one() == expected, f"C_{n}(1,1) != {expected}")
    at_q_one = catalan.specialize_one("q")
    if n > 1:
        area_side = total(
            LaurentBivariate.monomial(0, top - d.area)
            for d in enumerate_subdiagrams(staircase(n, n + 1).diagram)
        )
    else:
        area_side = LaurentBivariate.constant(1)
    count.check(at_q_one == area_side, f"C_{n}(1,t) != sum of t^(C(n,2)-area)")

    inverted = catalan.substitute_monomial("q", "q", -1)
    bigraded.check(
        bigraded_semimodule_sum(n) == shift * inverted,
        f"bigraded semi-module sum differs for n={n}",
    )
    bigraded.check(catalan_from_semimodules(n) == catalan, "semi-module Catalan sum differs")

    if n > 1:
        rescaled = catalan.specialize_one("t").substitute_monomial("q", "t", -2)
        expected_poly = LaurentBivariate.monomial(0, 2 * top) * rescaled
        poincare_identity.check(
            poincare(n, n + 1) == expected_poly, f"{poincare(n, n + 1)} != {expected_poly}"
        )
    return [symmetry, specialization, count, bigraded, poincare_identity]


PAIR_SUITES: Dict[str, Callable[[int, int], List[InvariantResult]]] = {
    "dim": suite_dim,
    "uv": suite_uv,
    "gmap": suite_gmap,
    "hilbert": suite_hilbert,
}

Task = Tuple[str, Tuple[int, ...]]


def _run_task(task: Task) -> List[InvariantResult]:
    scope, args = task
    if scope == "catalan":
        return suite_catalan(*args)
    return PAIR_SUITES[scope](*args)


CATALAN_BOUND = 8


def plan(scope: str, bound: int) -> List[Task]:
    if scope not in SCOPES:
        raise VerifyError(f"unknown scope {scope!r}, expected one of {', '.join(SCOPES)}")
    if bound < 2:
        raise VerifyError(f"bound must be at least 2, got {bound}")
    scopes: Sequence[str] = SCOPES[:-1] if scope == "all" else (scope,)
    tasks: List[Task] = []
    for name in scopes:
        if name == "catalan":
            # "all" caps catalan at its standalone default
            top = bound if scope == "catalan" else min(bound, CATALAN_BOUND)
            tasks.extend((name, (n,)) for n in range(1, top + 1))
        else:
            tasks.extend((name, pair) for pair in coprime_pairs(bound))
    return tasks


def run(scope: str, bound: int, threads: int = 1, command: str = "") -> RunReport:
    tasks = plan(scope, bound)
    logger.info("Running %s verification tasks for scope %s", len(tasks), scope)
    started = time.perf_counter()
    if threads > 1 and len(tasks) > 1:
        with mp.Pool(processes=threads) as pool:
            chunks = pool.map(_run_task, tasks)
    else:
        chunks = [_run_task(task) for task in tasks]
    report = RunReport(
        command=command or f"verify {scope} {bound}",
        scope=scope,
        bound=bound,
        results=[result for chunk in chunks for result in chunk],
        elapsed=time.perf_counter() - started,
    )
    logger.info("Verification %s in %.2fs", "passed" if report.passed else "failed", report.elapsed)
    return report
