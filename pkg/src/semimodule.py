from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Tuple

from src.diagram import Box, YoungDiagram, enumerate_subdiagrams, label, staircase
from src.logging import get_logger
from src.semigroup import Semigroup, make_semigroup

logger = get_logger(__name__)


class SemiModuleError(Exception):
    pass


@dataclass(frozen=True)
class SemiModule:
    """A 0-normalized semi-module, stored as its co-gap set Δ∖Γ."""

    semigroup: Semigroup
    cogaps: Tuple[int, ...]

    @cached_property
    def _cogap_set(self) -> FrozenSet[int]:
        return frozenset(self.cogaps)

    @property
    def p(self) -> int:
        return self.semigroup.p

    @property
    def q(self) -> int:
        return self.semigroup.q

    def __contains__(self, n: int) -> bool:
        return self.semigroup.contains(n) or n in self._cogap_set

    def missing(self) -> Tuple[int, ...]:
        """ℤ≥0 ∖ Δ."""
        return tuple(g for g in self.semigroup.gaps if g not in self._cogap_set)

    def swapped(self) -> "SemiModule":
        return SemiModule(self.semigroup.swapped(), self.cogaps)

    def to_dict(self) -> Dict[str, Any]:
        return {"p": self.p, "q": self.q, "cogaps": list(self.cogaps)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SemiModule":
        return validate(make_semigroup(data["p"], data["q"]), data["cogaps"])


def validate(semigroup: Semigroup, cogaps: Iterable[int]) -> SemiModule:
    members = sorted(set(cogaps))
    member_set = set(members)
    for e in members:
        if not semigroup.is_gap(e):
            raise SemiModuleError(
                f"{e} is not a gap of the semigroup ({semigroup.p},{semigroup.q})"
            )
    for e in members:
        for step in (semigroup.p, semigroup.q):
            if not (semigroup.contains(e + step) or e + step in member_set):
                raise SemiModuleError(
                    f"closure fails at {e}: {e}+{step}={e + step} is not in the set"
                )
    return SemiModule(semigroup=semigroup, cogaps=tuple(members))


def _labelled_boxes(p: int, q: int) -> Dict[int, Box]:
    return {label(p, q, box): box for box in staircase(p, q).boxes()}


def to_diagram(module: SemiModule) -> YoungDiagram:
    boxes_by_label = _labelled_boxes(module.p, module.q)
    heights = [0] * module.p
    rows_by_column: Dict[int, List[int]] = {}
    for e in module.cogaps:
        box = boxes_by_label[e]
        rows_by_column.setdefault(box.x, []).append(box.y)
    for x, rows in rows_by_column.items():
        assert sorted(rows) == list(range(1, len(rows) + 1)), (
            f"labels of column {x} do not form a bottom-anchored column"
        )
        heights[x - 1] = len(rows)
    assert all(heights[i] >= heights[i + 1] for i in range(len(heights) - 1)), (
        f"column heights {heights} are not weakly decreasing"
    )
    return YoungDiagram.from_heights(heights)


def from_diagram(semigroup: Semigroup, diagram: YoungDiagram) -> SemiModule:
    stairs = staircase(semigroup.p, semigroup.q)
    if not stairs.contains_diagram(diagram):
        raise SemiModuleError(
            f"diagram {diagram} does not fit in the ({semigroup.p},{semigroup.q}) staircase"
        )
    cogaps = [label(semigroup.p, semigroup.q, box) for box in diagram.boxes()]
    return validate(semigroup, cogaps)


def p_basis(module: SemiModule) -> Tuple[int, ...]:
    basis = []
    for residue in range(module.p):
        n = residue
        while n not in module:
            n += module.p
        basis.append(n)
    return tuple(sorted(basis))


def q_cogenerators(module: SemiModule) -> Tuple[int, ...]:
    p, q = module.p, module.q
    return tuple(y for y in range(-q, p * q) if y not in module and y + q in module)


def g(module: SemiModule, a: int) -> int:
    return sum(1 for n in range(a, a + module.q) if n not in module)


def g_open_closed(module: SemiModule, a: int) -> int:
    """|(a, a+q] ∖ Δ|; agrees with g at basis elements."""
    return sum(1 for n in range(a + 1, a + module.q + 1) if n not in module)


def g_values(module: SemiModule) -> Tuple[int, ...]:
    return tuple(g(module, a) for a in p_basis(module))


def dimension(module: SemiModule) -> int:
    return sum(g_values(module))


def dimension_via_pairs(module: SemiModule) -> int:
    cogenerators = q_cogenerators(module)
    return sum(1 for a in p_basis(module) for b in cogenerators if a < b)


def gaps_count(module: SemiModule) -> int:
    return module.semigroup.delta - len(module.cogaps)


def enumerate_semimodules(semigroup: Semigroup) -> Iterator[SemiModule]:
    bound = staircase(semigroup.p, semigroup.q).diagram
    for diagram in enumerate_subdiagrams(bound):
        yield from_diagram(semigroup, diagram)


def p_basis_from_diagram(diagram: YoungDiagram, p: int, q: int) -> Tuple[int, ...]:
    # label of the top box of each column, or of the box just below an empty one
    return tuple(sorted(p * q - q * x - p * diagram.height(x) for x in range(1, p + 1)))


def q_cogenerators_from_diagram(
    diagram: YoungDiagram, p: int, q: int
) -> Tuple[int, ...]:
    return tuple(
        sorted(label(p, q, Box(diagram.row_length(y) + 1, y)) for y in range(1, q + 1))
    )


def generator_chains(module: SemiModule, k: int) -> List[Tuple[int, ...]]:
    """Split a_0..a_{k-1} into chains whose consecutive members differ by q mod p."""
    p, q = module.p, module.q
    if not 1 <= k < p:
        raise SemiModuleError(f"chains are defined for 1 <= k < p, got k={k}")
    generators = p_basis(module)[:k]
    by_residue = {a % p: a for a in generators}
    successor = {a: by_residue.get((a + q) % p) for a in generators}
    has_predecessor = {b for b in successor.values() if b is not None}

    chains = []
    for start in generators:
        if start in has_predecessor:
            continue
        chain = [start]
        nxt = successor[start]
        while nxt is not None:
            chain.append(nxt)
            nxt = successor[nxt]
        chains.append(tuple(chain))
    assert sum(len(chain) for chain in chains) == k
    return sorted(chains)


def chain_bound(module: SemiModule, k: int) -> int:
    p, q = module.p, module.q
    return q - sum(-(-len(chain) * q // p) for chain in generator_chains(module, k))
