from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, List, Tuple

from src.diagram import Box, YoungDiagram, arm, h_plus, leg, staircase
from src.logging import get_logger
from src.qtpoly import (
    LaurentBivariate,
    exponent_sum,
    positive_weight_count,
    tangent_weights,
)

logger = get_logger(__name__)

Monomial = Tuple[int, int]


class HilbertError(Exception):
    pass


def box_of(monomial: Monomial) -> Box:
    """x^i y^j sits in column j+1, row i+1."""
    i, j = monomial
    return Box(j + 1, i + 1)


def monomial_of(box: Box) -> Monomial:
    return (box[1] - 1, box[0] - 1)


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal of finite colength, stored as the diagram of monomials outside it."""

    diagram: YoungDiagram

    @property
    def colength(self) -> int:
        return self.diagram.area

    def standard_monomials(self) -> FrozenSet[Monomial]:
        return frozenset(monomial_of(box) for box in self.diagram.boxes())

    def __contains__(self, monomial: Monomial) -> bool:
        i, j = monomial
        if i < 0 or j < 0:
            return False
        return box_of(monomial) not in self.diagram

    def generators(self) -> Tuple[Monomial, ...]:
        """Minimal monomial generators, one per outer corner of the diagram."""
        heights = self.diagram.padded(self.diagram.width + 1)
        found = []
        for x, height in enumerate(heights, start=1):
            if x == 1 or heights[x - 2] > height:
                found.append(monomial_of(Box(x, height + 1)))
        return tuple(sorted(found))


def v_monomials(p: int, q: int) -> FrozenSet[Monomial]:
    staircase(p, q)
    bound = (p - 1) * (q - 1)
    return frozenset(
        (i, j) for i in range(q) for j in range(p) if p * i + q * j < bound
    )


@lru_cache(maxsize=None)
def partitions(h: int, largest: int = -1) -> Tuple[Tuple[int, ...], ...]:
    """Partitions of h with parts at most ``largest``, largest parts first."""
    if h < 0:
        raise HilbertError(f"cannot partition a negative number, got {h}")
    if largest < 0:
        largest = h
    if h == 0:
        return ((),)
    found = []
    for first in range(min(h, largest), 0, -1):
        for rest in partitions(h - first, first):
            found.append((first,) + rest)
    return tuple(found)


def fixed_points(p: int, q: int, h: int) -> List[YoungDiagram]:
    """Torus-fixed points of the colength-h locus that meet V_{p,q}: D_I inside the V monomials."""
    allowed = v_monomials(p, q)
    points = []
    for columns in partitions(h):
        ideal = MonomialIdeal(YoungDiagram(columns))
        if ideal.standard_monomials() <= allowed:
            points.append(ideal.diagram)
    logger.debug("(%s,%s) h=%s has %s fixed points", p, q, h, len(points))
    return points


def unstable_dimension(diagram: YoungDiagram, p: int, q: int) -> int:
    below = sum(
        1 for box in diagram.boxes() if arm(diagram, box) * q < p * (leg(diagram, box) + 1)
    )
    above = sum(
        1 for box in diagram.boxes() if (arm(diagram, box) + 1) * q > p * leg(diagram, box)
    )
    count = below + above
    weights = positive_weight_count(tangent_weights(diagram), p, q)
    if count != weights or count != diagram.area + h_plus(diagram, p, q):
        raise HilbertError(
            f"unstable dimension of {diagram} disagrees: {count} by arm/leg, {weights} by weights"
        )
    return count


def virtual_poincare(p: int, q: int, h: int) -> LaurentBivariate:
    """Poincaré polynomial of the colength-h locus, summed over its torus-fixed points."""
    return exponent_sum((0, 2 * unstable_dimension(d, p, q)) for d in fixed_points(p, q, h))
