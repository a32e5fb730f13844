from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Any, Dict, FrozenSet, Tuple

from src.logging import get_logger

logger = get_logger(__name__)

MAX_PRODUCT = 2**31


class SemigroupError(Exception):
    pass


@dataclass(frozen=True)
class Semigroup:
    """The numerical semigroup generated by a coprime pair (p, q)."""

    p: int
    q: int
    gaps: Tuple[int, ...]

    @cached_property
    def _gap_set(self) -> FrozenSet[int]:
        return frozenset(self.gaps)

    @property
    def frobenius(self) -> int:
        return self.p * self.q - self.p - self.q

    @property
    def delta(self) -> int:
        return (self.p - 1) * (self.q - 1) // 2

    def contains(self, n: int) -> bool:
        return n >= 0 and n not in self._gap_set

    def __contains__(self, n: int) -> bool:
        return self.contains(n)

    def is_gap(self, n: int) -> bool:
        return n in self._gap_set

    def swapped(self) -> "Semigroup":
        return make_semigroup(self.q, self.p)

    def to_dict(self) -> Dict[str, Any]:
        return {"p": self.p, "q": self.q, "gaps": list(self.gaps)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Semigroup":
        return make_semigroup(data["p"], data["q"])


def check_pair(p: int, q: int) -> None:
    if p < 2:
        raise SemigroupError(f"p must be at least 2, got p={p}")
    if q < 2:
        raise SemigroupError(f"q must be at least 2, got q={q}")
    if gcd(p, q) != 1:
        raise SemigroupError(f"p={p} and q={q} are not coprime (gcd={gcd(p, q)})")
    if p * q > MAX_PRODUCT:
        raise SemigroupError(f"p*q={p * q} exceeds the supported bound 2^31")


def make_semigroup(p: int, q: int) -> Semigroup:
    check_pair(p, q)
    bound = p * q
    members = bytearray(bound + 1)
    for a in range(0, bound + 1, p):
        for n in range(a, bound + 1, q):
            members[n] = 1
    gaps = tuple(n for n in range(bound + 1) if not members[n])
    logger.debug("Semigroup (%s,%s) has %s gaps", p, q, len(gaps))
    return Semigroup(p=p, q=q, gaps=gaps)


def contains(semigroup: Semigroup, n: int) -> bool:
    return semigroup.contains(n)


def delta(semigroup: Semigroup) -> int:
    return semigroup.delta


def coprime_pairs(max_sum: int, min_value: int = 2) -> Tuple[Tuple[int, int], ...]:
    """All coprime (p, q) with p, q >= min_value and p + q <= max_sum, both orders,
    sorted by (p + q, p)."""
    pairs = [
        (p, s - p)
        for s in range(2 * min_value, max_sum + 1)
        for p in range(min_value, s - min_value + 1)
        if gcd(p, s - p) == 1
    ]
    return tuple(pairs)
