from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Any, Dict, Iterable, Mapping, Tuple, Union

from src.diagram import (
    YoungDiagram,
    arm,
    dinv,
    enumerate_subdiagrams,
    h_plus,
    leg,
    staircase,
)
from src.logging import get_logger
from src.semigroup import make_semigroup
from src.semimodule import dimension, enumerate_semimodules, gaps_count

logger = get_logger(__name__)

Exponent = Tuple[int, int]
QT = ("q", "t")
T1T2 = ("t1", "t2")


class PolynomialError(Exception):
    pass


@dataclass(frozen=True)
class LaurentBivariate:
    """Exact Laurent polynomial in two variables with integer coefficients.

    ``terms`` holds (e1, e2, coefficient) triples sorted by exponent, with no zero
    coefficients, so two polynomials are equal exactly when their term sets are.
    """

    terms: Tuple[Tuple[int, int, int], ...] = ()
    variables: Tuple[str, str] = QT

    @classmethod
    def from_mapping(
        cls, mapping: Mapping[Exponent, int], variables: Tuple[str, str] = QT
    ) -> "LaurentBivariate":
        terms = tuple(
            (e1, e2, coeff) for (e1, e2), coeff in sorted(mapping.items()) if coeff != 0
        )
        return cls(terms=terms, variables=variables)

    @classmethod
    def monomial(
        cls, e1: int, e2: int, coeff: int = 1, variables: Tuple[str, str] = QT
    ) -> "LaurentBivariate":
        return cls.from_mapping({(e1, e2): coeff}, variables)

    @classmethod
    def constant(cls, value: int, variables: Tuple[str, str] = QT) -> "LaurentBivariate":
        return cls.monomial(0, 0, value, variables)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "LaurentBivariate":
        variables = tuple(data.get("variables", QT))
        mapping: Dict[Exponent, int] = defaultdict(int)
        for e1, e2, coeff in data["terms"]:
            mapping[(e1, e2)] += coeff
        return cls.from_mapping(mapping, variables)  # type: ignore[arg-type]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "variables": list(self.variables),
            "terms": [list(term) for term in self.terms],
        }

    def is_zero(self) -> bool:
        return not self.terms

    def _coerce(self, other: Union["LaurentBivariate", int]) -> "LaurentBivariate":
        if isinstance(other, int):
            return LaurentBivariate.constant(other, self.variables)
        if other.variables != self.variables and not (other.is_zero() or self.is_zero()):
            raise PolynomialError(
                f"cannot combine polynomials in {self.variables} and {other.variables}"
            )
        return other

    def add(self, other: Union["LaurentBivariate", int]) -> "LaurentBivariate":
        other = self._coerce(other)
        mapping: Dict[Exponent, int] = defaultdict(int)
        for e1, e2, coeff in self.terms + other.terms:
            mapping[(e1, e2)] += coeff
        variables = self.variables if not self.is_zero() else other.variables
        return LaurentBivariate.from_mapping(mapping, variables)

    def mul(self, other: Union["LaurentBivariate", int]) -> "LaurentBivariate":
        other = self._coerce(other)
        mapping: Dict[Exponent, int] = defaultdict(int)
        for a1, a2, ca in self.terms:
            for b1, b2, cb in other.terms:
                mapping[(a1 + b1, a2 + b2)] += ca * cb
        return LaurentBivariate.from_mapping(mapping, self.variables)

    def scalar_mul(self, factor: int) -> "LaurentBivariate":
        return LaurentBivariate.from_mapping(
            {(e1, e2): coeff * factor for e1, e2, coeff in self.terms}, self.variables
        )

    def __add__(self, other: Union["LaurentBivariate", int]) -> "LaurentBivariate":
        return self.add(other)

    __radd__ = __add__

    def __neg__(self) -> "LaurentBivariate":
        return self.scalar_mul(-1)

    def __sub__(self, other: Union["LaurentBivariate", int]) -> "LaurentBivariate":
        return self.add(-self._coerce(other))

    def __mul__(self, other: Union["LaurentBivariate", int]) -> "LaurentBivariate":
        if isinstance(other, int):
            return self.scalar_mul(other)
        return self.mul(other)

    __rmul__ = __mul__

    def _index(self, var: str) -> int:
        if var not in self.variables:
            raise PolynomialError(f"unknown variable {var!r}, expected one of {self.variables}")
        return self.variables.index(var)

    def substitute_monomial(self, var: str, target: str, exponent: int) -> "LaurentBivariate":
        """Replace ``var`` by ``target**exponent`` (target may equal var)."""
        source, dest = self._index(var), self._index(target)
        mapping: Dict[Exponent, int] = defaultdict(int)
        for e1, e2, coeff in self.terms:
            exps = [e1, e2]
            moved = exps[source]
            exps[source] = 0
            exps[dest] += moved * exponent
            mapping[(exps[0], exps[1])] += coeff
        return LaurentBivariate.from_mapping(mapping, self.variables)

    def specialize_one(self, var: str) -> "LaurentBivariate":
        """Set ``var`` to 1."""
        index = self._index(var)
        mapping: Dict[Exponent, int] = defaultdict(int)
        for e1, e2, coeff in self.terms:
            exps = [e1, e2]
            exps[index] = 0
            mapping[(exps[0], exps[1])] += coeff
        return LaurentBivariate.from_mapping(mapping, self.variables)

    def swap(self) -> "LaurentBivariate":
        return LaurentBivariate.from_mapping(
            {(e2, e1): coeff for e1, e2, coeff in self.terms}, self.variables
        )

    def evaluate(self, first: Union[int, Fraction], second: Union[int, Fraction]) -> Fraction:
        total = Fraction(0)
        for e1, e2, coeff in self.terms:
            total += coeff * Fraction(first) ** e1 * Fraction(second) ** e2
        return total

    def value_at_one(self) -> int:
        return sum(coeff for _, _, coeff in self.terms)

    def degree(self, var: str) -> int:
        index = self._index(var)
        if self.is_zero():
            raise PolynomialError("the zero polynomial has no degree")
        return max(term[index] for term in self.terms)

    def is_univariate(self) -> bool:
        return all(e1 == 0 for e1, _, _ in self.terms) or all(
            e2 == 0 for _, e2, _ in self.terms
        )

    def _ordered_terms(self) -> Tuple[Tuple[int, int, int], ...]:
        if self.is_univariate():
            return tuple(sorted(self.terms, key=lambda term: (term[0] + term[1], term)))
        return tuple(sorted(self.terms, key=lambda term: (-term[0], -term[1])))

    def _render_monomial(self, e1: int, e2: int) -> str:
        factors = []
        for name, exponent in zip(self.variables, (e1, e2)):
            if exponent == 1:
                factors.append(name)
            elif exponent != 0:
                factors.append(f"{name}^{exponent}")
        return "*".join(factors)

    def render(self) -> str:
        if self.is_zero():
            return "0"
        pieces = []
        for index, (e1, e2, coeff) in enumerate(self._ordered_terms()):
            monomial = self._render_monomial(e1, e2)
            magnitude = abs(coeff)
            if not monomial:
                body = str(magnitude)
            elif magnitude == 1:
                body = monomial
            else:
                body = f"{magnitude}*{monomial}"
            if index == 0:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f" + {body}" if coeff > 0 else f" - {body}")
        return "".join(pieces)

    def __str__(self) -> str:
        return self.render()


def total(polys: Iterable[LaurentBivariate], variables: Tuple[str, str] = QT) -> LaurentBivariate:
    mapping: Dict[Exponent, int] = defaultdict(int)
    for poly in polys:
        for e1, e2, coeff in poly.terms:
            mapping[(e1, e2)] += coeff
    return LaurentBivariate.from_mapping(mapping, variables)


def exponent_sum(
    exponents: Iterable[Exponent], variables: Tuple[str, str] = QT
) -> LaurentBivariate:
    mapping: Dict[Exponent, int] = defaultdict(int)
    for exponent in exponents:
        mapping[exponent] += 1
    return LaurentBivariate.from_mapping(mapping, variables)


def q_integer(k: int) -> LaurentBivariate:
    """[k]_q = 1 + q + ... + q^(k-1)."""
    return exponent_sum((i, 0) for i in range(k))


@lru_cache(maxsize=None)
def q_binomial(n: int, k: int) -> LaurentBivariate:
    if k < 0 or k > n:
        raise PolynomialError(f"q_binomial needs 0 <= k <= n, got n={n}, k={k}")
    if k == 0 or k == n:
        return LaurentBivariate.constant(1)
    shifted = q_binomial(n - 1, k) * LaurentBivariate.monomial(k, 0)
    return q_binomial(n - 1, k - 1) + shifted


def _subdiagrams(p: int, q: int) -> Iterable[YoungDiagram]:
    return enumerate_subdiagrams(staircase(p, q).diagram)


def qt_catalan(n: int) -> LaurentBivariate:
    """C_n(q,t) as the sum of q^dinv(D) t^(C(n,2)-|D|) over D in R+ for (n, n+1)."""
    if n < 1:
        raise PolynomialError(f"qt_catalan needs n >= 1, got {n}")
    if n == 1:
        return LaurentBivariate.constant(1)
    top = comb(n, 2)
    return exponent_sum((dinv(d, n), top - d.area) for d in _subdiagrams(n, n + 1))


def bigraded_semimodule_sum(n: int) -> LaurentBivariate:
    if n < 1:
        raise PolynomialError(f"bigraded_semimodule_sum needs n >= 1, got {n}")
    if n == 1:
        return LaurentBivariate.constant(1)
    modules = enumerate_semimodules(make_semigroup(n, n + 1))
    return exponent_sum((dimension(m), gaps_count(m)) for m in modules)


def catalan_from_semimodules(n: int) -> LaurentBivariate:
    if n < 1:
        raise PolynomialError(f"catalan_from_semimodules needs n >= 1, got {n}")
    if n == 1:
        return LaurentBivariate.constant(1)
    top = comb(n, 2)
    modules = enumerate_semimodules(make_semigroup(n, n + 1))
    return exponent_sum((top - dimension(m), gaps_count(m)) for m in modules)


def poincare(p: int, q: int) -> LaurentBivariate:
    modules = enumerate_semimodules(make_semigroup(p, q))
    return exponent_sum((0, 2 * dimension(m)) for m in modules)


def area_generating(p: int, q: int) -> LaurentBivariate:
    return exponent_sum((0, 2 * d.area) for d in _subdiagrams(p, q))


def rational_catalan_number(p: int, q: int) -> int:
    return comb(p + q, p) // (p + q)


def tangent_weights(diagram: YoungDiagram) -> LaurentBivariate:
    mapping: Dict[Exponent, int] = defaultdict(int)
    for box in diagram.boxes():
        a, lg = arm(diagram, box), leg(diagram, box)
        mapping[(lg + 1, -a)] += 1
        mapping[(-lg, a + 1)] += 1
    return LaurentBivariate.from_mapping(mapping, T1T2)


def positive_weight_count(weights: LaurentBivariate, p: int, q: int) -> int:
    """Weights, with multiplicity, on which the (p,q) one-parameter subgroup acts positively."""
    return sum(coeff for e1, e2, coeff in weights.terms if p * e1 + q * e2 > 0)


def hilbert_cell_poly(p: int, q: int, h: int) -> LaurentBivariate:
    stairs = staircase(p, q)
    if not 0 <= h <= stairs.area:
        raise PolynomialError(f"h must lie in [0, {stairs.area}], got {h}")
    exponents = []
    for d in enumerate_subdiagrams(stairs.diagram):
        if d.area != h:
            continue
        cell = h + h_plus(d, p, q)
        weights_count = positive_weight_count(tangent_weights(d), p, q)
        if weights_count != cell:
            raise PolynomialError(
                f"tangent weights of {d} give {weights_count} unstable directions, expected {cell}"
            )
        exponents.append((0, 2 * cell))
    return exponent_sum(exponents)
