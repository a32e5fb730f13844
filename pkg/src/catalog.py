from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from src.diagram import YoungDiagram
from src.gmap import GPermutation, brute_force_inverse, check_G_bijective
from src.logging import get_logger
from src.semigroup import Semigroup, make_semigroup
from src.semimodule import SemiModule, enumerate_semimodules

logger = get_logger(__name__)

Pair = Tuple[int, int]


@dataclass
class _CatalogStore:
    semigroups: Dict[Pair, Semigroup] = field(default_factory=dict)
    semimodules: Dict[Pair, List[SemiModule]] = field(default_factory=dict)
    permutations: Dict[Pair, GPermutation] = field(default_factory=dict)


class _Catalog:
    """Per-process cache of enumerations keyed by (p, q)."""

    def __init__(self) -> None:
        self._store = _CatalogStore()

    def clear(self) -> None:
        logger.info("Clearing catalog cache")
        self._store = _CatalogStore()

    def semigroup(self, p: int, q: int) -> Semigroup:
        cached = self._store.semigroups.get((p, q))
        if cached is not None:
            return cached
        semigroup = make_semigroup(p, q)
        self._store.semigroups[(p, q)] = semigroup
        return semigroup

    def semimodules(self, p: int, q: int) -> List[SemiModule]:
        cached = self._store.semimodules.get((p, q))
        if cached is not None:
            logger.debug("Catalog hit for semi-modules of (%s,%s)", p, q)
            return cached
        logger.debug("Catalog miss for semi-modules of (%s,%s)", p, q)
        modules = list(enumerate_semimodules(self.semigroup(p, q)))
        self._store.semimodules[(p, q)] = modules
        return modules

    def permutation(self, p: int, q: int) -> GPermutation:
        cached = self._store.permutations.get((p, q))
        if cached is not None:
            logger.debug("Catalog hit for G over (%s,%s)", p, q)
            return cached
        logger.debug("Catalog miss for G over (%s,%s)", p, q)
        permutation = check_G_bijective(p, q)
        self._store.permutations[(p, q)] = permutation
        return permutation

    def inverse(self, dual: YoungDiagram, p: int, q: int) -> YoungDiagram:
        return brute_force_inverse(dual, p, q, self.permutation(p, q))

    def cached_pairs(self) -> List[Pair]:
        keys = set(self._store.semigroups) | set(self._store.permutations)
        return sorted(keys, key=lambda pair: (pair[0] + pair[1], pair[0]))


Catalog = _Catalog()
