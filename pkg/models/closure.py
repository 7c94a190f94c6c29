from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from models.element_set import GroundSet, format_witness


class AxiomName:
    REFLEXIVITY = "reflexivity"
    TRANSITIVITY = "transitivity"
    FINITE_CHARACTER = "finite_character"
    EXCHANGE = "exchange"

    @classmethod
    def ordered(cls):
        return [cls.REFLEXIVITY, cls.TRANSITIVITY, cls.FINITE_CHARACTER, cls.EXCHANGE]


@dataclass(eq=False)
class ClosureTable:
    """A candidate closure operator on a finite ground set.

    ``rule`` maps a bitmask to the bitmask of its closure. Nothing about the
    operator is assumed until ``PregeometryService.verify_axioms`` has run.
    """

    ground: GroundSet
    rule: Callable[[int], int]
    kind: str
    kind_args: Tuple[str, ...] = ()
    algebraic: bool = False
    flats: Optional[Tuple[int, ...]] = None
    added_flats: int = 0
    _cache: Dict[int, int] = field(default_factory=dict, repr=False)
    _table: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return self.ground.size

    def close(self, mask: int) -> int:
        cached = self._cache.get(mask)
        if cached is None:
            cached = self.rule(mask)
            self._cache[mask] = cached
        return cached

    def full_table(self) -> np.ndarray:
        """Closure of every subset, indexed by mask (small grounds only)."""
        if self._table is None:
            count = 1 << self.size
            self._table = np.fromiter(
                (self.close(mask) for mask in range(count)), dtype=np.int64, count=count
            )
        return self._table


@dataclass
class AxiomVerdict:
    name: str
    passed: bool
    witness: Optional[Dict[str, object]] = None
    mode: str = "exhaustive"
    note: Optional[str] = None

    def describe_witness(self) -> str:
        return format_witness(self.witness)


@dataclass
class AxiomReport:
    reflexivity: AxiomVerdict
    transitivity: AxiomVerdict
    finite_character: AxiomVerdict
    exchange: AxiomVerdict

    @property
    def verdicts(self) -> List[AxiomVerdict]:
        return [self.reflexivity, self.transitivity, self.finite_character, self.exchange]

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    @property
    def sampled(self) -> bool:
        return any(v.mode == "sampled" for v in self.verdicts)
