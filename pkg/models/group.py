from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np

from errors import GroupValidationError


@dataclass(eq=False)
class FiniteGroup:
    """A group given by its Cayley table; ``table[i, j]`` is ``i · j`` and 0 is the identity."""

    table: np.ndarray
    name: str = "group"
    element_names: Optional[Tuple[str, ...]] = None
    _inverses: Optional[np.ndarray] = field(default=None, repr=False)
    _orders: Dict[int, int] = field(default_factory=dict, repr=False)
    # filled by AutomorphismService
    _automorphism_cache: Dict[str, object] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.table = np.asarray(self.table, dtype=np.int64)
        self.validate()

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def mult(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self._inverses[a])

    def element_order(self, a: int) -> int:
        cached = self._orders.get(a)
        if cached is None:
            cached, x = 1, a
            while x != 0:
                x = int(self.table[x, a])
                cached += 1
            self._orders[a] = cached
        return cached

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def validate(self) -> None:
        table = self.table
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] < 1:
            raise GroupValidationError("Cayley table must be a non-empty square")
        n = table.shape[0]
        if table.min() < 0 or table.max() >= n:
            raise GroupValidationError(f"Cayley table entries must lie in 0..{n - 1}")
        elements = np.arange(n)
        if not np.array_equal(table[0], elements) or not np.array_equal(table[:, 0], elements):
            raise GroupValidationError("identity must be element 0 (row 0 and column 0 must be the identity row)")
        # (a·b)·c against a·(b·c)
        left = table[table]
        right = table[elements[:, None, None], table[None, :, :]]
        bad = np.argwhere(left != right)
        if bad.size:
            a, b, c = (int(v) for v in bad[0])
            raise GroupValidationError(
                f"table is not associative at ({a}, {b}, {c})", triple=(a, b, c)
            )
        inverses = np.full(n, -1, dtype=np.int64)
        for a in range(n):
            found = np.flatnonzero(table[a] == 0)
            if found.size != 1 or table[found[0], a] != 0:
                raise GroupValidationError(f"element {a} has no two-sided inverse", triple=(a,))
            inverses[a] = found[0]
        self._inverses = inverses


@dataclass(frozen=True)
class Automorphism:
    image: Tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.image[a]

    def is_identity(self) -> bool:
        return all(i == a for a, i in enumerate(self.image))

    def compose(self, other: "Automorphism") -> "Automorphism":
        return Automorphism(tuple(self.image[other.image[a]] for a in range(len(self.image))))

    def describe(self) -> str:
        return "(" + " ".join(str(i) for i in self.image) + ")"
