"""Vectors over a prime field GF(q), indexed little-endian: index = Σ c_i·q^i."""
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Tuple

import numpy as np

from config import Config
from errors import InputError
from models.element_set import indices_from_mask, mask_from_indices


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % p for p in range(2, int(q ** 0.5) + 1))


@dataclass(frozen=True)
class FieldSpec:
    q: int
    d: int

    def __post_init__(self):
        if not _is_prime(self.q):
            raise InputError(f"field modulus {self.q} is not prime")
        if self.d < 1:
            raise InputError(f"dimension must be at least 1, got {self.d}")
        if self.q ** self.d > Config.MAX_FIELD_SIZE:
            raise InputError(f"q^d = {self.q ** self.d} exceeds {Config.MAX_FIELD_SIZE}")

    @property
    def size(self) -> int:
        return self.q ** self.d


class PrimeFieldSpace:
    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.q = spec.q
        self.d = spec.d
        self.size = spec.size
        self.weights = self.q ** np.arange(self.d, dtype=np.int64)
        self.coords = (np.arange(self.size)[:, None] // self.weights[None, :]) % self.q

    def index_of(self, coords) -> int:
        return int((np.asarray(coords, dtype=np.int64) % self.q) @ self.weights)

    def unit(self, i: int) -> int:
        return int(self.weights[i])

    def add(self, x: int, y: int) -> int:
        return self.index_of(self.coords[x] + self.coords[y])

    def _extend(self, members: np.ndarray, direction: np.ndarray) -> np.ndarray:
        """All m + c·direction for m in members and c in GF(q)."""
        multiples = (np.arange(self.q)[:, None] * direction[None, :]) % self.q
        combined = (self.coords[members][:, None, :] + multiples[None, :, :]) % self.q
        return np.unique(combined.reshape(-1, self.d) @ self.weights)

    def span(self, elements: Iterable[int]) -> np.ndarray:
        members = np.zeros(1, dtype=np.int64)
        for x in elements:
            if not np.isin(x, members):
                members = self._extend(members, self.coords[x])
        return members

    def affine_hull(self, elements: Iterable[int]) -> np.ndarray:
        elements = list(elements)
        if not elements:
            return np.zeros(0, dtype=np.int64)
        origin = elements[0]
        members = np.array([origin], dtype=np.int64)
        for x in elements[1:]:
            if not np.isin(x, members):
                members = self._extend(members, self.coords[x] - self.coords[origin])
        return members

    def span_rule(self):
        """Closure rule for the linear span, memoised on the prefix of each mask."""
        memo = {0: 1}

        def rule(mask: int) -> int:
            found = memo.get(mask)
            if found is not None:
                return found
            top = mask.bit_length() - 1
            prefix = memo.get(mask & ~(1 << top))
            if prefix is None:
                result = mask_from_indices(self.span(indices_from_mask(mask, self.size)), self.size)
            elif prefix >> top & 1:
                result = prefix
            else:
                members = indices_from_mask(prefix, self.size)
                result = mask_from_indices(self._extend(members, self.coords[top]), self.size)
            memo[mask] = result
            return result

        return rule

    def affine_rule(self):
        memo = {0: 0}

        def rule(mask: int) -> int:
            found = memo.get(mask)
            if found is not None:
                return found
            top = mask.bit_length() - 1
            rest = mask & ~(1 << top)
            prefix = memo.get(rest)
            if rest == 0:
                result = 1 << top
            elif prefix is None:
                hull = self.affine_hull(indices_from_mask(mask, self.size))
                result = mask_from_indices(hull, self.size)
            elif prefix >> top & 1:
                result = prefix
            else:
                members = indices_from_mask(prefix, self.size)
                direction = self.coords[top] - self.coords[members[0]]
                result = mask_from_indices(self._extend(members, direction), self.size)
            memo[mask] = result
            return result

        return rule

    # Linear maps ----------------------------------------------------------
    def linear_map(self, matrix) -> Tuple[int, ...]:
        """Permutation of indices induced by v ↦ M·v (columns of M are images of the units)."""
        matrix = np.asarray(matrix, dtype=np.int64) % self.q
        images = (self.coords @ matrix.T) % self.q
        return tuple(int(i) for i in images @ self.weights)

    def translation(self, shift: int) -> Tuple[int, ...]:
        images = (self.coords + self.coords[shift]) % self.q
        return tuple(int(i) for i in images @ self.weights)

    def invertible_matrices(self) -> Iterator[np.ndarray]:
        for entries in product(range(self.q), repeat=self.d * self.d):
            matrix = np.array(entries, dtype=np.int64).reshape(self.d, self.d)
            if self._rank(matrix) == self.d:
                yield matrix

    def _rank(self, matrix: np.ndarray) -> int:
        work = matrix.copy() % self.q
        rank = 0
        rows, cols = work.shape
        for col in range(cols):
            pivot = next((r for r in range(rank, rows) if work[r, col]), None)
            if pivot is None:
                continue
            work[[rank, pivot]] = work[[pivot, rank]]
            inverse = pow(int(work[rank, col]), -1, self.q)
            work[rank] = (work[rank] * inverse) % self.q
            for r in range(rows):
                if r != rank and work[r, col]:
                    work[r] = (work[r] - work[r, col] * work[rank]) % self.q
            rank += 1
        return rank
