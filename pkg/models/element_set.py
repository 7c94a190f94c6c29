"""Element sets over a finite ground set.

Internally sets are Python ints used as bitmasks (bit i set iff element i is a
member); the public API speaks ``frozenset[int]`` and prints canonical sorted
forms so reports stay deterministic.
"""
from dataclasses import dataclass
from typing import Iterable, Iterator, Tuple

import numpy as np

from errors import InputError

ElementSet = frozenset


@dataclass(frozen=True)
class GroundSet:
    size: int

    def __post_init__(self):
        if self.size < 1:
            raise InputError(f"ground set must have at least one element, got {self.size}")

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    def mask_of(self, members: Iterable[int]) -> int:
        mask = 0
        for element in members:
            index = int(element)
            if index < 0 or index >= self.size:
                raise InputError(f"element {index} is outside the ground set 0..{self.size - 1}")
            mask |= 1 << index
        return mask

    def check_element(self, element: int) -> int:
        index = int(element)
        if index < 0 or index >= self.size:
            raise InputError(f"element {index} is outside the ground set 0..{self.size - 1}")
        return index


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def to_frozenset(mask: int) -> ElementSet:
    return frozenset(iter_bits(mask))


def canonical(members: Iterable[int]) -> Tuple[int, ...]:
    return tuple(sorted(set(int(m) for m in members)))


def mask_key(mask: int) -> Tuple[int, ...]:
    """Lexicographic key of a mask: its sorted member tuple."""
    return tuple(iter_bits(mask))


def size_lex_key(mask: int) -> Tuple[int, Tuple[int, ...]]:
    return mask.bit_count(), mask_key(mask)


def format_set(members) -> str:
    if isinstance(members, int):
        members = iter_bits(members)
    return "{" + ",".join(str(m) for m in canonical(members)) + "}"


def mask_from_indices(indices, size: int) -> int:
    flags = np.zeros(size, dtype=bool)
    flags[np.asarray(indices, dtype=np.int64)] = True
    packed = np.packbits(flags, bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def indices_from_mask(mask: int, size: int) -> np.ndarray:
    raw = np.frombuffer(mask.to_bytes((size + 7) // 8, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little")[:size])


def permute_mask(mask: int, image: Tuple[int, ...]) -> int:
    result = 0
    for element in iter_bits(mask):
        result |= 1 << image[element]
    return result


def format_witness(witness) -> str:
    if not witness:
        return ""
    parts = []
    for key, value in witness.items():
        if isinstance(value, (frozenset, set, tuple, list)):
            parts.append(f"{key}={format_set(value)}")
        else:
            parts.append(f"{key}={value}")
    return " ".join(parts)
