"""Named groups and pregeometries used by the fixtures, the scripts and the tests."""
from typing import Callable, Dict, List, Tuple

import numpy as np

from models import ClosureTable, FiniteGroup
from services.constructors import (affine_matroid, explicit_from_flats, linear_matroid,
                                   trivial_pregeometry)
from services.finite_field import FieldSpec, PrimeFieldSpace

FANO_LINES = (
    (0, 1, 2),
    (0, 3, 4),
    (0, 5, 6),
    (1, 3, 5),
    (1, 4, 6),
    (2, 3, 6),
    (2, 4, 5),
)

# Permutations of (1, 2, 3) written as the images of 1, 2, 3.
S3_ELEMENTS = (
    ("e", (1, 2, 3)),
    ("(12)", (2, 1, 3)),
    ("(13)", (3, 2, 1)),
    ("(23)", (1, 3, 2)),
    ("(123)", (2, 3, 1)),
    ("(132)", (3, 1, 2)),
)

Q8_NAMES = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")


def cyclic_group(n: int) -> FiniteGroup:
    elements = np.arange(n)
    table = (elements[:, None] + elements[None, :]) % n
    return FiniteGroup(table, name=f"Z{n}")


def elementary_abelian(p: int, d: int) -> FiniteGroup:
    """(Z_p)^d with the little-endian indexing of ``PrimeFieldSpace``."""
    space = PrimeFieldSpace(FieldSpec(p, d))
    summed = (space.coords[:, None, :] + space.coords[None, :, :]) % p
    return FiniteGroup(summed @ space.weights, name=f"Z{p}^{d}")


def symmetric_group_s3() -> FiniteGroup:
    """S3 with ``x·y`` meaning "apply y, then x"."""
    index = {images: i for i, (_, images) in enumerate(S3_ELEMENTS)}
    table = np.zeros((6, 6), dtype=np.int64)
    for i, (_, x) in enumerate(S3_ELEMENTS):
        for j, (_, y) in enumerate(S3_ELEMENTS):
            composed = tuple(x[y[k] - 1] for k in range(3))
            table[i, j] = index[composed]
    return FiniteGroup(table, name="S3", element_names=tuple(n for n, _ in S3_ELEMENTS))


def _unit_product(u: int, v: int) -> Tuple[int, int]:
    """Product of quaternion units 1, i, j, k (as 0..3): returns (sign, unit)."""
    if u == 0:
        return 1, v
    if v == 0:
        return 1, u
    if u == v:
        return -1, 0
    third = 6 - u - v
    # i·j = k, j·k = i, k·i = j
    return (1, third) if (v - u) % 3 == 1 else (-1, third)


def quaternion_group() -> FiniteGroup:
    """Q8 in the index order 1, -1, i, -i, j, -j, k, -k."""
    table = np.zeros((8, 8), dtype=np.int64)
    for x in range(8):
        for y in range(8):
            sign, unit = _unit_product(x // 2, y // 2)
            if (x % 2) ^ (y % 2):
                sign = -sign
            table[x, y] = 2 * unit + (0 if sign > 0 else 1)
    return FiniteGroup(table, name="Q8", element_names=Q8_NAMES)


def fano_flats() -> List[Tuple[int, ...]]:
    flats: List[Tuple[int, ...]] = [()]
    flats.extend((p,) for p in range(7))
    flats.extend(FANO_LINES)
    return flats


def fano_plane() -> ClosureTable:
    return explicit_from_flats(7, fano_flats())


CATALOG: Dict[str, Callable[[], ClosureTable]] = {
    "linear-2-2": lambda: linear_matroid(FieldSpec(2, 2)),
    "linear-2-3": lambda: linear_matroid(FieldSpec(2, 3)),
    "linear-2-4": lambda: linear_matroid(FieldSpec(2, 4)),
    "linear-3-2": lambda: linear_matroid(FieldSpec(3, 2)),
    "linear-3-3": lambda: linear_matroid(FieldSpec(3, 3)),
    "linear-3-4": lambda: linear_matroid(FieldSpec(3, 4)),
    "linear-5-2": lambda: linear_matroid(FieldSpec(5, 2)),
    "affine-2-2": lambda: affine_matroid(FieldSpec(2, 2)),
    "affine-2-3": lambda: affine_matroid(FieldSpec(2, 3)),
    "affine-3-2": lambda: affine_matroid(FieldSpec(3, 2)),
    "affine-3-3": lambda: affine_matroid(FieldSpec(3, 3)),
    "trivial-5": lambda: trivial_pregeometry(5),
    "trivial-6-loop0": lambda: trivial_pregeometry(6, [0]),
    "fano": fano_plane,
}


def catalog_matroids() -> Dict[str, ClosureTable]:
    return {name: build() for name, build in CATALOG.items()}
