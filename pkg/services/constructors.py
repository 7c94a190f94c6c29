"""Builders for the closure operators the engine knows by name."""
import logging
from typing import Iterable, Optional

import numpy as np

from models import ClosureTable, FiniteGroup, GroundSet
from models.element_set import indices_from_mask, mask_from_indices, mask_key
from services.finite_field import FieldSpec, PrimeFieldSpace

logger = logging.getLogger(__name__)


def _intersection_closure(masks: set, full: int) -> set:
    closed = set(masks)
    closed.add(full)
    frontier = list(closed)
    while frontier:
        fresh = set()
        for new in frontier:
            for old in closed:
                meet = new & old
                if meet not in closed:
                    fresh.add(meet)
        closed |= fresh
        frontier = list(fresh)
    return closed


def explicit_from_flats(ground_size: int, flats: Iterable[Iterable[int]]) -> ClosureTable:
    """close(A) is the least listed flat containing A, after intersection-closing the list."""
    ground = GroundSet(ground_size)
    given = {ground.mask_of(flat) for flat in flats}
    closed = _intersection_closure(given, ground.full_mask)
    ordered = tuple(sorted(closed, key=mask_key))
    added = len(closed) - len(given)
    if added:
        logger.info("explicit flat list normalized: %d flats added", added)
    full = ground.full_mask

    def rule(mask: int) -> int:
        result = full
        for flat in ordered:
            if flat & mask == mask:
                result &= flat
        return result

    return ClosureTable(
        ground=ground, rule=rule, kind="explicit", flats=ordered, added_flats=added
    )


def linear_matroid(spec: FieldSpec, space: Optional[PrimeFieldSpace] = None) -> ClosureTable:
    space = space or PrimeFieldSpace(spec)
    return ClosureTable(
        ground=GroundSet(spec.size),
        rule=space.span_rule(),
        kind="linear",
        kind_args=(str(spec.q), str(spec.d)),
        algebraic=True,
    )


def affine_matroid(spec: FieldSpec, space: Optional[PrimeFieldSpace] = None) -> ClosureTable:
    space = space or PrimeFieldSpace(spec)
    return ClosureTable(
        ground=GroundSet(spec.size),
        rule=space.affine_rule(),
        kind="affine",
        kind_args=(str(spec.q), str(spec.d)),
        algebraic=True,
    )


def trivial_pregeometry(ground_size: int, loops: Iterable[int] = ()) -> ClosureTable:
    ground = GroundSet(ground_size)
    loops = tuple(loops)
    loop_mask = ground.mask_of(loops)
    return ClosureTable(
        ground=ground,
        rule=lambda mask: mask | loop_mask,
        kind="trivial",
        kind_args=tuple(str(element) for element in sorted(set(loops))),
        algebraic=True,
    )


def subgroup_closure(group: FiniteGroup, source: Optional[str] = None) -> ClosureTable:
    """close(A) is the subgroup generated by A."""
    table = group.table
    size = group.order

    def rule(mask: int) -> int:
        members = np.union1d(indices_from_mask(mask, size), [0])
        while True:
            products = np.unique(table[np.ix_(members, members)])
            grown = np.union1d(members, products)
            if grown.size == members.size:
                return mask_from_indices(members, size)
            members = grown

    return ClosureTable(
        ground=GroundSet(size),
        rule=rule,
        kind="subgroup",
        kind_args=(source or group.name,),
    )
