import logging
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from config import Config
from errors import CapacityError, InputError
from models import Automorphism, ClosureTable, CompatibilityResult, FiniteGroup, Matroid
from models.element_set import iter_bits, mask_key, permute_mask, size_lex_key, to_frozenset
from services.constructors import subgroup_closure
from services.pregeometry_service import PregeometryService

logger = logging.getLogger(__name__)

# Above this ground size flat images no longer fit an int64 bitmask.
_VECTOR_GROUND_LIMIT = 62


class AutomorphismService:
    """Automorphisms of Cayley-table groups and their action on closure operators.

    An automorphism is fixed by the images of a generating sequence, so both
    the enumeration and the stabiliser chain search over those images only.
    """

    def __init__(self, pregeometry_service: PregeometryService, config=Config):
        self._pregeometry = pregeometry_service
        self._config = config

    def _check_order(self, group: FiniteGroup, bound: Optional[int] = None) -> None:
        bound = self._config.MAX_GROUP_ORDER if bound is None else bound
        if group.order > bound:
            raise CapacityError("group order", group.order, bound)

    # Generating sequences -------------------------------------------------
    def generating_sequence(self, group: FiniteGroup) -> List[int]:
        """Greedy: each element not yet generated becomes the next generator."""
        closure = self._subgroup_closure(group)
        generators: List[int] = []
        generated = 1
        for element in range(1, group.order):
            if not generated >> element & 1:
                generators.append(element)
                generated = closure.close(generated | (1 << element))
        return generators

    def _subgroup_closure(self, group: FiniteGroup) -> ClosureTable:
        cache = group._automorphism_cache
        if "closure" not in cache:
            cache["closure"] = subgroup_closure(group)
        return cache["closure"]

    # Search ---------------------------------------------------------------
    @staticmethod
    def _extend(group: FiniteGroup, generators: Sequence[int], images: Sequence[int]) -> Optional[Dict[int, int]]:
        """The homomorphism on ⟨generators⟩ sending generators to images, if it is one and injective."""
        table = group.table
        mapping = {0: 0}
        used = {0}
        queue = [0]
        for x in queue:
            image_x = mapping[x]
            for g, h in zip(generators, images):
                y = int(table[x, g])
                image_y = int(table[image_x, h])
                known = mapping.get(y)
                if known is None:
                    if image_y in used:
                        return None
                    mapping[y] = image_y
                    used.add(image_y)
                    queue.append(y)
                elif known != image_y:
                    return None
        return mapping

    def _search(self, group: FiniteGroup, generators: Sequence[int], prefix: Tuple[int, ...] = ()) -> Iterator[Tuple[int, ...]]:
        by_order: Dict[int, List[int]] = {}
        for element in range(group.order):
            by_order.setdefault(group.element_order(element), []).append(element)

        def extend(images: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
            mapping = self._extend(group, generators[: len(images)], images)
            if mapping is None:
                return
            if len(images) == len(generators):
                yield tuple(mapping[x] for x in range(group.order))
                return
            taken = set(mapping.values())
            for candidate in by_order[group.element_order(generators[len(images)])]:
                if candidate not in taken:
                    yield from extend(images + (candidate,))

        yield from extend(tuple(prefix))

    def _chain(self, group: FiniteGroup) -> Tuple[int, List[Automorphism]]:
        """|Aut(G)| and a strong generating set, one stabiliser level per generator."""
        cache = group._automorphism_cache
        if "chain" in cache:
            return cache["chain"]
        self._check_order(group, self._config.MAX_CHAIN_GROUP_ORDER)
        generators = self.generating_sequence(group)
        order = 1
        strong: List[Automorphism] = []
        for level, generator in enumerate(generators):
            fixed = tuple(generators[:level])
            orbit = 0
            for candidate in range(1, group.order):
                if group.element_order(candidate) != group.element_order(generator):
                    continue
                found = next(self._search(group, generators, fixed + (candidate,)), None)
                if found is None:
                    continue
                orbit += 1
                if candidate != generator:
                    strong.append(Automorphism(found))
            order *= orbit
        logger.debug("%s: |Aut| = %d from %d strong generators", group.name, order, len(strong))
        cache["chain"] = (order, strong)
        return order, strong

    def automorphism_group_order(self, group: FiniteGroup) -> int:
        return self._chain(group)[0]

    def automorphism_generators(self, group: FiniteGroup) -> List[Automorphism]:
        return list(self._chain(group)[1])

    def automorphism_group(self, group: FiniteGroup) -> List[Automorphism]:
        """Every automorphism, sorted by image tuple (the identity first)."""
        cache = group._automorphism_cache
        if "all" in cache:
            return cache["all"]
        self._check_order(group)
        order = self.automorphism_group_order(group)
        if order > self._config.MAX_AUTOMORPHISMS:
            raise CapacityError("automorphism count", order, self._config.MAX_AUTOMORPHISMS)
        generators = self.generating_sequence(group)
        found = sorted(self._search(group, generators))
        automorphisms = [Automorphism(image) for image in found]
        logger.info("%s has %d automorphisms", group.name, len(automorphisms))
        cache["all"] = automorphisms
        return automorphisms

    def image_array(self, group: FiniteGroup) -> np.ndarray:
        """Row i holds the images of automorphism i."""
        cache = group._automorphism_cache
        if "images" not in cache:
            automorphisms = self.automorphism_group(group)
            cache["images"] = np.array([a.image for a in automorphisms], dtype=np.int64)
        return cache["images"]

    def stabilizer_rows(self, group: FiniteGroup, mask: int) -> np.ndarray:
        """Images of the automorphisms fixing ``mask`` pointwise."""
        images = self.image_array(group)
        fixed = np.fromiter(iter_bits(mask), dtype=np.int64)
        if fixed.size == 0:
            return images
        return images[np.all(images[:, fixed] == fixed, axis=1)]

    # Subgroups ------------------------------------------------------------
    def subgroup_masks(self, group: FiniteGroup) -> List[int]:
        cache = group._automorphism_cache
        if "subgroups" in cache:
            return cache["subgroups"]
        self._check_order(group)
        closure = self._subgroup_closure(group)
        full = (1 << group.order) - 1
        found = {1}
        frontier = [1]
        while frontier:
            following = []
            for subgroup in frontier:
                remaining = full & ~subgroup
                while remaining:
                    element = (remaining & -remaining).bit_length() - 1
                    grown = closure.close(subgroup | (1 << element))
                    remaining &= ~grown
                    if grown not in found:
                        found.add(grown)
                        following.append(grown)
            frontier = following
        ordered = sorted(found, key=size_lex_key)
        logger.debug("%s has %d subgroups", group.name, len(ordered))
        cache["subgroups"] = ordered
        return ordered

    def subgroups(self, group: FiniteGroup) -> List[frozenset]:
        return [to_frozenset(mask) for mask in self.subgroup_masks(group)]

    # Compatibility --------------------------------------------------------
    def _flats_of(self, operator: Union[Matroid, ClosureTable]) -> List[int]:
        if isinstance(operator, Matroid):
            return self._pregeometry.flat_masks(operator)
        if operator.flats is not None:
            return list(operator.flats)
        limit = self._config.EXHAUSTIVE_GROUND_LIMIT
        if operator.size > limit:
            raise CapacityError("ground size", operator.size, limit)
        closures = operator.full_table()
        fixed = np.flatnonzero(closures == np.arange(closures.size))
        return sorted((int(m) for m in fixed), key=mask_key)

    def check_compatibility(self, group: FiniteGroup, operator: Union[Matroid, ClosureTable]) -> CompatibilityResult:
        """Does every automorphism of the group send flats to flats?"""
        size = operator.table.size if isinstance(operator, Matroid) else operator.size
        if size != group.order:
            raise InputError(f"ground set has {size} elements but the group has order {group.order}")
        flats = self._flats_of(operator)
        listable = group.order <= self._config.MAX_GROUP_ORDER
        if listable and self.automorphism_group_order(group) <= self._config.MAX_AUTOMORPHISMS:
            candidates, scope = self.automorphism_group(group), "full"
        else:
            candidates, scope = self.automorphism_generators(group), "generators"

        found = self._first_violation(candidates, flats, size)
        if found is None:
            logger.info("%s acts on the flats (%s check)", group.name, scope)
            return CompatibilityResult(True, scope=scope)
        automorphism, flat = found
        logger.info("%s moves flat %s off the lattice", automorphism.describe(), sorted(to_frozenset(flat)))
        return CompatibilityResult(False, automorphism, to_frozenset(flat), scope)

    @staticmethod
    def _first_violation(candidates: List[Automorphism], flats: List[int], size: int):
        if not candidates:
            return None
        closed = set(flats)
        if size <= _VECTOR_GROUND_LIMIT:
            images = np.array([a.image for a in candidates], dtype=np.int64)
            known = np.array(flats, dtype=np.int64)
            broken = np.zeros((len(candidates), len(flats)), dtype=bool)
            for column, flat in enumerate(flats):
                members = np.fromiter(iter_bits(flat), dtype=np.int64)
                mapped = np.left_shift(1, images[:, members]).sum(axis=1) if members.size else np.zeros(len(candidates), dtype=np.int64)
                broken[:, column] = ~np.isin(mapped, known)
            rows = np.flatnonzero(broken.any(axis=1))
            if rows.size == 0:
                return None
            row = int(rows[0])
            return candidates[row], flats[int(np.flatnonzero(broken[row])[0])]
        for automorphism in candidates:
            for flat in flats:
                if permute_mask(flat, automorphism.image) not in closed:
                    return automorphism, flat
        return None
