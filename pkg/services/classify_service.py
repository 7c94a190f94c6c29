import logging
from typing import Dict, Optional, Tuple

import numpy as np

from config import Config
from errors import CapacityError
from models import (ClassificationReport, ClosureTable, EquivalenceResult, FlagVerdict, Geometry,
                    GroundSet, Matroid)
from models.element_set import iter_bits, mask_key, size_lex_key
from services.pregeometry_service import PregeometryService

logger = logging.getLogger(__name__)


def _labelled(matroid: Matroid, mask: int) -> frozenset:
    return frozenset(matroid.labels[index] for index in iter_bits(mask))


class ClassificationService:
    """Geometrization and the trivial / modular / locally modular / projective taxonomy."""

    def __init__(self, pregeometry_service: PregeometryService, config=Config):
        self._pregeometry = pregeometry_service
        self._config = config

    # Geometrization -------------------------------------------------------
    def geometrize(self, matroid: Matroid) -> Geometry:
        if matroid.rank_total == 0:
            logger.info("every element of %r is a loop: empty geometry", matroid)
            return Geometry(source=matroid, base=None, map={})

        loops = matroid.loops
        representatives = []
        members_of = []
        covered = 0
        for element in iter_bits(matroid.full_mask & ~loops):
            if covered >> element & 1:
                continue
            members = matroid.close(1 << element) & ~loops
            covered |= members
            representatives.append(element)
            members_of.append(members)

        point_of_element = {}
        for index, members in enumerate(members_of):
            for element in iter_bits(members):
                point_of_element[element] = index

        def rule(mask: int) -> int:
            source = 0
            for index in iter_bits(mask):
                source |= 1 << representatives[index]
            result = 0
            for element in iter_bits(matroid.close(source) & ~loops):
                result |= 1 << point_of_element[element]
            return result

        table = ClosureTable(
            ground=GroundSet(len(representatives)),
            rule=rule,
            kind="geometry",
            algebraic=matroid.table.algebraic,
        )
        point_ids = tuple(matroid.labels[rep] for rep in representatives)
        base = self._pregeometry.build_matroid(table, point_ids)

        label_map: Dict[int, int] = {}
        classes = {}
        for rep, members in zip(representatives, members_of):
            point = matroid.labels[rep]
            classes[point] = _labelled(matroid, members)
            for element in iter_bits(members):
                label_map[matroid.labels[element]] = point
        logger.debug("geometrized %r into %d points", matroid, len(point_ids))
        return Geometry(source=matroid, base=base, map=label_map, classes=classes)

    def is_geometry(self, matroid: Matroid) -> bool:
        if matroid.loops:
            return False
        return all(matroid.close(1 << x) == 1 << x for x in range(matroid.size))

    # Taxonomy -------------------------------------------------------------
    def classify(self, matroid: Matroid, full_triviality: bool = False) -> ClassificationReport:
        trivial = self.check_triviality_full(matroid) if full_triviality else self.check_triviality(matroid)
        if trivial.value:
            # unions of flats are flats, so the modular law is inclusion-exclusion on atoms
            modular = FlagVerdict("modular", True)
            locally_modular = FlagVerdict("locally_modular", True)
        else:
            modular = self._flag(matroid, "modular", self._modular_pair(matroid, local=False))
            if modular.value:
                locally_modular = FlagVerdict("locally_modular", True)
            else:
                locally_modular = self._flag(
                    matroid, "locally_modular", self._modular_pair(matroid, local=True)
                )
        report = ClassificationReport(
            trivial=trivial,
            modular=modular,
            locally_modular=locally_modular,
            is_geometry=self.is_geometry(matroid),
        )
        logger.info(
            "classified %r: trivial=%s modular=%s locally_modular=%s",
            matroid, trivial.value, modular.value, locally_modular.value,
        )
        return report

    def check_triviality(self, matroid: Matroid) -> FlagVerdict:
        """cl(A) = cl(∅) ∪ ⋃ cl(a), tested as: every flat joined with an atom stays closed."""
        flats = self._pregeometry.flat_masks(matroid)
        atoms = self._pregeometry.flat_masks(matroid, rank_filter=1)
        for flat in flats:
            for atom in atoms:
                if atom & ~flat and not matroid.is_closed(flat | atom):
                    return FlagVerdict(
                        "trivial", False, (_labelled(matroid, flat), _labelled(matroid, atom))
                    )
        return FlagVerdict("trivial", True)

    def check_triviality_full(self, matroid: Matroid) -> FlagVerdict:
        size = matroid.size
        if size > self._config.EXHAUSTIVE_GROUND_LIMIT:
            raise CapacityError("ground size", size, self._config.EXHAUSTIVE_GROUND_LIMIT)
        closures = matroid.table.full_table()
        masks = np.arange(1 << size, dtype=np.int64)
        unions = np.full(masks.shape, matroid.loops, dtype=np.int64)
        for element in range(size):
            has = ((masks >> element) & 1).astype(bool)
            unions[has] |= closures[1 << element]
        bad = np.flatnonzero(unions != closures)
        if bad.size == 0:
            return FlagVerdict("trivial", True)
        least = min((int(m) for m in bad), key=size_lex_key)
        return FlagVerdict("trivial", False, (_labelled(matroid, least),))

    def check_modularity(self, matroid: Matroid, local: bool = False) -> FlagVerdict:
        name = "locally_modular" if local else "modular"
        return self._flag(matroid, name, self._modular_pair(matroid, local))

    def _modular_pair(self, matroid: Matroid, local: bool) -> Optional[Tuple[int, int]]:
        """Least pair of flats breaking dim(F∨G) + dim(F∧G) = dim(F) + dim(G)."""
        ranks = self._pregeometry.flat_lattice(matroid)
        flats = sorted(ranks, key=mask_key)
        for i, first in enumerate(flats):
            first_rank = ranks[first]
            for second in flats[i + 1:]:
                meet = first & second
                if meet == first or meet == second:
                    continue
                meet_rank = ranks[meet]
                if local and meet_rank == 0:
                    continue
                join_rank = ranks[matroid.close(first | second)]
                if join_rank + meet_rank != first_rank + ranks[second]:
                    return first, second
        return None

    @staticmethod
    def _flag(matroid: Matroid, name: str, pair: Optional[Tuple[int, int]]) -> FlagVerdict:
        if pair is None:
            return FlagVerdict(name, True)
        return FlagVerdict(name, False, tuple(_labelled(matroid, mask) for mask in pair))

    def check_local_modularity_equivalence(self, matroid: Matroid) -> EquivalenceResult:
        """Restricted modular law against modularity of every single-point localization."""
        locally_modular = self._modular_pair(matroid, local=True) is None
        localizations_modular = True
        element = witness = None
        seen = set()
        for candidate in iter_bits(matroid.full_mask & ~matroid.loops):
            point = matroid.close(1 << candidate)
            if point in seen:
                continue
            seen.add(point)
            localized = self._pregeometry.localize(matroid, [candidate])
            pair = self._modular_pair(localized, local=False)
            if pair is not None:
                localizations_modular = False
                element = matroid.labels[candidate]
                witness = tuple(_labelled(matroid, mask) for mask in pair)
                break
        agrees = locally_modular == localizations_modular
        if not agrees:
            logger.warning(
                "local modularity disagrees on %r: restricted=%s localized=%s",
                matroid, locally_modular, localizations_modular,
            )
        return EquivalenceResult(
            agrees=agrees,
            locally_modular=locally_modular,
            localizations_modular=localizations_modular,
            element=element,
            witness=witness,
        )
