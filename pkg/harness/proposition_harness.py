import logging
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

import numpy as np

from config import Config
from errors import CapacityError, InputError, PreconditionError, ShapeError
from models import (ClcomResult, ConcurrencyResult, ConfigurationReport, ConfigurationSummary,
                    ConfigurationWitness, FiniteGroup, Geometry, GroupPregeometry, Matroid, Plane,
                    PlaneMode, PropositionResult, Status)
from models.element_set import iter_bits, to_frozenset
from services import AutomorphismService, ClassificationService, PlaneService, PregeometryService

logger = logging.getLogger(__name__)

HOMOGENEITY_NOTE = "finite analogue; the infinite-dimension clause is not checked"


class PropositionHarness:
    """Checks the group propositions on a finite group carrying a pregeometry.

    Every check runs perceive (enumerate base sets and tuples), decide
    (evaluate one tuple against the closure oracle) and act (record the
    verdict and the least witness).
    """

    def __init__(
        self,
        pregeometry_service: PregeometryService,
        classification_service: ClassificationService,
        plane_service: PlaneService,
        automorphism_service: AutomorphismService,
        config=Config,
    ):
        self._pregeometry = pregeometry_service
        self._classify = classification_service
        self._planes = plane_service
        self._automorphisms = automorphism_service
        self._config = config

    # Pairing --------------------------------------------------------------
    def pair(self, group: FiniteGroup, matroid: Matroid) -> GroupPregeometry:
        compatibility = self._automorphisms.check_compatibility(group, matroid)
        return GroupPregeometry(group=group, matroid=matroid, compatibility=compatibility)

    def run_all(self, pregeometry: GroupPregeometry, base: Optional[Iterable[int]] = None, kmax: Optional[int] = None) -> List[PropositionResult]:
        """Homogeneity first; a later FAIL is VACUOUS when homogeneity fails.

        With ``base`` every check runs over that single A; without it the
        kmax-ranging checks enumerate A and the configuration checks use A = ∅.
        """
        kmax = self._config.DEFAULT_KMAX if kmax is None else kmax
        scoped = None if base is None else tuple(base)
        single = scoped or ()
        homogeneity = self.check_finite_homogeneity(pregeometry, kmax, scoped)
        return [
            homogeneity,
            self.check_generic_product(pregeometry, kmax, homogeneity, base=scoped),
            self.check_invariant_subgroups(pregeometry, kmax, homogeneity, base=scoped),
            self.check_invariance(pregeometry, kmax, homogeneity, base=scoped),
            self.check_nontriviality(pregeometry),
            self.check_configuration(pregeometry, single, homogeneity).as_proposition(),
            self.check_clcom_commutativity(pregeometry, single),
        ]

    # Perception -----------------------------------------------------------
    def _require_compatible(self, pregeometry: GroupPregeometry) -> None:
        if not pregeometry.compatible:
            raise PreconditionError("some group automorphism does not preserve the closure operator")

    def _check_kmax(self, kmax: int) -> None:
        if kmax < 0:
            raise InputError(f"kmax must be non-negative, got {kmax}")
        if kmax > self._config.MAX_KMAX:
            raise CapacityError("kmax", kmax, self._config.MAX_KMAX)

    def _base_sets(self, matroid: Matroid, kmax: int, base: Optional[Iterable[int]] = None) -> Iterator[int]:
        """Every A with |A| ≤ kmax, by size then lexicographically (or just ``base``)."""
        if base is not None:
            yield matroid.ground.mask_of(base)
            return
        for size in range(kmax + 1):
            for members in combinations(range(matroid.size), size):
                yield sum(1 << x for x in members)

    def _base_mask(self, matroid: Matroid, base: Iterable[int]) -> int:
        mask = matroid.ground.mask_of(base)
        if matroid.loops == matroid.full_mask:
            raise PreconditionError("every element is a loop; there is no generic element")
        return mask

    # Action ---------------------------------------------------------------
    @staticmethod
    def _settle(result: PropositionResult, homogeneity: Optional[PropositionResult]) -> PropositionResult:
        if homogeneity is not None and homogeneity.status == Status.FAIL and result.status == Status.FAIL:
            logger.info("%s fails on a non-homogeneous instance: reported VACUOUS", result.name)
            result.status = Status.VACUOUS
            result.note = "finite homogeneity fails"
        return result

    @staticmethod
    def _verdict(name: str, witness: Optional[Dict[str, object]]) -> PropositionResult:
        if witness is None:
            return PropositionResult(name, Status.PASS)
        logger.info("%s fails with %s", name, witness)
        return PropositionResult(name, Status.FAIL, witness)

    # Decision: propositions -----------------------------------------------
    def check_finite_homogeneity(self, pregeometry: GroupPregeometry, kmax: int, base: Optional[Iterable[int]] = None) -> PropositionResult:
        """Automorphisms fixing A pointwise act transitively outside cl(A), for |A| ≤ kmax."""
        self._require_compatible(pregeometry)
        self._check_kmax(kmax)
        matroid, group = pregeometry.matroid, pregeometry.group
        witness = None
        for mask in self._base_sets(matroid, kmax, base):
            rows = self._automorphisms.stabilizer_rows(group, mask)
            span = matroid.close(mask)
            outside = np.array([x for x in range(matroid.size) if not span >> x & 1], dtype=np.int64)
            for b in outside:
                unreached = outside[~np.isin(outside, rows[:, b])]
                if unreached.size:
                    witness = {"A": to_frozenset(mask), "b": int(b), "c": int(unreached[0])}
                    break
            if witness is not None:
                break
        result = self._verdict("homogeneity", witness)
        result.note = HOMOGENEITY_NOTE
        return result

    def check_generic_product(self, pregeometry: GroupPregeometry, kmax: int, homogeneity: Optional[PropositionResult] = None, base: Optional[Iterable[int]] = None) -> PropositionResult:
        """a ∉ cl(A ∪ {b}) implies a·b ∉ cl(A ∪ {b})."""
        self._require_compatible(pregeometry)
        self._check_kmax(kmax)
        matroid, group = pregeometry.matroid, pregeometry.group
        size = matroid.size
        witness = None
        for mask in self._base_sets(matroid, kmax, base):
            spans = [matroid.close(mask | (1 << b)) for b in range(size)]
            for a in range(size):
                for b in range(size):
                    if spans[b] >> a & 1:
                        continue
                    if spans[b] >> group.mult(a, b) & 1:
                        witness = {"A": to_frozenset(mask), "b": b, "a": a}
                        break
                if witness:
                    break
            if witness:
                break
        return self._settle(self._verdict("generic-product", witness), homogeneity)

    def check_invariant_subgroups(self, pregeometry: GroupPregeometry, kmax: int, homogeneity: Optional[PropositionResult] = None, base: Optional[Iterable[int]] = None) -> PropositionResult:
        """An A-invariant subgroup with an element outside cl(A) is the whole group."""
        self._require_compatible(pregeometry)
        self._check_kmax(kmax)
        matroid, group = pregeometry.matroid, pregeometry.group
        subgroups = self._automorphisms.subgroup_masks(group)
        witness = None
        for mask in self._base_sets(matroid, kmax, base):
            rows = self._automorphisms.stabilizer_rows(group, mask)
            span = matroid.close(mask)
            for subgroup in subgroups:
                if subgroup == matroid.full_mask or not subgroup & ~span:
                    continue
                members = np.fromiter(iter_bits(subgroup), dtype=np.int64)
                if np.isin(rows[:, members], members).all():
                    witness = {"A": to_frozenset(mask), "H": to_frozenset(subgroup)}
                    break
            if witness:
                break
        return self._settle(self._verdict("invariant-subgroups", witness), homogeneity)

    def check_invariance(self, pregeometry: GroupPregeometry, kmax: int, homogeneity: Optional[PropositionResult] = None, base: Optional[Iterable[int]] = None) -> PropositionResult:
        """An element fixed by every automorphism fixing A pointwise lies in cl(A)."""
        self._require_compatible(pregeometry)
        self._check_kmax(kmax)
        matroid, group = pregeometry.matroid, pregeometry.group
        everything = np.arange(matroid.size)
        witness = None
        for mask in self._base_sets(matroid, kmax, base):
            rows = self._automorphisms.stabilizer_rows(group, mask)
            span = matroid.close(mask)
            for x in np.flatnonzero(np.all(rows == everything, axis=0)):
                if not span >> int(x) & 1:
                    witness = {"A": to_frozenset(mask), "x": int(x)}
                    break
            if witness:
                break
        return self._settle(self._verdict("invariance", witness), homogeneity)

    def check_nontriviality(self, pregeometry: GroupPregeometry) -> PropositionResult:
        """Homogeneous at kmax=1 with rank ≥ 2 implies the pregeometry is not trivial."""
        homogeneity = self.check_finite_homogeneity(pregeometry, 1)
        matroid = pregeometry.matroid
        if homogeneity.status != Status.PASS:
            return PropositionResult("nontriviality", Status.VACUOUS, note="finite homogeneity fails")
        if matroid.rank_total < 2:
            return PropositionResult("nontriviality", Status.VACUOUS, note="rank below 2")
        trivial = self._classify.check_triviality(matroid)
        if trivial.value:
            return PropositionResult("nontriviality", Status.FAIL)
        return PropositionResult("nontriviality", Status.PASS)

    def check_clcom_commutativity(self, pregeometry: GroupPregeometry, base: Iterable[int] = ()) -> ClcomResult:
        """If b·a ∈ cl(A, a·b) for a generic pair over A, the group is commutative."""
        self._require_compatible(pregeometry)
        matroid, group = pregeometry.matroid, pregeometry.group
        mask = self._base_mask(matroid, base)
        kmax = min(mask.bit_count() + 2, self._config.MAX_KMAX)
        homogeneity = self.check_finite_homogeneity(pregeometry, kmax)
        note = None
        if kmax < mask.bit_count() + 2:
            note = f"homogeneity checked up to kmax={kmax}"

        hypothesis_pair = None
        commuting_pair = False
        for a in range(matroid.size):
            for b in range(matroid.size):
                if a == b or self._pregeometry.rank_of_mask(matroid, (1 << a) | (1 << b), over=mask) != 2:
                    continue
                ab, ba = group.mult(a, b), group.mult(b, a)
                commuting_pair = commuting_pair or ab == ba
                if hypothesis_pair is None and matroid.close(mask | (1 << ab)) >> ba & 1:
                    hypothesis_pair = (a, b)
                if hypothesis_pair is not None and commuting_pair:
                    break
            if hypothesis_pair is not None and commuting_pair:
                break

        conclusion = group.is_commutative()
        if homogeneity.status != Status.PASS or hypothesis_pair is None:
            status = Status.VACUOUS
        else:
            status = Status.PASS if conclusion else Status.FAIL
        witness = None
        if hypothesis_pair is not None:
            witness = {"A": to_frozenset(mask), "a": hypothesis_pair[0], "b": hypothesis_pair[1]}
        return ClcomResult(
            "clcom",
            status,
            witness,
            note,
            homogeneity=homogeneity.status,
            hypothesis=hypothesis_pair is not None,
            conclusion=conclusion,
            commuting_pair=commuting_pair,
            pair=hypothesis_pair,
        )

    # Decision: the three-line configuration -------------------------------
    def check_configuration(self, pregeometry: GroupPregeometry, base: Iterable[int] = (), homogeneity: Optional[PropositionResult] = None) -> ConfigurationReport:
        self._require_compatible(pregeometry)
        mask = self._base_mask(pregeometry.matroid, base)
        scan = ConfigurationScan(self, pregeometry, mask)
        summary = ConfigurationSummary()
        report = ConfigurationReport(A=to_frozenset(mask), summary=summary)
        keep = self._config.CONFIG_KEEP_WITNESSES
        logger.debug("configuration scan over A=%s", sorted(report.A))
        for a, b, c in scan.triples():
            witness = scan.evaluate(a, b, c)
            summary.total += 1
            summary.clcom_hypothesis += witness.clcom_hypothesis
            if witness.degenerate:
                summary.degenerate += 1
            elif witness.failed:
                summary.failed += 1
                report.failures.append(witness)
            else:
                summary.concurrent += 1
            if len(report.witnesses) < keep:
                report.witnesses.append(witness)
        if summary.failed:
            report.status = Status.FAIL
        elif summary.total == summary.degenerate:
            report.status = Status.VACUOUS
            report.note = "no non-degenerate triple"
        logger.info("%s", summary.describe())
        if homogeneity is not None and homogeneity.status == Status.FAIL and report.status == Status.FAIL:
            report.status = Status.VACUOUS
            report.note = "finite homogeneity fails"
        return report

    def evaluate_triple(self, pregeometry: GroupPregeometry, base: Iterable[int], a: int, b: int, c: int) -> ConfigurationWitness:
        self._require_compatible(pregeometry)
        matroid = pregeometry.matroid
        mask = self._base_mask(matroid, base)
        for x in (a, b, c):
            matroid.ground.check_element(x)
        scan = ConfigurationScan(self, pregeometry, mask)
        if not scan.admissible(a, b, c):
            raise PreconditionError(f"({a}, {b}, {c}) is not generic over {sorted(to_frozenset(mask))}")
        return scan.evaluate(a, b, c)


class ConfigurationScan:
    """Caches for one configuration scan: closures over A and the plane of each cl_A(a, b, c)."""

    def __init__(self, harness: PropositionHarness, pregeometry: GroupPregeometry, base: int):
        self._harness = harness
        self.group = pregeometry.group
        self.matroid = pregeometry.matroid
        self.base = base
        self._localized: Optional[Matroid] = None
        self._planes: Dict[int, Tuple[Geometry, Plane]] = {}

    def close(self, mask: int) -> int:
        return self.matroid.close(self.base | mask)

    def admissible(self, a: int, b: int, c: int) -> bool:
        return (
            not self.close(0) >> a & 1
            and not self.close(1 << a) >> b & 1
            and not self.close((1 << a) | (1 << b)) >> c & 1
        )

    def triples(self) -> Iterator[Tuple[int, int, int]]:
        """(a, b, c) with a ∉ cl_A(∅), b ∉ cl_A(a), c ∉ cl_A(a, b)."""
        size = self.matroid.size
        empty = self.close(0)
        for a in range(size):
            if empty >> a & 1:
                continue
            first = self.close(1 << a)
            for b in range(size):
                if first >> b & 1:
                    continue
                second = self.close((1 << a) | (1 << b))
                for c in range(size):
                    if not second >> c & 1:
                        yield a, b, c

    def plane_for(self, flat: int) -> Tuple[Geometry, Plane]:
        cached = self._planes.get(flat)
        if cached is None:
            harness = self._harness
            if self._localized is None:
                self._localized = harness._pregeometry.localize(self.matroid, iter_bits(self.base))
            restricted = harness._pregeometry.restrict(self._localized, iter_bits(flat))
            geometry = harness._classify.geometrize(restricted)
            plane = harness._planes.as_plane(geometry, PlaneMode.PROJECTIVE)
            cached = (geometry, plane)
            self._planes[flat] = cached
        return cached

    def evaluate(self, a: int, b: int, c: int) -> ConfigurationWitness:
        group = self.group
        mult, inv = group.mult, group.inv
        ab, ac, ba, ca = mult(a, b), mult(a, c), mult(b, a), mult(c, a)
        witness = ConfigurationWitness(A=to_frozenset(self.base), a=a, b=b, c=c)

        through_bc = self.close((1 << b) | (1 << c))
        left = mult(inv(c), b)
        right = mult(b, inv(c))
        witness.left_membership = bool(
            through_bc >> left & 1 and self.close((1 << ab) | (1 << ac)) >> left & 1
        )
        witness.right_membership = bool(
            through_bc >> right & 1 and self.close((1 << ba) | (1 << ca)) >> right & 1
        )
        witness.clcom_hypothesis = bool(self.close(1 << ab) >> ba & 1)
        witness.commuting = ab == ba

        flat = self.close((1 << a) | (1 << b) | (1 << c))
        try:
            geometry, plane = self.plane_for(flat)
        except ShapeError:
            witness.degenerate = True
            return witness
        labels = self.matroid.labels

        def point(x: int) -> Optional[int]:
            if not flat >> x & 1:
                return None
            return geometry.point_of(labels[x])

        points = [point(x) for x in (b, c, ab, ac, ba, ca)]
        if None in points or points[0] == points[1] or points[2] == points[3] or points[4] == points[5]:
            witness.degenerate = True
            return witness

        planes = self._harness._planes
        lines = (
            planes.line_through(plane, points[0], points[1]),
            planes.line_through(plane, points[2], points[3]),
            planes.line_through(plane, points[4], points[5]),
        )
        witness.lines = lines
        distinct = list(dict.fromkeys(lines))
        if len(distinct) == 3:
            witness.result = planes.concurrency(plane, *distinct)
        elif len(distinct) == 2:
            witness.result = ConcurrencyResult(True, common_point=planes.meet(plane, *distinct))
        else:
            witness.degenerate = True
        return witness
