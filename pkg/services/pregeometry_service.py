import logging
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from config import Config
from errors import CapacityError, InputError, NotAPregeometry
from models import AxiomName, AxiomReport, AxiomVerdict, ClosureTable, GroundSet, Matroid
from models.element_set import iter_bits, lowest_bit, mask_key, size_lex_key, to_frozenset

logger = logging.getLogger(__name__)

FINITE_CHARACTER_NOTE = "degenerate on finite grounds"


def _popcounts(masks: np.ndarray, size: int) -> np.ndarray:
    counts = np.zeros(masks.shape, dtype=np.int64)
    for bit in range(size):
        counts += (masks >> bit) & 1
    return counts


def _least_mask(candidates: np.ndarray, popcounts: np.ndarray) -> Optional[int]:
    """Least mask under (size, sorted members) among ``candidates``."""
    if candidates.size == 0:
        return None
    sizes = popcounts[candidates]
    smallest = candidates[sizes == sizes.min()]
    return min((int(m) for m in smallest), key=mask_key)


class PregeometryService:
    """Closure-operator foundations: axioms, rank, restriction, localization and flats.

    Elements are addressed by ground index; ``Matroid.labels`` only decorates
    reports.
    """

    def __init__(self, config=Config):
        self._config = config

    # Axioms ---------------------------------------------------------------
    def verify_axioms(self, table: ClosureTable) -> AxiomReport:
        size = table.size
        limit = self._config.EXHAUSTIVE_GROUND_LIMIT
        if size <= limit:
            logger.debug("exhaustive axiom check on %s ground=%d", table.kind, size)
            report = self._verify_exhaustive(table)
        elif table.algebraic and size <= self._config.MAX_GROUND:
            logger.debug("sampled axiom check on %s ground=%d", table.kind, size)
            report = self._verify_sampled(table)
        else:
            bound = self._config.MAX_GROUND if table.algebraic else limit
            raise CapacityError("ground size", size, bound)
        for verdict in report.verdicts:
            if not verdict.passed:
                logger.info("axiom %s fails: %s", verdict.name, verdict.describe_witness())
        return report

    def _verify_exhaustive(self, table: ClosureTable) -> AxiomReport:
        size = table.size
        closures = table.full_table()
        masks = np.arange(1 << size, dtype=np.int64)
        popcounts = _popcounts(masks, size)

        missing = np.flatnonzero((closures & masks) != masks)
        least = _least_mask(missing, popcounts)
        if least is None:
            reflexivity = AxiomVerdict(AxiomName.REFLEXIVITY, True)
        else:
            dropped = lowest_bit(least & ~int(closures[least]))
            reflexivity = AxiomVerdict(
                AxiomName.REFLEXIVITY, False, {"A": to_frozenset(least), "a": dropped}
            )

        unstable = np.flatnonzero(closures[closures] != closures)
        least = _least_mask(unstable, popcounts)
        if least is None:
            transitivity = AxiomVerdict(AxiomName.TRANSITIVITY, True)
        else:
            transitivity = AxiomVerdict(AxiomName.TRANSITIVITY, False, {"A": to_frozenset(least)})

        extended = [closures[masks | (1 << b)] for b in range(size)]
        best = None
        for b in range(size):
            shrinking = np.flatnonzero((closures & ~extended[b]) != 0)
            least = _least_mask(shrinking, popcounts)
            if least is not None:
                key = (size_lex_key(least), b)
                if best is None or key < best[0]:
                    best = (key, least, b)
        if best is None:
            finite_character = AxiomVerdict(
                AxiomName.FINITE_CHARACTER, True, note=FINITE_CHARACTER_NOTE
            )
        else:
            finite_character = AxiomVerdict(
                AxiomName.FINITE_CHARACTER, False, {"A": to_frozenset(best[1]), "b": best[2]}
            )

        holds = [((closures >> a) & 1).astype(bool) for a in range(size)]
        best = None
        for a in range(size):
            for b in range(size):
                if a == b:
                    continue
                gained = ((extended[b] >> a) & 1).astype(bool) & ~holds[a]
                violated = gained & ~((extended[a] >> b) & 1).astype(bool)
                least = _least_mask(np.flatnonzero(violated), popcounts)
                if least is not None:
                    key = (size_lex_key(least), a, b)
                    if best is None or key < best[0]:
                        best = (key, least, a, b)
        if best is None:
            exchange = AxiomVerdict(AxiomName.EXCHANGE, True)
        else:
            exchange = AxiomVerdict(
                AxiomName.EXCHANGE, False, {"A": to_frozenset(best[1]), "a": best[2], "b": best[3]}
            )
        return AxiomReport(reflexivity, transitivity, finite_character, exchange)

    def _verify_sampled(self, table: ClosureTable) -> AxiomReport:
        config = self._config
        size = table.size
        rng = np.random.default_rng(config.SAMPLE_SEED)
        close = table.close

        samples = {0}
        samples.update(1 << x for x in range(size))
        for _ in range(config.SAMPLE_SETS):
            count = int(rng.integers(2, 5))
            members = rng.choice(size, size=min(count, size), replace=False)
            samples.add(sum(1 << int(x) for x in members))
        ordered = sorted(samples, key=size_lex_key)

        reflexive_bad = [(size_lex_key(m), m) for m in ordered if close(m) & m != m]
        stable_bad = [(size_lex_key(m), m) for m in ordered if close(close(m)) != close(m)]

        monotone_bad = []
        for mask in ordered:
            for b in rng.integers(0, size, size=2):
                b = int(b)
                if close(mask) & ~close(mask | (1 << b)):
                    monotone_bad.append((size_lex_key(mask), b, mask))

        triples = []
        if size <= config.SAMPLE_PAIR_LIMIT:
            triples.extend((0, a, b) for a in range(size) for b in range(size) if a != b)
        small = [m for m in ordered if m.bit_count() <= 2]
        for _ in range(config.SAMPLE_TRIPLES):
            base = small[int(rng.integers(0, len(small)))]
            a, b = (int(x) for x in rng.choice(size, size=2, replace=False))
            triples.append((base, a, b))
        exchange_bad = []
        for base, a, b in triples:
            if close(base | (1 << b)) >> a & 1 and not close(base) >> a & 1:
                if not close(base | (1 << a)) >> b & 1:
                    exchange_bad.append((size_lex_key(base), a, b, base))

        def verdict(name, bad, witness):
            if not bad:
                note = FINITE_CHARACTER_NOTE if name == AxiomName.FINITE_CHARACTER else None
                return AxiomVerdict(name, True, mode="sampled", note=note)
            return AxiomVerdict(name, False, witness(min(bad)), mode="sampled")

        return AxiomReport(
            verdict(AxiomName.REFLEXIVITY, reflexive_bad, lambda t: {"A": to_frozenset(t[1])}),
            verdict(AxiomName.TRANSITIVITY, stable_bad, lambda t: {"A": to_frozenset(t[1])}),
            verdict(AxiomName.FINITE_CHARACTER, monotone_bad,
                    lambda t: {"A": to_frozenset(t[2]), "b": t[1]}),
            verdict(AxiomName.EXCHANGE, exchange_bad,
                    lambda t: {"A": to_frozenset(t[3]), "a": t[1], "b": t[2]}),
        )

    # Construction ---------------------------------------------------------
    def build_matroid(
        self,
        table: ClosureTable,
        labels: Optional[Tuple[int, ...]] = None,
        report: Optional[AxiomReport] = None,
    ) -> Matroid:
        if report is None:
            report = self.verify_axioms(table)
        if not report.passed:
            raise NotAPregeometry(report)
        if labels is None:
            labels = tuple(range(table.size))
        matroid = Matroid(table=table, report=report, labels=tuple(labels))
        matroid.rank_total = self.rank_of_mask(matroid, matroid.full_mask)
        return matroid

    # Closure and rank -----------------------------------------------------
    def closure(self, matroid: Matroid, elements: Iterable[int]) -> frozenset:
        return to_frozenset(matroid.close(matroid.ground.mask_of(elements)))

    def rank_of_mask(self, matroid: Matroid, mask: int, over: int = 0) -> int:
        generators = over
        current = matroid.close(over)
        rank = 0
        for element in iter_bits(mask & ~current):
            if not current >> element & 1:
                generators |= 1 << element
                current = matroid.close(generators)
                rank += 1
        return rank

    def rank(self, matroid: Matroid, elements: Iterable[int], over: Iterable[int] = ()) -> int:
        """dim(A/Z): the size of a maximal subset of A independent over cl(Z)."""
        ground = matroid.ground
        return self.rank_of_mask(matroid, ground.mask_of(elements), ground.mask_of(over))

    def basis_mask(self, matroid: Matroid, mask: int) -> int:
        chosen = 0
        current = matroid.close(0)
        for element in iter_bits(mask):
            if not current >> element & 1:
                chosen |= 1 << element
                current = matroid.close(chosen)
        return chosen

    def basis_within(self, matroid: Matroid, elements: Iterable[int]) -> frozenset:
        """Lexicographically least maximal independent subset (greedy ascending scan)."""
        return to_frozenset(self.basis_mask(matroid, matroid.ground.mask_of(elements)))

    def is_independent(self, matroid: Matroid, elements: Iterable[int]) -> bool:
        mask = matroid.ground.mask_of(elements)
        return all(
            not matroid.close(mask & ~(1 << element)) >> element & 1 for element in iter_bits(mask)
        )

    # Derived pregeometries ------------------------------------------------
    def restrict(self, matroid: Matroid, elements: Iterable[int]) -> Matroid:
        """cl^Y(A) = cl(A) ∩ Y, re-indexed onto 0..|Y|-1 with labels carried."""
        keep = matroid.ground.mask_of(elements)
        members = list(iter_bits(keep))
        if not members:
            raise InputError("cannot restrict to an empty set")
        position = {element: index for index, element in enumerate(members)}
        parent = matroid.table

        def rule(mask: int) -> int:
            source = 0
            for index in iter_bits(mask):
                source |= 1 << members[index]
            result = 0
            for element in iter_bits(parent.close(source) & keep):
                result |= 1 << position[element]
            return result

        table = ClosureTable(
            ground=GroundSet(len(members)),
            rule=rule,
            kind="restriction",
            algebraic=parent.algebraic,
        )
        labels = tuple(matroid.labels[element] for element in members)
        return self.build_matroid(table, labels)

    def localize(self, matroid: Matroid, elements: Iterable[int]) -> Matroid:
        """cl_Y(A) = cl(A ∪ Y) on the same ground set."""
        base = matroid.ground.mask_of(elements)
        parent = matroid.table
        table = ClosureTable(
            ground=parent.ground,
            rule=lambda mask: parent.close(mask | base),
            kind="localization",
            algebraic=parent.algebraic,
        )
        return self.build_matroid(table, matroid.labels)

    # Flats ----------------------------------------------------------------
    def flat_lattice(self, matroid: Matroid) -> Dict[int, int]:
        """Every flat as a mask, mapped to its rank; computed once per matroid."""
        if matroid._flat_ranks is not None:
            return matroid._flat_ranks
        if matroid.size > self._config.MAX_GROUND:
            raise CapacityError("ground size", matroid.size, self._config.MAX_GROUND)
        bottom = matroid.close(0)
        ranks = {bottom: 0}
        frontier = [bottom]
        level = 0
        while frontier:
            level += 1
            following = []
            for flat in frontier:
                remaining = matroid.full_mask & ~flat
                while remaining:
                    element = lowest_bit(remaining)
                    cover = matroid.close(flat | (1 << element))
                    remaining &= ~cover
                    if cover not in ranks:
                        ranks[cover] = level
                        following.append(cover)
                        if len(ranks) > self._config.MAX_FLATS:
                            raise CapacityError("flat count", len(ranks), self._config.MAX_FLATS)
            frontier = following
        logger.debug("enumerated %d flats on %r", len(ranks), matroid)
        matroid._flat_ranks = ranks
        return ranks

    def flat_masks(self, matroid: Matroid, rank_filter: Optional[int] = None) -> List[int]:
        ranks = self.flat_lattice(matroid)
        masks = [m for m, r in ranks.items() if rank_filter is None or r == rank_filter]
        return sorted(masks, key=mask_key)

    def enumerate_flats(self, matroid: Matroid, rank_filter: Optional[int] = None) -> List[frozenset]:
        return [to_frozenset(mask) for mask in self.flat_masks(matroid, rank_filter)]

    def flat_rank(self, matroid: Matroid, flat: Iterable[int]) -> int:
        mask = matroid.ground.mask_of(flat)
        ranks = self.flat_lattice(matroid)
        if mask not in ranks:
            raise InputError(f"{sorted(flat)} is not a flat")
        return ranks[mask]
