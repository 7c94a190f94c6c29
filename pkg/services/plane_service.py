import logging
from itertools import combinations
from typing import Dict, Iterable, Mapping, Optional, Sequence

from config import Config
from errors import InputError, NoIntersection, NotAnAutomorphism, NotProjective, ShapeError
from models import Collineation, ConcurrencyResult, Geometry, Plane, PlaneMode
from models.element_set import iter_bits
from models.plane import Line
from services.pregeometry_service import PregeometryService

logger = logging.getLogger(__name__)


def _line_key(line: Line):
    return tuple(sorted(line))


class PlaneService:
    """Rank-3 geometries as point/line incidence structures."""

    def __init__(self, pregeometry_service: PregeometryService, config=Config):
        self._pregeometry = pregeometry_service
        self._config = config

    def as_plane(self, geometry: Geometry, mode: str = PlaneMode.PROJECTIVE) -> Plane:
        if mode not in PlaneMode.ordered_modes():
            raise InputError(f"unknown plane mode {mode!r}")
        base = geometry.base
        rank = 0 if base is None else base.rank_total
        if rank != 3:
            raise ShapeError(f"a plane needs a rank-3 geometry, got rank {rank}")

        labels = base.labels
        lines = tuple(
            frozenset(labels[i] for i in iter_bits(mask))
            for mask in self._pregeometry.flat_masks(base, rank_filter=2)
        )
        line_of_pair: Dict[frozenset, Line] = {}
        for line in lines:
            for pair in combinations(sorted(line), 2):
                line_of_pair[frozenset(pair)] = line

        meets: Dict[frozenset, Optional[int]] = {}
        for first, second in combinations(lines, 2):
            common = first & second
            point = next(iter(common)) if common else None
            if point is None and mode == PlaneMode.PROJECTIVE:
                raise NotProjective(first, second)
            meets[frozenset((first, second))] = point

        plane = Plane(
            points=tuple(labels),
            lines=lines,
            mode=mode,
            _line_of_pair=line_of_pair,
            _meets=meets,
        )
        plane.three_points_per_line = all(len(line) >= 3 for line in lines)
        plane.has_quadrangle = self._has_quadrangle(plane)
        logger.debug("built %r", plane)
        return plane

    @staticmethod
    def _has_quadrangle(plane: Plane) -> bool:
        """Four points with no three on a line."""
        collinear = plane._line_of_pair
        for quad in combinations(plane.points, 4):
            if all(
                r not in collinear[frozenset((p, q))]
                for p, q, r in ((quad[0], quad[1], quad[2]), (quad[0], quad[1], quad[3]),
                                (quad[0], quad[2], quad[3]), (quad[1], quad[2], quad[3]))
            ):
                return True
        return False

    # Incidence queries ----------------------------------------------------
    def line_through(self, plane: Plane, p: int, q: int) -> Line:
        if p == q:
            raise InputError(f"a line needs two distinct points, got {p} twice")
        line = plane._line_of_pair.get(frozenset((p, q)))
        if line is None:
            raise InputError(f"{p} and {q} are not both points of the plane")
        return line

    def line_of(self, plane: Plane, points: Iterable[int]) -> Line:
        """The line containing all of ``points`` (at least two of them)."""
        points = sorted(set(points))
        if len(points) < 2:
            raise InputError("a line needs at least two points")
        line = self.line_through(plane, points[0], points[1])
        stray = [p for p in points if p not in line]
        if stray:
            raise InputError(f"points {points} are not collinear")
        return line

    def _check_line(self, plane: Plane, line: Iterable[int]) -> Line:
        line = frozenset(line)
        if line not in plane.lines:
            raise InputError(f"{_line_key(line)} is not a line of the plane")
        return line

    def meet(self, plane: Plane, first: Iterable[int], second: Iterable[int]) -> int:
        first, second = self._check_line(plane, first), self._check_line(plane, second)
        if first == second:
            raise InputError("meet needs two distinct lines")
        point = plane._meets[frozenset((first, second))]
        if point is None:
            raise NoIntersection(first, second)
        return point

    def concurrency(self, plane: Plane, l1: Iterable[int], l2: Iterable[int], l3: Iterable[int]) -> ConcurrencyResult:
        lines = [self._check_line(plane, line) for line in (l1, l2, l3)]
        if len(set(lines)) != 3:
            raise InputError("concurrency needs three pairwise distinct lines")
        d1 = self.meet(plane, lines[0], lines[1])
        d2 = self.meet(plane, lines[0], lines[2])
        d3 = self.meet(plane, lines[1], lines[2])
        if d1 == d2 == d3:
            return ConcurrencyResult(True, common_point=d1)
        return ConcurrencyResult(False, pairwise_meets=(d1, d2, d3))

    # Collineations --------------------------------------------------------
    def collineation_from(
        self, plane: Plane, geometry: Geometry, ground_map: Mapping[int, int]
    ) -> Collineation:
        """Push a closure-preserving bijection of the source ground set down to the points."""
        source = geometry.source
        labels = source.labels
        index_of = {label: index for index, label in enumerate(labels)}
        if isinstance(ground_map, Sequence):
            ground_map = dict(enumerate(ground_map))
        if set(ground_map) != set(labels) or set(ground_map.values()) != set(labels):
            raise InputError("ground map must be a bijection of the source ground set")
        image = [index_of[ground_map[label]] for label in labels]

        for flat in self._pregeometry.flat_masks(source):
            mapped = 0
            for element in iter_bits(flat):
                mapped |= 1 << image[element]
            if not source.is_closed(mapped):
                violated = frozenset(labels[i] for i in iter_bits(flat))
                logger.info("map breaks flat %s", sorted(violated))
                raise NotAnAutomorphism(violated)

        point_map = {point: geometry.map[ground_map[point]] for point in plane.points}
        collineation = Collineation.from_dict(point_map)
        known = set(plane.lines)
        for line in plane.lines:
            if collineation.image_of(line) not in known:
                raise NotAnAutomorphism(line)
        return collineation

    def line_image(self, plane: Plane, collineation: Collineation, line: Iterable[int]) -> Line:
        return self._check_line(plane, collineation.image_of(self._check_line(plane, line)))
