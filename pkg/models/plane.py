from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Optional, Tuple

Line = FrozenSet[int]


class PlaneMode:
    PROJECTIVE = "projective"
    AFFINE = "affine"

    @classmethod
    def ordered_modes(cls):
        return [cls.PROJECTIVE, cls.AFFINE]


@dataclass(eq=False)
class Plane:
    points: Tuple[int, ...]
    lines: Tuple[Line, ...]
    mode: str
    three_points_per_line: bool = False
    has_quadrangle: bool = False
    _line_of_pair: Dict[FrozenSet[int], Line] = field(default_factory=dict, repr=False)
    _meets: Dict[FrozenSet[Line], Optional[int]] = field(default_factory=dict, repr=False)

    def __repr__(self) -> str:
        return f"<Plane {self.mode} points={len(self.points)} lines={len(self.lines)}>"


@dataclass(frozen=True)
class Collineation:
    mapping: Tuple[Tuple[int, int], ...]

    @classmethod
    def from_dict(cls, point_map: Dict[int, int]) -> "Collineation":
        return cls(tuple(sorted(point_map.items())))

    def as_dict(self) -> Dict[int, int]:
        return dict(self.mapping)

    def __call__(self, point: int) -> int:
        return self.as_dict()[point]

    def image_of(self, points: Iterable[int]) -> FrozenSet[int]:
        lookup = self.as_dict()
        return frozenset(lookup[p] for p in points)

    def compose(self, other: "Collineation") -> "Collineation":
        """``self`` after ``other``."""
        first, second = other.as_dict(), self.as_dict()
        return Collineation.from_dict({p: second[first[p]] for p in first})

    def inverse(self) -> "Collineation":
        return Collineation.from_dict({q: p for p, q in self.mapping})

    def is_identity(self) -> bool:
        return all(p == q for p, q in self.mapping)

    def fixes(self, point: int) -> bool:
        return self(point) == point


@dataclass
class ConcurrencyResult:
    concurrent: bool
    common_point: Optional[int] = None
    # d1 = l1 ∩ l2, d2 = l1 ∩ l3, d3 = l2 ∩ l3
    pairwise_meets: Optional[Tuple[int, int, int]] = None

    def describe(self) -> str:
        if self.concurrent:
            return f"CONCURRENT point={self.common_point}"
        d1, d2, d3 = self.pairwise_meets
        return f"NOT-CONCURRENT d1={d1} d2={d2} d3={d3}"
