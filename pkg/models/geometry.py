from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Optional, Tuple

from models.element_set import format_set
from models.matroid import Matroid


@dataclass(eq=False)
class Geometry:
    """The canonical geometry of a pregeometry.

    ``map`` sends every non-loop source label to the id of its point, and a
    point id is the least source label in its class.
    """

    source: Matroid
    base: Optional[Matroid]
    map: Dict[int, int]
    classes: Dict[int, FrozenSet[int]] = field(default_factory=dict)

    @property
    def is_empty(self) -> bool:
        return self.base is None

    @property
    def points(self) -> Tuple[int, ...]:
        return self.base.labels if self.base is not None else ()

    def point_of(self, label: int) -> Optional[int]:
        return self.map.get(label)


@dataclass
class FlagVerdict:
    name: str
    value: bool
    witness: Optional[Tuple[FrozenSet[int], ...]] = None

    def describe(self) -> str:
        text = f"{self.name}={'true' if self.value else 'false'}"
        if self.witness:
            text += " witness=" + ",".join(format_set(part) for part in self.witness)
        return text


@dataclass
class ClassificationReport:
    trivial: FlagVerdict
    modular: FlagVerdict
    locally_modular: FlagVerdict
    is_geometry: bool

    @property
    def projective(self) -> bool:
        return self.modular.value and not self.trivial.value

    @property
    def flags(self):
        return [
            self.trivial,
            self.modular,
            self.locally_modular,
            FlagVerdict("projective", self.projective),
            FlagVerdict("is_geometry", self.is_geometry),
        ]


@dataclass
class EquivalenceResult:
    agrees: bool
    locally_modular: bool
    localizations_modular: bool
    # non-loop element whose localization is not modular, if any
    element: Optional[int] = None
    witness: Optional[Tuple[FrozenSet[int], ...]] = None
