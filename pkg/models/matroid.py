from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from models.closure import AxiomReport, ClosureTable


@dataclass(eq=False)
class Matroid:
    """A validated pregeometry: closure oracle, labels and a lazily cached flat lattice."""

    table: ClosureTable
    report: AxiomReport
    labels: Tuple[int, ...]
    rank_total: int = 0
    # flat mask -> rank, filled by PregeometryService.enumerate_flats
    _flat_ranks: Optional[Dict[int, int]] = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return self.table.size

    @property
    def ground(self):
        return self.table.ground

    @property
    def full_mask(self) -> int:
        return self.table.ground.full_mask

    @property
    def loops(self) -> int:
        return self.table.close(0)

    def close(self, mask: int) -> int:
        return self.table.close(mask)

    def is_closed(self, mask: int) -> bool:
        return self.table.close(mask) == mask

    def label_of(self, index: int) -> int:
        return self.labels[index]

    def __repr__(self) -> str:
        return f"<Matroid {self.table.kind} ground={self.size} rank={self.rank_total}>"
