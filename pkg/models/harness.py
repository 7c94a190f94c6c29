from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

from models.element_set import format_witness
from models.group import Automorphism, FiniteGroup
from models.matroid import Matroid
from models.plane import ConcurrencyResult, Line


class Status:
    PASS = "PASS"
    FAIL = "FAIL"
    VACUOUS = "VACUOUS"

    @classmethod
    def ordered(cls):
        return [cls.PASS, cls.FAIL, cls.VACUOUS]


@dataclass
class CompatibilityResult:
    compatible: bool
    automorphism: Optional[Automorphism] = None
    flat: Optional[FrozenSet[int]] = None
    # "full" when every automorphism was scanned, "generators" otherwise
    scope: str = "full"


@dataclass(eq=False)
class GroupPregeometry:
    group: FiniteGroup
    matroid: Matroid
    compatibility: CompatibilityResult

    @property
    def compatible(self) -> bool:
        return self.compatibility.compatible


@dataclass
class PropositionResult:
    name: str
    status: str
    witness: Optional[Dict[str, object]] = None
    note: Optional[str] = None

    def describe(self) -> str:
        text = f"PROP {self.name} {self.status}"
        if self.witness:
            text += " witness=" + format_witness(self.witness)
        return text

    def lines(self) -> List[str]:
        out = [self.describe()]
        if self.note:
            out.append(f"NOTE {self.name}: {self.note}")
        return out


@dataclass
class ClcomResult(PropositionResult):
    homogeneity: Optional[str] = None
    hypothesis: bool = False
    conclusion: bool = False
    commuting_pair: bool = False
    pair: Optional[Tuple[int, int]] = None

    def describe(self) -> str:
        text = super().describe()
        text += (
            f" homogeneity={self.homogeneity} hypothesis={str(self.hypothesis).lower()}"
            f" conclusion={str(self.conclusion).lower()}"
            f" commuting_pair={str(self.commuting_pair).lower()}"
        )
        return text


@dataclass
class ConfigurationWitness:
    A: FrozenSet[int]
    a: int
    b: int
    c: int
    lines: Optional[Tuple[Line, Line, Line]] = None
    result: Optional[ConcurrencyResult] = None
    # c⁻¹b ∈ cl_A(b, c) ∩ cl_A(ab, ac)
    left_membership: bool = False
    # bc⁻¹ ∈ cl_A(b, c) ∩ cl_A(ba, ca)
    right_membership: bool = False
    # b·a ∈ cl_A(a·b)
    clcom_hypothesis: bool = False
    commuting: bool = False
    degenerate: bool = False

    @property
    def failed(self) -> bool:
        if self.degenerate:
            return False
        return not (self.result.concurrent and self.left_membership and self.right_membership)


@dataclass
class ConfigurationSummary:
    total: int = 0
    concurrent: int = 0
    degenerate: int = 0
    failed: int = 0
    clcom_hypothesis: int = 0

    def describe(self) -> str:
        return (
            f"CONFIG total={self.total} concurrent={self.concurrent}"
            f" degenerate={self.degenerate} failed={self.failed}"
        )


@dataclass
class ConfigurationResult(PropositionResult):
    summary: Optional[ConfigurationSummary] = None

    def lines(self) -> List[str]:
        head = [self.summary.describe()] if self.summary else []
        return head + super().lines()


@dataclass
class ConfigurationReport:
    A: FrozenSet[int]
    summary: ConfigurationSummary
    witnesses: List[ConfigurationWitness] = field(default_factory=list)
    failures: List[ConfigurationWitness] = field(default_factory=list)
    status: str = Status.PASS
    note: Optional[str] = None

    def as_proposition(self) -> ConfigurationResult:
        witness = None
        if self.failures:
            first = self.failures[0]
            witness = {"A": first.A, "a": first.a, "b": first.b, "c": first.c}
        return ConfigurationResult("configuration", self.status, witness, self.note, summary=self.summary)
