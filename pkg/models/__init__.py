from models.closure import AxiomName, AxiomReport, AxiomVerdict, ClosureTable
from models.element_set import ElementSet, GroundSet
from models.geometry import ClassificationReport, EquivalenceResult, FlagVerdict, Geometry
from models.group import Automorphism, FiniteGroup
from models.harness import (ClcomResult, CompatibilityResult, ConfigurationReport,
                            ConfigurationResult, ConfigurationSummary, ConfigurationWitness,
                            GroupPregeometry, PropositionResult, Status)
from models.matroid import Matroid
from models.plane import Collineation, ConcurrencyResult, Plane, PlaneMode

__all__ = [
    "AxiomName",
    "AxiomReport",
    "AxiomVerdict",
    "ClosureTable",
    "ElementSet",
    "GroundSet",
    "ClassificationReport",
    "EquivalenceResult",
    "FlagVerdict",
    "Geometry",
    "Automorphism",
    "FiniteGroup",
    "ClcomResult",
    "CompatibilityResult",
    "ConfigurationReport",
    "ConfigurationResult",
    "ConfigurationSummary",
    "ConfigurationWitness",
    "GroupPregeometry",
    "PropositionResult",
    "Status",
    "Matroid",
    "Collineation",
    "ConcurrencyResult",
    "Plane",
    "PlaneMode",
]
