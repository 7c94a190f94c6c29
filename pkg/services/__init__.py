from services.automorphism_service import AutomorphismService
from services.classify_service import ClassificationService
from services.finite_field import FieldSpec, PrimeFieldSpace
from services.plane_service import PlaneService
from services.pregeometry_service import PregeometryService

__all__ = [
    "AutomorphismService",
    "ClassificationService",
    "FieldSpec",
    "PlaneService",
    "PregeometryService",
    "PrimeFieldSpace",
]
