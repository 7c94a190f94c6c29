"""Helper factories shared by the test modules."""
from config import Config
from harness import PropositionHarness
from services import AutomorphismService, ClassificationService, PlaneService, PregeometryService
from services.constructors import linear_matroid
from services.file_formats import load_group, load_matroid
from services.finite_field import FieldSpec


class TestConfig(Config):
    SAMPLE_SETS = 16
    SAMPLE_TRIPLES = 80


def create_services(config=TestConfig):
    pregeometry = PregeometryService(config)
    classify = ClassificationService(pregeometry, config)
    planes = PlaneService(pregeometry, config)
    automorphisms = AutomorphismService(pregeometry, config)
    harness = PropositionHarness(pregeometry, classify, planes, automorphisms, config)
    return pregeometry, classify, planes, automorphisms, harness


def build(table, config=TestConfig):
    return PregeometryService(config).build_matroid(table)


def linear(q, d, config=TestConfig):
    return build(linear_matroid(FieldSpec(q, d)), config)


def fixture_path(name):
    return Config.FIXTURE_DIR / name


def fixture_matroid(name, config=TestConfig):
    return build(load_matroid(fixture_path(name)), config)


def fixture_group(name):
    return load_group(fixture_path(name))
