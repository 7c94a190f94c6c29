from itertools import combinations

import pytest

from errors import CapacityError, InputError, NotAPregeometry
from models import ClosureTable, GroundSet
from models.element_set import permute_mask
from services import FieldSpec, PregeometryService, PrimeFieldSpace
from services.catalog import catalog_matroids, cyclic_group, fano_plane, quaternion_group
from services.constructors import (affine_matroid, explicit_from_flats, linear_matroid,
                                   subgroup_closure, trivial_pregeometry)
from services.pregeometry_service import FINITE_CHARACTER_NOTE
from tests.factories import TestConfig, build, linear


def create_service():
    return PregeometryService(TestConfig)


def brute_force_rank(service, matroid, elements):
    best = 0
    for size in range(len(elements) + 1):
        for subset in combinations(elements, size):
            if service.is_independent(matroid, subset):
                best = max(best, size)
    return best


@pytest.mark.parametrize(
    "table",
    [
        linear_matroid(FieldSpec(2, 3)),
        linear_matroid(FieldSpec(2, 4)),
        linear_matroid(FieldSpec(3, 2)),
        affine_matroid(FieldSpec(2, 3)),
        affine_matroid(FieldSpec(3, 2)),
        trivial_pregeometry(5),
        trivial_pregeometry(6, [0, 3]),
        fano_plane(),
    ],
)
def test_known_pregeometries_pass_every_axiom(table):
    report = create_service().verify_axioms(table)
    assert report.passed
    assert not report.sampled
    assert report.finite_character.note == FINITE_CHARACTER_NOTE


def test_subgroup_closure_on_z4_fails_exchange_with_least_witness():
    report = create_service().verify_axioms(subgroup_closure(cyclic_group(4)))
    assert report.reflexivity.passed
    assert report.transitivity.passed
    assert report.finite_character.passed
    assert not report.exchange.passed
    assert report.exchange.witness == {"A": frozenset(), "a": 2, "b": 1}


def test_subgroup_closure_on_q8_fails_exchange_at_minus_one_and_i():
    group = quaternion_group()
    report = create_service().verify_axioms(subgroup_closure(group))
    witness = report.exchange.witness
    assert witness == {"A": frozenset(), "a": 1, "b": 2}
    assert (group.element_names[witness["a"]], group.element_names[witness["b"]]) == ("-1", "i")


def test_reflexivity_failure_names_the_dropped_element():
    table = ClosureTable(ground=GroundSet(2), rule=lambda mask: 0, kind="broken")
    report = create_service().verify_axioms(table)
    assert not report.reflexivity.passed
    assert report.reflexivity.witness == {"A": frozenset({0}), "a": 0}
    assert report.transitivity.passed


def test_non_monotone_operator_fails_finite_character():
    # cl({0}) = {0, 1} but cl({0, 2}) = {0, 2}
    closures = {0b000: 0b000, 0b001: 0b011, 0b010: 0b010, 0b100: 0b100,
                0b011: 0b011, 0b101: 0b101, 0b110: 0b110, 0b111: 0b111}
    table = ClosureTable(ground=GroundSet(3), rule=closures.__getitem__, kind="broken")
    report = create_service().verify_axioms(table)
    assert not report.finite_character.passed
    assert report.finite_character.witness == {"A": frozenset({0}), "b": 2}


def test_build_matroid_rejects_operators_failing_an_axiom():
    with pytest.raises(NotAPregeometry) as excinfo:
        create_service().build_matroid(subgroup_closure(cyclic_group(4)))
    assert not excinfo.value.report.exchange.passed


def test_explicit_operator_above_exhaustive_limit_is_rejected():
    with pytest.raises(CapacityError) as excinfo:
        create_service().verify_axioms(explicit_from_flats(17, []))
    assert excinfo.value.bound == TestConfig.EXHAUSTIVE_GROUND_LIMIT


def test_large_algebraic_operator_is_verified_by_sampling():
    report = create_service().verify_axioms(linear_matroid(FieldSpec(2, 5)))
    assert report.passed
    assert report.sampled
    assert {verdict.mode for verdict in report.verdicts} == {"sampled"}


def test_sampled_check_still_catches_broken_exchange():
    table = ClosureTable(
        ground=GroundSet(20),
        rule=subgroup_closure(cyclic_group(20)).rule,
        kind="subgroup",
        algebraic=True,
    )
    report = create_service().verify_axioms(table)
    assert not report.exchange.passed
    assert report.exchange.mode == "sampled"


def test_closure_and_rank_in_gf2_cubed():
    service = create_service()
    matroid = linear(2, 3)
    assert matroid.rank_total == 3
    assert service.closure(matroid, [1, 2]) == frozenset({0, 1, 2, 3})
    assert service.rank(matroid, [1, 2, 3]) == 2
    assert service.rank(matroid, [3], over=[1]) == 1
    assert service.rank(matroid, [1, 2], over=[3]) == 1
    assert service.rank(matroid, [0]) == 0


def test_basis_within_is_the_greedy_least_basis():
    service = create_service()
    matroid = linear(2, 3)
    assert service.basis_within(matroid, [1, 2, 3]) == frozenset({1, 2})
    assert service.basis_within(matroid, [3, 5, 6, 7]) == frozenset({3, 5, 7})
    assert service.is_independent(matroid, [1, 2, 4])
    assert not service.is_independent(matroid, [1, 2, 3])
    assert not service.is_independent(matroid, [0])


def test_rank_matches_brute_force_on_catalog_matroids():
    service = create_service()
    for name, table in catalog_matroids().items():
        matroid = service.build_matroid(table)
        elements = list(range(min(matroid.size, 6)))
        for size in range(len(elements) + 1):
            for subset in combinations(elements, size):
                assert service.rank(matroid, subset) == brute_force_rank(service, matroid, subset), name


def test_restriction_reindexes_and_keeps_labels():
    service = create_service()
    restricted = service.restrict(linear(2, 3), [0, 1, 2, 3])
    assert restricted.size == 4
    assert restricted.labels == (0, 1, 2, 3)
    assert restricted.rank_total == 2

    upper = service.restrict(linear(2, 3), [4, 5, 6, 7])
    assert upper.labels == (4, 5, 6, 7)
    assert upper.label_of(2) == 6
    # 4 + 5 = 1 lies outside the restriction
    assert service.closure(upper, [0, 1]) == frozenset({0, 1})


def test_restriction_to_an_empty_set_is_an_input_error():
    with pytest.raises(InputError):
        create_service().restrict(linear(2, 3), [])


def test_localization_adds_the_base_to_every_closure():
    service = create_service()
    localized = service.localize(linear(2, 3), [1])
    assert service.closure(localized, []) == frozenset({0, 1})
    assert service.closure(localized, [2]) == frozenset({0, 1, 2, 3})
    assert localized.rank_total == 2


@pytest.mark.parametrize("name", ["linear-2-3", "affine-3-2", "trivial-6-loop0", "fano"])
def test_restriction_to_the_ground_and_localization_at_nothing_are_the_identity(name):
    service = create_service()
    matroid = service.build_matroid(catalog_matroids()[name])
    restricted = service.restrict(matroid, range(matroid.size))
    localized = service.localize(matroid, [])
    assert restricted.labels == localized.labels == matroid.labels
    for mask in range(1 << matroid.size):
        assert restricted.close(mask) == matroid.close(mask), mask
        assert localized.close(mask) == matroid.close(mask), mask


def test_affine_plane_localized_at_the_origin_is_the_linear_plane():
    service = create_service()
    localized = service.localize(build(affine_matroid(FieldSpec(3, 2))), [0])
    assert localized.close(0) == 0b1
    assert service.closure(localized, [4]) == frozenset({0, 4, 8})
    assert service.enumerate_flats(localized) == service.enumerate_flats(linear(3, 2))
    assert localized.rank_total == 2


def test_affine_localized_at_a_point_is_the_recentred_linear_space():
    service = create_service()
    affines = {name: table for name, table in catalog_matroids().items() if table.kind == "affine"}
    assert {"affine-2-3", "affine-3-2", "affine-3-3"} <= set(affines)
    for name, table in affines.items():
        spec = FieldSpec(*(int(arg) for arg in table.kind_args))
        space = PrimeFieldSpace(spec)
        point = spec.size - 1
        shift = space.translation(point)
        localized = service.localize(build(table), [point])
        vector = build(linear_matroid(spec, space))
        for size in range(3):
            for members in combinations(range(spec.size), size):
                mask = sum(1 << x for x in members)
                moved = permute_mask(mask, shift)
                assert localized.close(moved) == permute_mask(vector.close(mask), shift), (name, members)


def test_flat_lattice_of_gf2_cubed():
    service = create_service()
    matroid = linear(2, 3)
    assert len(service.enumerate_flats(matroid)) == 16
    assert len(service.enumerate_flats(matroid, rank_filter=2)) == 7
    assert service.enumerate_flats(matroid, rank_filter=0) == [frozenset({0})]
    assert frozenset({0, 1}) in service.enumerate_flats(matroid, rank_filter=1)
    assert service.flat_rank(matroid, [0, 1, 2, 3]) == 2
    with pytest.raises(InputError):
        service.flat_rank(matroid, [1, 2])


def test_flat_count_above_the_bound_is_a_capacity_error():
    class TinyLattice(TestConfig):
        MAX_FLATS = 10

    service = PregeometryService(TinyLattice)
    matroid = build(linear_matroid(FieldSpec(2, 3)), TinyLattice)
    with pytest.raises(CapacityError):
        service.flat_lattice(matroid)


def test_trivial_pregeometry_with_loops_has_rank_of_its_non_loops():
    matroid = build(trivial_pregeometry(6, [0]))
    assert matroid.rank_total == 5
    assert matroid.loops == 0b1
