from itertools import combinations

import pytest

from errors import CapacityError
from services import ClassificationService, FieldSpec, PregeometryService
from services.catalog import catalog_matroids, fano_plane
from services.constructors import affine_matroid, trivial_pregeometry
from tests.factories import TestConfig, build, linear


def create_services():
    pregeometry = PregeometryService(TestConfig)
    return pregeometry, ClassificationService(pregeometry, TestConfig)


def flags_of(report):
    return {flag.name: flag.value for flag in report.flags}


def test_geometrize_gf2_cubed_drops_the_zero_vector():
    _, classify = create_services()
    geometry = classify.geometrize(linear(2, 3))
    assert geometry.points == (1, 2, 3, 4, 5, 6, 7)
    assert geometry.point_of(0) is None
    assert all(geometry.classes[p] == frozenset({p}) for p in geometry.points)
    assert geometry.base.rank_total == 3
    assert classify.is_geometry(geometry.base)


def test_geometrize_gf3_squared_identifies_scalar_multiples():
    _, classify = create_services()
    geometry = classify.geometrize(linear(3, 2))
    assert geometry.points == (1, 3, 4, 5)
    assert geometry.classes == {
        1: frozenset({1, 2}),
        3: frozenset({3, 6}),
        4: frozenset({4, 8}),
        5: frozenset({5, 7}),
    }
    assert geometry.point_of(7) == 5
    assert geometry.base.rank_total == 2


def test_geometrize_all_loops_gives_the_empty_geometry():
    _, classify = create_services()
    geometry = classify.geometrize(build(trivial_pregeometry(3, [0, 1, 2])))
    assert geometry.is_empty
    assert geometry.points == ()


def test_linear_matroids_are_modular_and_not_trivial():
    _, classify = create_services()
    for q, d in [(2, 2), (2, 3), (3, 2)]:
        flags = flags_of(classify.classify(linear(q, d)))
        assert flags["modular"]
        assert flags["locally_modular"]
        assert not flags["trivial"]
        assert flags["projective"]
        assert not flags["is_geometry"]


def test_affine_plane_over_gf3_is_locally_modular_but_not_modular():
    _, classify = create_services()
    report = classify.classify(build(affine_matroid(FieldSpec(3, 2))))
    assert report.modular.describe() == "modular=false witness={0,1,2},{3,4,5}"
    assert report.locally_modular.describe() == "locally_modular=true"
    assert not report.trivial.value
    assert not report.projective
    assert report.is_geometry


def test_affine_cube_over_gf2_is_locally_modular_but_not_modular():
    _, classify = create_services()
    report = classify.classify(build(affine_matroid(FieldSpec(2, 3))))
    assert not report.modular.value
    assert report.locally_modular.value


def test_trivial_pregeometries_are_trivial_modular_and_not_projective():
    _, classify = create_services()
    for table in (trivial_pregeometry(5), trivial_pregeometry(6, [0])):
        flags = flags_of(classify.classify(build(table)))
        assert flags["trivial"]
        assert flags["modular"]
        assert flags["locally_modular"]
        assert not flags["projective"]


def test_fano_plane_is_a_projective_geometry():
    _, classify = create_services()
    report = classify.classify(build(fano_plane()))
    assert report.is_geometry
    assert report.projective


def test_triviality_witness_is_a_flat_and_an_atom():
    _, classify = create_services()
    verdict = classify.check_triviality(linear(2, 3))
    assert not verdict.value
    flat, atom = verdict.witness
    assert len(atom) == 2 and 0 in atom


def test_full_triviality_mode_agrees_with_the_flat_mode():
    _, classify = create_services()
    for table in (trivial_pregeometry(6, [0]), trivial_pregeometry(4)):
        matroid = build(table)
        assert classify.check_triviality_full(matroid).value
        assert classify.check_triviality(matroid).value
    for matroid in (linear(2, 3), build(affine_matroid(FieldSpec(3, 2)))):
        assert not classify.check_triviality_full(matroid).value
        assert not classify.check_triviality(matroid).value


def test_full_triviality_mode_is_bounded():
    _, classify = create_services()
    with pytest.raises(CapacityError):
        classify.check_triviality_full(linear(3, 3))


def test_local_modularity_agrees_with_modular_localizations():
    pregeometry, classify = create_services()
    catalog = catalog_matroids()
    assert max(table.size for table in catalog.values()) == 81
    for name, table in catalog.items():
        result = classify.check_local_modularity_equivalence(pregeometry.build_matroid(table))
        assert result.agrees, name


def test_localizations_of_the_affine_plane_are_modular():
    _, classify = create_services()
    result = classify.check_local_modularity_equivalence(build(affine_matroid(FieldSpec(3, 2))))
    assert result.agrees
    assert result.locally_modular
    assert result.localizations_modular
    assert result.element is None


def test_single_modularity_checks_match_the_report():
    _, classify = create_services()
    affine = build(affine_matroid(FieldSpec(3, 2)))
    assert classify.check_modularity(affine).describe() == "modular=false witness={0,1,2},{3,4,5}"
    assert classify.check_modularity(affine, local=True).value
    assert classify.check_modularity(linear(2, 3)).value


def test_geometrize_is_idempotent_on_the_catalog():
    _, classify = create_services()
    for name, table in catalog_matroids().items():
        geometry = classify.geometrize(build(table))
        again = classify.geometrize(geometry.base)
        assert again.points == geometry.points, name
        assert all(again.classes[p] == frozenset({p}) for p in again.points), name
        assert again.base.rank_total == geometry.base.rank_total, name


@pytest.mark.parametrize("name", ["linear-3-2", "linear-3-3", "affine-2-3", "trivial-6-loop0"])
def test_geometrize_preserves_rank(name):
    pregeometry, classify = create_services()
    matroid = build(catalog_matroids()[name])
    geometry = classify.geometrize(matroid)
    base = geometry.base
    for size in range(4):
        for points in combinations(range(base.size), size):
            source = 0
            for index in points:
                for element in geometry.classes[base.label_of(index)]:
                    source |= 1 << element
            mask = sum(1 << index for index in points)
            assert pregeometry.rank_of_mask(base, mask) == pregeometry.rank_of_mask(matroid, source), points


def test_triviality_survives_geometrization():
    _, classify = create_services()
    for name, table in catalog_matroids().items():
        matroid = build(table)
        geometry = classify.geometrize(matroid)
        assert classify.check_triviality(geometry.base).value == classify.check_triviality(matroid).value, name


def test_modular_implies_locally_modular_on_the_catalog():
    _, classify = create_services()
    for name, table in catalog_matroids().items():
        matroid = build(table)
        if classify.check_modularity(matroid).value:
            assert classify.check_modularity(matroid, local=True).value, name
