import pytest
from click.testing import CliRunner

import app
from tests.factories import TestConfig, fixture_path


def invoke(*args):
    runner = CliRunner()
    argv = [str(fixture_path(arg)) if arg.endswith((".matroid", ".group")) and "/" not in arg else arg for arg in args]
    return runner.invoke(app.cli, argv, obj=app.create_services(TestConfig))


def output_lines(result):
    return result.output.splitlines()


def test_verify_reports_the_four_axioms_and_the_rank():
    result = invoke("verify", "linear-2-3.matroid")
    assert result.exit_code == app.EXIT_PASS
    lines = output_lines(result)
    assert lines[0] == "AXIOM reflexivity PASS"
    assert lines[1] == "AXIOM transitivity PASS"
    assert lines[2] == 'AXIOM finite_character PASS note="degenerate on finite grounds"'
    assert lines[3] == "AXIOM exchange PASS"
    assert lines[-1] == "RANK dim=3 geometric_dim=2"


def test_verify_subgroup_closure_of_z4_fails_exchange():
    result = invoke("verify", "z4-subgroups.matroid")
    assert result.exit_code == app.EXIT_FAIL
    assert "AXIOM exchange FAIL witness=A={} a=2 b=1" in output_lines(result)
    assert not any(line.startswith("RANK") for line in output_lines(result))


def test_verify_explicit_fano_needs_no_normalization():
    result = invoke("verify", "fano.matroid")
    assert result.exit_code == app.EXIT_PASS
    assert not any(line.startswith("NOTE flats") for line in output_lines(result))
    assert "RANK dim=3 geometric_dim=2" in output_lines(result)


def test_classify_affine_plane():
    result = invoke("classify", "affine-3-2.matroid", "--equivalence")
    assert result.exit_code == app.EXIT_PASS
    lines = output_lines(result)
    assert lines[0] == "CLASSIFY object=geometry"
    assert "CLASSIFY modular=false witness={0,1,2},{3,4,5}" in lines
    assert "CLASSIFY locally_modular=true" in lines
    assert lines[-1] == "CLASSIFY equivalence=true"


def test_classify_trivial_pregeometry_with_a_loop():
    result = invoke("classify", "trivial-6-loop0.matroid", "--full-triviality")
    assert result.exit_code == app.EXIT_PASS
    lines = output_lines(result)
    assert lines[0] == "CLASSIFY object=pregeometry"
    assert "CLASSIFY trivial=true" in lines


def test_geometrize_writes_a_loadable_geometry(tmp_path):
    output = tmp_path / "points.matroid"
    result = invoke("geometrize", "linear-3-2.matroid", "-o", str(output))
    assert result.exit_code == app.EXIT_PASS
    lines = output_lines(result)
    assert lines[0] == "GEOMETRY points=4 dim=2"
    assert "POINT 1 class={1,2}" in lines
    assert "POINT 5 class={5,7}" in lines
    assert "# point ids by index: 1 3 4 5" in output.read_text(encoding="utf-8")

    again = invoke("verify", str(output))
    assert again.exit_code == app.EXIT_PASS
    assert output_lines(again)[-1] == "RANK dim=2 geometric_dim=1"


def test_geometrize_drops_the_loop():
    result = invoke("geometrize", "trivial-4-loop0.matroid")
    assert result.exit_code == app.EXIT_PASS
    lines = output_lines(result)
    assert lines[0] == "GEOMETRY points=3 dim=3"
    assert "POINT 1 class={1}" in lines


def test_geometrize_all_loops(tmp_path):
    path = tmp_path / "loops.matroid"
    path.write_text("pregeometry v1\nground 3\nkind trivial 0 1 2\n", encoding="utf-8")
    result = invoke("geometrize", str(path))
    assert result.exit_code == app.EXIT_PASS
    assert output_lines(result) == ["GEOMETRY points=0 dim=0", "NOTE geometry: every element is a loop"]


def test_plane_shows_the_fano_plane_and_checks_concurrency():
    result = invoke("plane", "linear-2-3.matroid", "--concur", "1,2,3", "1,4,5", "2,4,6")
    assert result.exit_code == app.EXIT_PASS
    lines = output_lines(result)
    assert lines[0] == "PLANE points=7 lines=7 mode=projective"
    assert sum(1 for line in lines if line.startswith("LINE ")) == 7
    assert "NONDEGENERATE three_points_per_line=true quadrangle=true" in lines
    assert lines[-1] == "NOT-CONCURRENT d1=1 d2=2 d3=4"


def test_plane_pencil_is_concurrent():
    result = invoke("plane", "fano.matroid", "--concur", "0,1,2", "0,3,4", "0,5,6")
    assert result.exit_code == app.EXIT_PASS
    assert output_lines(result)[-1] == "CONCURRENT point=0"


def test_affine_plane_is_rejected_in_projective_mode():
    result = invoke("plane", "affine-3-2.matroid")
    assert result.exit_code == app.EXIT_FAIL
    assert output_lines(result) == ["PLANE projective=false witness={0,1,2},{3,4,5}"]


def test_affine_mode_reports_parallel_lines():
    result = invoke("plane", "affine-3-2.matroid", "--mode", "affine", "--concur", "0,1,2", "3,4,5", "0,3,6")
    assert result.exit_code == app.EXIT_FAIL
    lines = output_lines(result)
    assert lines[0] == "PLANE points=9 lines=12 mode=affine"
    assert lines[-1] == "NOT-CONCURRENT parallel={0,1,2},{3,4,5}"


def test_group_check_single_proposition_reports_the_raw_failure():
    result = invoke("group-check", "z4.group", "trivial-4-loop0.matroid", "--prop", "generic-product")
    assert result.exit_code == app.EXIT_FAIL
    assert output_lines(result) == ["PROP generic-product FAIL witness=A={} b=3 a=1"]


def test_group_check_all_downgrades_failures_after_homogeneity_fails():
    result = invoke("group-check", "z4.group", "trivial-4-loop0.matroid")
    assert result.exit_code == app.EXIT_FAIL
    lines = output_lines(result)
    assert lines[0] == "PROP homogeneity FAIL witness=A={} b=1 c=2"
    assert lines[1].startswith("NOTE homogeneity: finite analogue")
    assert "PROP generic-product VACUOUS witness=A={} b=3 a=1" in lines
    assert "NOTE invariant-subgroups: finite homogeneity fails" in lines


def test_group_check_all_runs_over_the_given_base():
    result = invoke("group-check", "z4.group", "trivial-4-loop0.matroid", "--A", "1", "--kmax", "1")
    assert result.exit_code == app.EXIT_FAIL
    lines = output_lines(result)
    assert lines[0] == "PROP homogeneity FAIL witness=A={1} b=2 c=3"
    assert "PROP generic-product VACUOUS witness=A={1} b=3 a=2" in lines


def test_group_check_all_with_a_rank_two_base_is_vacuous():
    result = invoke("group-check", "z2-3.group", "linear-2-3.matroid", "--A", "1,2", "--kmax", "1")
    assert result.exit_code == app.EXIT_VACUOUS
    lines = output_lines(result)
    assert "CONFIG total=0 concurrent=0 degenerate=0 failed=0" in lines
    assert "NOTE clcom: homogeneity checked up to kmax=3" in lines
    assert not any(line.startswith("error:") for line in lines)


def test_group_check_on_the_vector_group_passes():
    result = invoke("group-check", "z2-3.group", "linear-2-3.matroid", "--kmax", "1")
    assert result.exit_code == app.EXIT_PASS
    lines = output_lines(result)
    assert "CONFIG total=168 concurrent=168 degenerate=0 failed=0" in lines
    assert all(" FAIL" not in line and " VACUOUS" not in line for line in lines if line.startswith("PROP"))


def test_group_check_s3_homogeneity_and_vacuous_clcom():
    homogeneity = invoke("group-check", "s3.group", "trivial-6-loop0.matroid", "--prop", "homogeneity", "--kmax", "1")
    assert homogeneity.exit_code == app.EXIT_FAIL
    assert output_lines(homogeneity)[0] == "PROP homogeneity FAIL witness=A={} b=1 c=4"

    clcom = invoke("group-check", "s3.group", "trivial-6-loop0.matroid", "--prop", "clcom")
    assert clcom.exit_code == app.EXIT_VACUOUS
    assert output_lines(clcom)[0].startswith("PROP clcom VACUOUS")


@pytest.mark.parametrize(
    "args",
    [
        ("group-check", "z4.group", "fano.matroid"),
        ("group-check", "z4.group", "trivial-4-loop0.matroid", "--prop", "everything"),
        ("group-check", "z4.group", "trivial-4-loop0.matroid", "--A", "0,x"),
        ("verify", "missing.matroid"),
        ("explode", "fano.matroid"),
    ],
)
def test_input_and_usage_errors_exit_with_three(args):
    assert invoke(*args).exit_code == app.EXIT_ERROR


def test_size_mismatch_is_reported_on_stderr():
    result = invoke("group-check", "z4.group", "fano.matroid")
    assert result.output.startswith("error: ")


def test_run_returns_the_exit_code():
    assert app.run(["verify", str(fixture_path("trivial-6-loop0.matroid"))]) == app.EXIT_PASS


def test_exit_code_for_statuses():
    assert app.exit_code_for(["PASS", "VACUOUS", "FAIL"]) == app.EXIT_FAIL
    assert app.exit_code_for(["PASS", "VACUOUS"]) == app.EXIT_VACUOUS
    assert app.exit_code_for(["PASS"]) == app.EXIT_PASS
    assert app.exit_code_for([]) == app.EXIT_PASS
