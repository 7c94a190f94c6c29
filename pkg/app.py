import logging
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

import click

from config import Config
from errors import NoIntersection, NotAPregeometry, NotProjective, PregeometryError
from harness import PropositionHarness
from models import AxiomVerdict, ClosureTable, Matroid, PlaneMode, PropositionResult, Status
from models.element_set import format_set, iter_bits
from services import AutomorphismService, ClassificationService, PlaneService, PregeometryService
from services.constructors import explicit_from_flats
from services.file_formats import load_group, load_matroid, write_matroid

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_VACUOUS = 2
EXIT_ERROR = 3

PROPOSITIONS = (
    "all",
    "homogeneity",
    "generic-product",
    "invariant-subgroups",
    "invariance",
    "nontriviality",
    "configuration",
    "clcom",
)

EXISTING_FILE = click.Path(exists=True, dir_okay=False, path_type=Path)


@dataclass
class Services:
    config: type
    pregeometry: PregeometryService
    classify: ClassificationService
    planes: PlaneService
    automorphisms: AutomorphismService
    harness: PropositionHarness


def create_services(config=Config) -> Services:
    pregeometry = PregeometryService(config)
    classify = ClassificationService(pregeometry, config)
    planes = PlaneService(pregeometry, config)
    automorphisms = AutomorphismService(pregeometry, config)
    harness = PropositionHarness(pregeometry, classify, planes, automorphisms, config)
    return Services(config, pregeometry, classify, planes, automorphisms, harness)


def exit_code_for(statuses: Iterable[str]) -> int:
    statuses = set(statuses)
    if Status.FAIL in statuses:
        return EXIT_FAIL
    if Status.VACUOUS in statuses:
        return EXIT_VACUOUS
    return EXIT_PASS


class ReportGroup(click.Group):
    """Commands return their exit code; errors become exit code 3 with a message on stderr."""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            code = super().main(
                args=args,
                prog_name=prog_name,
                complete_var=complete_var,
                standalone_mode=False,
                **extra,
            )
        except click.ClickException as exc:
            exc.show()
            code = EXIT_ERROR
        except click.Abort:
            click.echo("Aborted!", err=True)
            code = EXIT_ERROR
        except (PregeometryError, OSError) as exc:
            click.echo(f"error: {exc}", err=True)
            code = EXIT_ERROR
        except Exception:
            logger.exception("unexpected failure")
            code = EXIT_ERROR
        if code is None:
            code = EXIT_PASS
        if standalone_mode:
            sys.exit(code)
        return code


# Report helpers ---------------------------------------------------------
def _axiom_line(verdict: AxiomVerdict) -> str:
    parts = ["AXIOM", verdict.name, "PASS" if verdict.passed else "FAIL"]
    if verdict.mode == "sampled":
        parts.append("mode=sampled")
    if verdict.witness:
        parts.append("witness=" + verdict.describe_witness())
    if verdict.note:
        parts.append(f'note="{verdict.note}"')
    return " ".join(parts)


def _note_normalization(table: ClosureTable) -> None:
    if table.added_flats:
        click.echo(f"NOTE flats normalized added={table.added_flats}")


def _parse_indices(text: Optional[str]) -> Tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(int(token) for token in re.split(r"[,\s]+", text.strip()) if token)
    except ValueError:
        raise click.BadParameter(f"expected element indices, got {text!r}") from None


def _load_pregeometry(services: Services, path: Path) -> Optional[Matroid]:
    """The validated matroid, or None after printing the failed axioms."""
    table = load_matroid(path)
    _note_normalization(table)
    try:
        return services.pregeometry.build_matroid(table)
    except NotAPregeometry as exc:
        for verdict in exc.report.verdicts:
            if not verdict.passed:
                click.echo(_axiom_line(verdict))
        return None


def _echo_results(results: Sequence[PropositionResult]) -> int:
    for result in results:
        for line in result.lines():
            click.echo(line)
    return exit_code_for(result.status for result in results)


def _echo_not_projective(exc: NotProjective) -> int:
    click.echo("PLANE projective=false witness=" + ",".join(format_set(line) for line in exc.lines))
    return EXIT_FAIL


# Commands ---------------------------------------------------------------
@click.group(cls=ReportGroup)
@click.option("-v", "--verbose", count=True, help="Log to stderr (-vv for debug output).")
@click.pass_context
def cli(ctx: click.Context, verbose: int) -> None:
    """Finite pregeometry engine and proposition harness."""
    if verbose:
        logging.basicConfig(
            level=logging.DEBUG if verbose > 1 else logging.INFO,
            format=Config.LOG_FORMAT,
            stream=sys.stderr,
        )
    if ctx.obj is None:
        ctx.obj = create_services()


@cli.command()
@click.argument("matroid_file", type=EXISTING_FILE)
@click.pass_obj
def verify(services: Services, matroid_file: Path) -> int:
    """Check the four closure axioms."""
    table = load_matroid(matroid_file)
    _note_normalization(table)
    report = services.pregeometry.verify_axioms(table)
    for verdict in report.verdicts:
        click.echo(_axiom_line(verdict))
    if not report.passed:
        return EXIT_FAIL
    matroid = services.pregeometry.build_matroid(table, report=report)
    click.echo(f"RANK dim={matroid.rank_total} geometric_dim={matroid.rank_total - 1}")
    return EXIT_PASS


@cli.command()
@click.argument("matroid_file", type=EXISTING_FILE)
@click.option("--full-triviality", is_flag=True, help="Test triviality on every subset.")
@click.option("--equivalence", is_flag=True, help="Cross-check local modularity against localizations.")
@click.pass_obj
def classify(services: Services, matroid_file: Path, full_triviality: bool, equivalence: bool) -> int:
    """Report the trivial / modular / locally modular / projective flags."""
    matroid = _load_pregeometry(services, matroid_file)
    if matroid is None:
        return EXIT_FAIL
    report = services.classify.classify(matroid, full_triviality=full_triviality)
    click.echo(f"CLASSIFY object={'geometry' if report.is_geometry else 'pregeometry'}")
    for flag in report.flags:
        click.echo(f"CLASSIFY {flag.describe()}")
    if equivalence:
        result = services.classify.check_local_modularity_equivalence(matroid)
        click.echo(f"CLASSIFY equivalence={'true' if result.agrees else 'false'}")
        if not result.agrees:
            return EXIT_FAIL
    return EXIT_PASS


@cli.command()
@click.argument("matroid_file", type=EXISTING_FILE)
@click.option("-o", "--output", type=click.Path(dir_okay=False, path_type=Path), help="Write the geometry as an explicit matroid file.")
@click.pass_obj
def geometrize(services: Services, matroid_file: Path, output: Optional[Path]) -> int:
    """Delete loops and identify parallel elements."""
    matroid = _load_pregeometry(services, matroid_file)
    if matroid is None:
        return EXIT_FAIL
    geometry = services.classify.geometrize(matroid)
    if geometry.is_empty:
        click.echo("GEOMETRY points=0 dim=0")
        click.echo("NOTE geometry: every element is a loop")
        return EXIT_PASS
    base = geometry.base
    click.echo(f"GEOMETRY points={base.size} dim={base.rank_total}")
    for point in base.labels:
        click.echo(f"POINT {point} class={format_set(geometry.classes[point])}")
    if output is not None:
        flats = [tuple(iter_bits(mask)) for mask in services.pregeometry.flat_masks(base)]
        table = explicit_from_flats(base.size, flats)
        point_ids = "point ids by index: " + " ".join(str(p) for p in base.labels)
        write_matroid(table, output, comments=(point_ids,))
        logger.info("wrote %s", output)
    return EXIT_PASS


@cli.command()
@click.argument("matroid_file", type=EXISTING_FILE)
@click.option("--mode", type=click.Choice(PlaneMode.ordered_modes()), default=PlaneMode.PROJECTIVE, show_default=True)
@click.option("--concur", nargs=3, type=str, default=None, help="Three lines, each as comma-separated point ids.")
@click.pass_obj
def plane(services: Services, matroid_file: Path, mode: str, concur: Optional[Tuple[str, str, str]]) -> int:
    """Show a rank-3 geometry as points and lines."""
    matroid = _load_pregeometry(services, matroid_file)
    if matroid is None:
        return EXIT_FAIL
    geometry = services.classify.geometrize(matroid)
    try:
        incidence = services.planes.as_plane(geometry, mode)
    except NotProjective as exc:
        return _echo_not_projective(exc)
    click.echo(f"PLANE points={len(incidence.points)} lines={len(incidence.lines)} mode={incidence.mode}")
    for line in incidence.lines:
        click.echo(f"LINE {format_set(line)}")
    click.echo(
        f"NONDEGENERATE three_points_per_line={str(incidence.three_points_per_line).lower()}"
        f" quadrangle={str(incidence.has_quadrangle).lower()}"
    )
    if concur:
        lines = [services.planes.line_of(incidence, _parse_indices(spec)) for spec in concur]
        try:
            result = services.planes.concurrency(incidence, *lines)
        except NoIntersection as exc:
            click.echo("NOT-CONCURRENT parallel=" + ",".join(format_set(line) for line in exc.lines))
            return EXIT_FAIL
        click.echo(result.describe())
    return EXIT_PASS


@cli.command("group-check")
@click.argument("group_file", type=EXISTING_FILE)
@click.argument("matroid_file", type=EXISTING_FILE)
@click.option("--prop", type=click.Choice(PROPOSITIONS), default="all", show_default=True)
@click.option("--A", "base_text", default=None, help="Base set A as comma-separated indices.")
@click.option("--kmax", type=int, default=Config.DEFAULT_KMAX, show_default=True)
@click.pass_obj
def group_check(services: Services, group_file: Path, matroid_file: Path, prop: str, base_text: Optional[str], kmax: int) -> int:
    """Check the group propositions on a group carrying a pregeometry."""
    group = load_group(group_file)
    matroid = _load_pregeometry(services, matroid_file)
    if matroid is None:
        return EXIT_FAIL
    harness = services.harness
    pregeometry = harness.pair(group, matroid)
    if not pregeometry.compatible:
        found = pregeometry.compatibility
        click.echo(
            f"PROP compatibility FAIL witness=f={found.automorphism.describe()} F={format_set(found.flat)}"
        )
        return EXIT_FAIL

    base = _parse_indices(base_text)
    scoped = base if base_text else None
    try:
        if prop == "all":
            results: List[PropositionResult] = harness.run_all(pregeometry, scoped, kmax)
        elif prop == "homogeneity":
            results = [harness.check_finite_homogeneity(pregeometry, kmax, scoped)]
        elif prop == "generic-product":
            results = [harness.check_generic_product(pregeometry, kmax, base=scoped)]
        elif prop == "invariant-subgroups":
            results = [harness.check_invariant_subgroups(pregeometry, kmax, base=scoped)]
        elif prop == "invariance":
            results = [harness.check_invariance(pregeometry, kmax, base=scoped)]
        elif prop == "nontriviality":
            results = [harness.check_nontriviality(pregeometry)]
        elif prop == "configuration":
            results = [harness.check_configuration(pregeometry, base).as_proposition()]
        else:
            results = [harness.check_clcom_commutativity(pregeometry, base)]
    except NotProjective as exc:
        return _echo_not_projective(exc)
    return _echo_results(results)


def run(argv: Sequence[str]) -> int:
    return cli.main(args=list(argv), prog_name="pregeometry", standalone_mode=False)


def main() -> None:
    cli.main(prog_name="pregeometry")


if __name__ == "__main__":
    main()
