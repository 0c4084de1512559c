"""
Semitree CLI
Argument parsing and dispatch for enumerate, inspect, chains, tree-a, stats and verify.
Semigroups are given as "<a,b,...>" (generators) or "G:{g1,g2,...}" (gaps); quote
them in the shell because of the angle and curly brackets.
"""
import argparse
import contextlib
import logging
import sys
from pathlib import Path
from typing import IO, Iterator, List, Optional, Sequence

from app.core.config import settings
from app.schemas.models import (
    ChainReport,
    EffectiveGeneratorRecord,
    InspectReport,
    OutputFormat,
    SemigroupRecord,
    GenusIndexing,
    StrengthConvention,
)
from app.services.stats_service import StatsService
from app.services.verification_service import VerificationService
from semigroups.chains import FiniteSubtree, FinitelyManyChains, analyze, small_element_gcd
from semigroups.classes import class_flags, non_gap_intervals
from semigroups.core import TRIVIAL, Semigroup, canonical_string, parse
from semigroups.errors import SemigroupError
from semigroups.tree import format_node, iter_subtree, node
from semigroups.tree_a import parse_seed

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFICATION_FAILED = 2


class SemitreeParser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors with exit status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _add_format(parser: argparse.ArgumentParser, choices: Sequence[OutputFormat], default: OutputFormat) -> None:
    parser.add_argument(
        "--format",
        type=OutputFormat,
        choices=list(choices),
        default=default,
        metavar="{" + ",".join(c.value for c in choices) + "}",
        help=f"Output format (default: {default.value})",
    )


def build_parser() -> argparse.ArgumentParser:
    common = SemitreeParser(add_help=False)
    common.add_argument(
        "--output", type=Path, help="Write results to this file instead of stdout (relative to the output directory)"
    )

    parser = SemitreeParser(prog="semitree", description="Explore the tree of numerical semigroups by genus")
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    enumerate_ = commands.add_parser("enumerate", parents=[common], help="Count (or dump) the tree by genus")
    enumerate_.add_argument("--max-genus", type=_non_negative, default=settings.default_max_genus)
    enumerate_.add_argument("--dump", action="store_true", help="One line per node, depth-first")
    enumerate_.add_argument("--workers", type=_positive, default=settings.workers)
    enumerate_.add_argument("--recompute", action="store_true", help="Recompute every generator list from scratch")
    _add_format(enumerate_, [OutputFormat.TEXT, OutputFormat.CSV, OutputFormat.JSON], OutputFormat.TEXT)
    enumerate_.set_defaults(handler=_cmd_enumerate)

    inspect = commands.add_parser("inspect", parents=[common], help="Describe semigroups")
    inspect.add_argument("semigroups", nargs="+", metavar="SEMIGROUP")
    _add_format(inspect, [OutputFormat.TEXT, OutputFormat.JSON], OutputFormat.TEXT)
    inspect.set_defaults(handler=_cmd_inspect)

    chains = commands.add_parser("chains", parents=[common], help="Infinite-chain analysis, one JSON line each")
    chains.add_argument("semigroups", nargs="*", metavar="SEMIGROUP")
    chains.add_argument("--all", type=_non_negative, metavar="MAX_GENUS", help="Every non-trivial node up to this genus")
    chains.set_defaults(handler=_cmd_chains)

    tree_a = commands.add_parser("tree-a", parents=[common], help="Levels of tree A or of a seeded recursion")
    tree_a.add_argument("--levels", type=_non_negative, default=settings.tree_a_levels)
    tree_a.add_argument("--l", type=int, dest="seed_l", help="Level of the seed")
    tree_a.add_argument("--seed", help='Seed multiset as "label:count,...", e.g. "0:5,2:1,4:1"')
    _add_format(tree_a, [OutputFormat.CSV, OutputFormat.JSON], OutputFormat.CSV)
    tree_a.set_defaults(handler=_cmd_tree_a)

    stats = commands.add_parser("stats", parents=[common], help="Per-genus statistics")
    stats.add_argument("--max-genus", type=_non_negative, default=settings.default_max_genus)
    stats.add_argument("--include-ordinary", action="store_true", help="Count generators of ordinary nodes too")
    stats.add_argument("--conventions", choices=["default", "both"], default="default")
    stats.add_argument("--workers", type=_positive, default=settings.workers)
    stats.add_argument("--plot-data", action="store_true", help="Emit g, n_g, 2F_g, 1+3*2^(g-3)")
    stats.add_argument("--report", action="store_true", help="Emit e/o diagonals and bound checks")
    stats.add_argument(
        "--indexing",
        choices=[i.value for i in GenusIndexing] + ["both"],
        default=GenusIndexing.LITERAL.value,
        help="Genus at which --report reads histogram diagonals and the bound",
    )
    _add_format(stats, [OutputFormat.CSV, OutputFormat.JSON], OutputFormat.CSV)
    stats.set_defaults(handler=_cmd_stats)

    verify = commands.add_parser("verify", parents=[common], help="Run a property suite or suite group")
    verify.add_argument("suite")
    verify.add_argument("--max-genus", type=_non_negative)
    _add_format(verify, [OutputFormat.TEXT, OutputFormat.JSON], OutputFormat.TEXT)
    verify.set_defaults(handler=_cmd_verify)
    return parser


@contextlib.contextmanager
def _open_output(path: Optional[Path]) -> Iterator[IO[str]]:
    """stdout, or the given file; relative paths land under settings.output_dir."""
    if path is None:
        yield sys.stdout
        return
    if not path.is_absolute():
        path = settings.output_dir / path
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        yield f


# --- commands -----------------------------------------------------------------

def _cmd_enumerate(args, out: IO[str]) -> int:
    if args.dump:
        for tree_node in iter_subtree(TRIVIAL, args.max_genus, incremental=not args.recompute):
            print(format_node(tree_node), file=out)
        return EXIT_OK
    service = StatsService(workers=args.workers)
    counts = [row.n_g for row in service.table(args.max_genus, with_classes=False)]
    if args.format is OutputFormat.JSON:
        service.write_json({"max_genus": args.max_genus, "counts": counts}, out)
    elif args.format is OutputFormat.CSV:
        service.write_csv(({"g": g, "n_g": n} for g, n in enumerate(counts)), out)
    else:
        print(" ".join(map(str, counts)), file=out)
    return EXIT_OK


def inspect_report(s: Semigroup) -> InspectReport:
    decorated = node(s, method="definitional")
    return InspectReport(
        canonical=canonical_string(s),
        semigroup=SemigroupRecord.of(s),
        frobenius=s.frobenius_number,
        effective=[EffectiveGeneratorRecord(value=e, strength=st.value) for e, st in decorated.effective_gens],
        kind=decorated.kind.value,
        classes=class_flags(s).labels(),
        d=None if s.is_trivial else small_element_gcd(s),
        non_gap_intervals=non_gap_intervals(s),
    )


def _cmd_inspect(args, out: IO[str]) -> int:
    for text in args.semigroups:
        report = inspect_report(parse(text))
        if args.format is OutputFormat.JSON:
            StatsService.write_json(report, out)
            continue
        s = report.semigroup
        strengths = " ".join(f"{e.value}{'+' if e.strength == 'strong' else '-'}" for e in report.effective)
        print(report.canonical, file=out)
        print(f"gaps: {' '.join(map(str, s.gaps)) or '-'}", file=out)
        print(f"c={s.c} g={s.g} m={s.m} frobenius={report.frobenius}", file=out)
        print(f"effective: {strengths or '-'}", file=out)
        print(f"kind: {report.kind}", file=out)
        print(f"classes: {' '.join(report.classes) or '-'}", file=out)
        if report.d is not None:
            print(f"d: {report.d}", file=out)
    return EXIT_OK


def chain_report(s: Semigroup) -> ChainReport:
    analysis = analyze(s)
    verdict = analysis.verdict
    report = ChainReport(input=canonical_string(s), d=analysis.d, verdict="infinitely-many-chains")
    if isinstance(verdict, FiniteSubtree):
        report.verdict = "finite-subtree"
        report.max_genus = verdict.max_genus
        report.deepest = canonical_string(verdict.deepest)
    elif isinstance(verdict, FinitelyManyChains):
        report.verdict = "finitely-many-chains"
        report.count = verdict.count
        report.witnesses = [canonical_string(w) for w in verdict.witnesses]
        report.literal_descendant_count = verdict.literal_descendant_count
    return report


def _cmd_chains(args, out: IO[str]) -> int:
    if args.all is None and not args.semigroups:
        raise SemigroupError("chains needs SEMIGROUP arguments or --all MAX_GENUS")
    targets: List[Semigroup] = [parse(text) for text in args.semigroups]
    if args.all is not None:
        targets += [n.semigroup for n in iter_subtree(TRIVIAL, args.all) if not n.semigroup.is_trivial]
    for s in targets:
        StatsService.write_json(chain_report(s), out)
    return EXIT_OK


def _cmd_tree_a(args, out: IO[str]) -> int:
    if (args.seed is None) != (args.seed_l is None):
        raise SemigroupError("--seed and --l go together")
    seed = parse_seed(args.seed) if args.seed is not None else None
    rows = StatsService.tree_a_rows(args.levels, args.seed_l, seed)
    if args.format is OutputFormat.JSON:
        StatsService.write_json(rows, out)
        return EXIT_OK
    width = max((max(r.labels, default=-1) for r in rows), default=-1) + 1
    StatsService.write_csv((r.csv_row(width) for r in rows), out)
    return EXIT_OK


def _cmd_stats(args, out: IO[str]) -> int:
    service = StatsService(workers=args.workers)
    if args.conventions == "both":
        conventions = list(StrengthConvention)
    elif args.include_ordinary:
        conventions = [StrengthConvention.INCLUDE_ORDINARY]
    else:
        conventions = [StrengthConvention.EXCLUDE_ORDINARY]
    indexings = list(GenusIndexing) if args.indexing == "both" else [GenusIndexing(args.indexing)]

    if args.plot_data:
        rows = service.plot_rows(service.table(args.max_genus, with_classes=False))
        if args.format is OutputFormat.JSON:
            service.write_json(rows, out)
        else:
            service.write_csv((r.model_dump() for r in rows), out)
        return EXIT_OK

    for convention in conventions:
        table = service.table(args.max_genus, convention, with_classes=not args.report)
        if args.report:
            for indexing in indexings:
                service.write_json(service.report(table, convention, indexing), out)
        else:
            service.write_table(service.rows(table), convention, args.format, out)
    return EXIT_OK


def _cmd_verify(args, out: IO[str]) -> int:
    results = VerificationService().run(args.suite, args.max_genus)
    if args.format is OutputFormat.JSON:
        StatsService.write_json(results, out)
    else:
        for result in results:
            status = "PASS" if result.passed else "FAIL"
            print(f"{status} {result.name} (genus <= {result.max_genus}, {result.checked} checks)", file=out)
            for failure in result.failures:
                print(f"  ! {failure}", file=out)
            for note in result.notes:
                print(f"  - {note}", file=out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFICATION_FAILED


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, run one command and return the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    try:
        with _open_output(args.output) as out:
            return args.handler(args, out)
    except SemigroupError as e:
        print(f"semitree: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"I/O failure: {e}")
        print(f"semitree: error: {e}", file=sys.stderr)
        return EXIT_USAGE
