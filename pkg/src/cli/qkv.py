"""
╔══════════════════════════════════════════════════════════════════════════════╗
║                              QKV CLI                                         ║
║                                                                              ║
║  verify | dims | dump. Reports and dumps go to stdout, logs and progress     ║
║  to stderr. Exit codes: 0 all pass, 1 any fail, 2 usage error.               ║
╚══════════════════════════════════════════════════════════════════════════════╝
"""
import argparse
import json
import os
import sys
from typing import List, Optional, TextIO

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from pydantic import ValidationError
from rich import box
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from src.algebra.errors import AlgebraError
from src.algebra.killing import killing_matrix, star_operator
from src.algebra.linalg import OperatorMatrix
from src.algebra.linspaces import EVector, FVector, HVector, TVector
from src.algebra.scalars import ONE
from src.algebra.spinors import (
    MU_COMPONENTS,
    clifford_cone,
    clifford_real,
    clifford_S,
    f_real_vectors,
    mu,
    mu_components,
    spinor_space,
)
from src.config import Config
from src.utils.observability import configure_logging
from src.utils.triplets import format_triplets
from src.verification.models import Backend, NRange
from src.verification.registry import (
    CHECKS,
    CheckSpecValidationError,
    UnknownCheckError,
    dims,
    run_checks,
    specs_for,
)
from src.verification.report import FORMATS, build_report, emit_report

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

OPERATORS = ("mu",) + MU_COMPONENTS + ("killing-A", "clifford-real", "clifford-cone", "clifford-S", "star")


class UsageError(Exception):
    """Bad command-line input; maps to exit code 2."""


class QkvCLI:
    """
    Command-line front end of the verification toolkit.

    Features:
    - Registered checks over n-ranges with JSON or markdown reports
    - Rich dimension tables
    - Sparse-triplet operator dumps
    """

    def __init__(self, out: Optional[TextIO] = None, err: Optional[TextIO] = None):
        """Initialize consoles; reports are written to ``out`` verbatim."""
        self.out = out or sys.stdout
        self.console = Console(file=self.out, soft_wrap=True)
        self.err_console = Console(file=err or sys.stderr)

    # ═══════════════════════════════════════════════════════════════════════════
    # PARSER
    # ═══════════════════════════════════════════════════════════════════════════

    def build_parser(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(
            prog="qkv",
            description="Exact verification of the quaternionic Kähler Killing spinor identities.",
        )
        parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR (default: QKV_LOG_LEVEL)")
        parser.add_argument("--json-logs", action="store_true", help="emit JSON log lines on stderr")
        sub = parser.add_subparsers(dest="command", required=True)

        verify = sub.add_parser("verify", help="run registered checks")
        verify.add_argument("--check", default="all", help="check id or 'all'")
        verify.add_argument("--n", dest="n_range", default=None, help="n or a..b (default: per check)")
        verify.add_argument("--backend", choices=[b.value for b in Backend], default=Backend.EXACT.value)
        verify.add_argument("--tol", type=float, default=None, help="float backend tolerance (default: QKV_FLOAT_TOL)")
        verify.add_argument("--format", choices=FORMATS, default="json")
        verify.add_argument("--jobs", type=int, default=None, help="worker threads (default: QKV_JOBS)")
        verify.add_argument("--seed", type=int, default=None, help="seed of sampled checks (default: QKV_SEED)")
        verify.add_argument("--tuples", type=int, default=None, help="sampled tuples (default: QKV_RANDOM_TUPLES)")
        verify.add_argument("--lambda-sq-offset", type=float, default=0.0, help="perturb λ² in the Killing check")
        verify.add_argument("--list", action="store_true", help="list registered checks and exit")

        dims_p = sub.add_parser("dims", help="spinor module dimensions")
        dims_p.add_argument("--n", type=int, required=True)
        dims_p.add_argument("--format", choices=("table", "json"), default="table")

        dump = sub.add_parser("dump", help="sparse-triplet operator dump")
        dump.add_argument("--operator", choices=OPERATORS, required=True)
        dump.add_argument("--n", type=int, required=True)
        dump.add_argument("--h", choices=("p", "q"), default="p", help="H factor for μ, its components and killing-A")
        dump.add_argument("--index", type=int, default=0, help="basis vector index")
        dump.add_argument("--index2", type=int, default=1, help="second F basis index for star")
        return parser

    # ═══════════════════════════════════════════════════════════════════════════
    # COMMANDS
    # ═══════════════════════════════════════════════════════════════════════════

    def print_checks(self):
        """Display the registry."""
        table = Table(title="Registered checks", box=box.ROUNDED)
        table.add_column("Check", style="cyan", no_wrap=True)
        table.add_column("Anchor", style="magenta")
        table.add_column("Default n", justify="right")
        table.add_column("Statement", style="white")
        for d in CHECKS:
            lo, hi = d.default_range
            table.add_row(d.check_id, d.anchor, str(NRange(lo=lo, hi=hi)), d.description)
        self.console.print(table)

    def cmd_verify(self, args: argparse.Namespace) -> int:
        if args.list:
            self.print_checks()
            return EXIT_OK
        try:
            n_range = NRange.parse(args.n_range) if args.n_range else None
        except ValueError as e:
            raise UsageError(str(e)) from e
        specs = specs_for(
            args.check,
            n_range=n_range,
            backend=Backend(args.backend),
            tolerance=args.tol,
            lambda_sq_offset=args.lambda_sq_offset,
        )
        if args.jobs is not None and args.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        with self.err_console.status(f"[bold cyan]Running {len(specs)} check(s)...[/]"):
            results = run_checks(specs, jobs=args.jobs, seed=args.seed, random_tuples=args.tuples)
        self.out.write(emit_report(results, args.format))
        return EXIT_FAIL if build_report(results).any_failed else EXIT_OK

    def print_dims(self, record: dict):
        """Display the dimension record as rich tables."""
        self.console.print(Panel(
            f"[bold cyan]n = {record['n']}[/bold cyan]   parallel spinors: [bold green]{record['parallel_spinors']}[/bold green]",
            box=box.DOUBLE_EDGE,
            border_style="cyan",
        ))
        for variant in ("base", "cone"):
            entry = record[variant]
            table = Table(title=f"{variant} spinor module", box=box.ROUNDED)
            table.add_column("Summand", style="cyan")
            table.add_column("Dimension", style="green", justify="right")
            for label, d in zip(entry["labels"], entry["summands"]):
                table.add_row(label, str(d))
            table.add_row("[bold]total[/bold]", f"[bold]{entry['total']}[/bold]")
            self.console.print(table)
        table = Table(title="primitive dimensions", box=box.ROUNDED)
        table.add_column("Space", style="cyan")
        table.add_column("dim Λˢ∘ for s = 0, 1, …", style="green")
        for space, values in record["primitive"].items():
            table.add_row(space, ", ".join(str(v) for v in values))
        self.console.print(table)

    def cmd_dims(self, args: argparse.Namespace) -> int:
        record = dims(args.n)
        if args.format == "json":
            self.out.write(json.dumps(record, indent=2, ensure_ascii=False) + "\n")
        else:
            self.print_dims(record)
        return EXIT_OK

    def build_operator(self, name: str, n: int, h_name: str, index: int, index2: int) -> OperatorMatrix:
        """
        The operator requested by ``qkv dump``.

        Raises:
            UsageError: if an index is out of range
        """
        if n < 2:
            raise UsageError(f"n must be at least 2, got {n}")
        h = HVector.basis(2, "pq".index(h_name))

        def pick(limit: int, i: int) -> int:
            if not 0 <= i < limit:
                raise UsageError(f"index {i} outside 0..{limit - 1} for {name}")
            return i

        if name == "mu" or name in MU_COMPONENTS:
            e = EVector.basis(2 * n, pick(2 * n, index))
            space = spinor_space(n, "base")
            return mu(h, e, space) if name == "mu" else mu_components(h, e, space)[name]
        if name == "killing-A":
            return killing_matrix(h, EVector.basis(2 * n, pick(2 * n, index)))
        if name == "clifford-real":
            return clifford_real(TVector.real_basis(n)[pick(4 * n, index)])
        if name == "clifford-cone":
            return clifford_cone(f_real_vectors(n)[pick(4 * n + 4, index)])
        if name == "clifford-S":
            return clifford_S(f_real_vectors(n)[1 + pick(4 * n + 3, index)])
        dim_f = 2 * n + 2
        f1 = FVector.basis(dim_f, pick(dim_f, index))
        f2 = FVector.basis(dim_f, pick(dim_f, index2))
        return star_operator([(ONE, f1, f2)], spinor_space(n, "cone"))

    def cmd_dump(self, args: argparse.Namespace) -> int:
        op = self.build_operator(args.operator, args.n, args.h, args.index, args.index2)
        self.out.write(format_triplets(op))
        return EXIT_OK

    # ═══════════════════════════════════════════════════════════════════════════
    # ENTRY
    # ═══════════════════════════════════════════════════════════════════════════

    def run(self, argv: Optional[List[str]] = None) -> int:
        """Parse arguments, run the command and return the exit code."""
        parser = self.build_parser()
        try:
            args = parser.parse_args(argv)
        except SystemExit as e:
            return EXIT_OK if e.code == 0 else EXIT_USAGE

        try:
            Config.validate()
        except ValueError as e:
            self.err_console.print(f"[bold red]Configuration error:[/bold red] {e}")
            return EXIT_USAGE

        try:
            configure_logging(
                json_format=args.json_logs or Config.json_logs(),
                log_level=args.log_level or Config.QKV_LOG_LEVEL,
            )
            handler = {"verify": self.cmd_verify, "dims": self.cmd_dims, "dump": self.cmd_dump}[args.command]
            return handler(args)
        except (UsageError, UnknownCheckError, CheckSpecValidationError, ValidationError) as e:
            self.err_console.print(f"[bold red]Usage error:[/bold red] {e}")
            return EXIT_USAGE
        except (AlgebraError, ValueError) as e:
            self.err_console.print(f"[bold red]Error:[/bold red] {e}")
            return EXIT_FAIL


def main(argv: Optional[List[str]] = None):
    """Entry point for the CLI."""
    cli = QkvCLI()
    sys.exit(cli.run(argv))


if __name__ == "__main__":
    main()
