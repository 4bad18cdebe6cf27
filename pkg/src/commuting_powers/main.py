from __future__ import annotations

import logging
import sys
from enum import Enum
from pathlib import Path
from typing import List, Optional

import typer

try:  # typer >= 0.26 vendors click and raises its own exception classes
    from typer import _click as click
except ImportError:  # pragma: no cover - older typer uses the click package
    import click
from rich.console import Console

from commuting_powers.core.errors import CommutingPowersError
from commuting_powers.core.settings import get_settings
from commuting_powers.service.service import EXIT_USAGE, CommandOutcome, VerificationService

app = typer.Typer(help="Check finite groups for commuting m-th and n-th powers.", no_args_is_help=True)

out = Console(soft_wrap=True)
err = Console(stderr=True, soft_wrap=True)


class OutputFormat(str, Enum):
    text = "text"
    records = "records"


def _emit(outcome: CommandOutcome, fmt: OutputFormat) -> int:
    if fmt == OutputFormat.records:
        if outcome.output:
            typer.echo(outcome.output)
    else:
        out.print(outcome.output, markup=False, highlight=False, emoji=False)
    return outcome.exit_code


def _configure_logging(level: str) -> None:
    logging.basicConfig(
        level=level,
        format="%(asctime)s [%(levelname)s] %(name)s - %(message)s",
        stream=sys.stderr,
    )


def _service() -> VerificationService:
    return VerificationService(settings=get_settings())


FormatOption = typer.Option(OutputFormat.text, "--format", help="text or records (one JSON object per line).")


@app.command()
def check(
    group: str = typer.Option(..., "--group", help="Group spec, e.g. S3, C2xC6, Heis5, @table.cayley."),
    m: int = typer.Option(..., "--m", min=1),
    n: int = typer.Option(..., "--n", min=1),
    fmt: OutputFormat = FormatOption,
    allow_non_coprime: bool = typer.Option(
        False, "--allow-non-coprime", help="Evaluate P for non-coprime m, n; theorem checks are skipped."
    ),
    timings: bool = typer.Option(False, "--timings", help="Include wall times in the output."),
) -> int:
    """Evaluate property P(m, n) and the finite-abelian statement on one group."""
    outcome = _service().check(group, m, n, fmt=fmt.value, allow_non_coprime=allow_non_coprime, timings=timings)
    return _emit(outcome, fmt)


@app.command()
def scan(
    max_order: int = typer.Option(..., "--max-order", min=1),
    pairs: str = typer.Option("2,3", "--pairs", help='Exponent pairs as "m1,n1;m2,n2".'),
    use_catalog: bool = typer.Option(
        True, "--catalog/--enumerate", help="Scan the named catalog or every enumerated isomorphism class."
    ),
    fmt: OutputFormat = FormatOption,
    workers: Optional[int] = typer.Option(None, "--workers", min=1),
    output: Optional[Path] = typer.Option(None, "--output", help="Also write one JSON record per row here."),
    timings: bool = typer.Option(False, "--timings"),
) -> int:
    """Scan many groups; exits 2 if any group satisfies P without being abelian."""
    outcome = _service().scan(
        max_order, pairs, use_catalog=use_catalog, fmt=fmt.value, workers=workers, output=output, timings=timings
    )
    for path in outcome.files:
        err.print(f"records written to {path}", markup=False, highlight=False, emoji=False)
    return _emit(outcome, fmt)


@app.command("enumerate")
def enumerate_groups(
    order: int = typer.Option(..., "--order", min=1),
    output_dir: Path = typer.Option(Path("groups"), "--output-dir", help="Directory for G<n>_<i>.cayley files."),
    fmt: OutputFormat = FormatOption,
    workers: Optional[int] = typer.Option(None, "--workers", min=1),
) -> int:
    """Write one Cayley table per isomorphism class of the given order."""
    return _emit(_service().enumerate(order, output_dir, fmt=fmt.value, workers=workers), fmt)


@app.command()
def sylow(
    group: str = typer.Option(..., "--group"),
    p: int = typer.Option(..., "--p", min=2),
    fmt: OutputFormat = FormatOption,
) -> int:
    """Compare the p-power torsion set with the Sylow p-subgroups."""
    return _emit(_service().sylow(group, p, fmt=fmt.value), fmt)


@app.command()
def decompose(
    group: str = typer.Option(..., "--group"),
    element: int = typer.Option(..., "--element", min=0),
    fmt: OutputFormat = FormatOption,
) -> int:
    """Split an element into commuting prime-power parts with a Bezout certificate."""
    return _emit(_service().decompose(group, element, fmt=fmt.value), fmt)


@app.command()
def law(
    group: str = typer.Option(..., "--group"),
    law_text: str = typer.Option(..., "--law", help='A law such as "[x^2,y^2]=1".'),
    fmt: OutputFormat = FormatOption,
    workers: Optional[int] = typer.Option(None, "--workers", min=1),
) -> int:
    """Check a group law by brute force and print the first violating assignment."""
    return _emit(_service().law(group, law_text, fmt=fmt.value, workers=workers), fmt)


@app.command()
def lattice(
    group: str = typer.Option(..., "--group"),
    fmt: OutputFormat = FormatOption,
) -> int:
    """List every subgroup with its normal and abelian flags."""
    return _emit(_service().lattice(group, fmt=fmt.value), fmt)


def run(argv: Optional[List[str]] = None) -> int:
    """Run the CLI on argv and return the exit code instead of exiting."""
    command = typer.main.get_command(app)
    try:
        # malformed environment settings exit 1 like any usage error
        _configure_logging(get_settings().log_level)
        result = command.main(args=argv, prog_name="commuting-powers", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except click.exceptions.Abort:
        return EXIT_USAGE
    except (CommutingPowersError, ValueError) as exc:
        err.print(f"error: {exc}", markup=False, highlight=False, emoji=False)
        return EXIT_USAGE
    return result if isinstance(result, int) else 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
