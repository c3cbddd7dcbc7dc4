from typing import Annotated

import typer

from app.cli.common import (
    EXIT_VERIFY_FAILED,
    FormatOption,
    OutputOption,
    emit,
    translate_errors,
)
from app.models import CheckReport
from app.types import OutputFormat, VerifySuite
from physics.verify import run_suite

router = typer.Typer()


@router.command(
    "verify",
    help=(
        "Run an invariant suite and report every property with its measured "
        "deviation and limit. Exits 1 when any check fails."
    ),
)
def verify(
    ctx: typer.Context,
    suite: Annotated[VerifySuite, typer.Argument(help="Suite to run.")] = (
        VerifySuite.ALL
    ),
    output_format: FormatOption = OutputFormat.CSV,
    output: OutputOption = None,
):
    with translate_errors():
        report = CheckReport.from_checks(suite.value, run_suite(suite.value))
    emit(ctx, report.to_document(), output_format, output)
    if not report.passed:
        failed = [check.name for check in report.checks if not check.passed]
        typer.echo(f"Failed checks: {', '.join(failed)}", err=True)
        raise typer.Exit(code=EXIT_VERIFY_FAILED)
