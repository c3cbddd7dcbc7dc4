import logging
from contextlib import contextmanager
from pathlib import Path
from typing import Annotated, Iterator

import typer
from pydantic import ValidationError

from app.models import Document, RunConfig
from app.types import OutputFormat
from physics.errors import NonConvergence, ZeroPointError
from process.write import write_document

logger = logging.getLogger(__name__)

EXIT_VERIFY_FAILED = 1
EXIT_VALIDATION = 2
EXIT_NON_CONVERGENCE = 3

OutputOption = Annotated[
    Path | None,
    typer.Option(
        "--output", "-o", help="Write the document here instead of stdout."
    ),
]
FormatOption = Annotated[
    OutputFormat, typer.Option("--format", "-f", help="Document format.")
]
PointsOption = Annotated[
    int, typer.Option("--points", min=1, help="Number of grid points.")
]


@contextmanager
def translate_errors() -> Iterator[None]:
    """Maps library failures to exit codes: validation 2, non-convergence 3"""
    try:
        yield
    except NonConvergence as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(code=EXIT_NON_CONVERGENCE) from e
    except (ZeroPointError, ValidationError) as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(code=EXIT_VALIDATION) from e


def emit(
    ctx: typer.Context,
    document: Document,
    output_format: OutputFormat,
    output: Path | None,
) -> None:
    config = RunConfig(
        subcommand=ctx.info_name or "",
        parameters=document.params,
        output_format=output_format,
        output_path=output,
    )
    logger.debug("Emitting %s", config.model_dump_json())
    text = write_document(document, config.output_format, config.output_path)
    if config.output_path is None:
        typer.echo(text, nl=False)
