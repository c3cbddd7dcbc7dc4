import logging
import os
import sys
from pathlib import Path
from typing import Annotated

import typer
from dotenv import load_dotenv
from pydantic import ValidationError

from app.cli.common import EXIT_VALIDATION
from app.types import LogLevel
from process.read import read_config

from .blackbody import router as blackbody
from .maxwell import router as maxwell
from .twoslit import router as twoslit
from .vacuum import router as vacuum
from .verify import router as verify

LOG_LEVEL_ENV = "ZPO_LOG_LEVEL"
LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"

app = typer.Typer(
    name="zero-point-optics",
    help=(
        "Numerical library and command line for zero-point radiation physics. "
        "It covers single-mode Planck energetics with and without the zero-point "
        "term, the regularized vacuum energy of a charged field in a magnetic "
        "field, pair-production rates in an electric field, the spin-1 operator "
        "algebra of the Maxwell field and two-slit photon diffraction with a "
        "brute-force integral oracle. Every command emits one CSV or JSON "
        "document; `verify` runs the invariant suites."
    ),
    no_args_is_help=True,
    pretty_exceptions_enable=False,
)


@app.callback()
def startup(
    ctx: typer.Context,
    log_level: Annotated[
        LogLevel | None,
        typer.Option(help=f"Log level; defaults to ${LOG_LEVEL_ENV} or WARNING."),
    ] = None,
    config: Annotated[
        Path | None,
        typer.Option(
            exists=True,
            dir_okay=False,
            help="Flat JSON parameter file; flags given on the command line win.",
        ),
    ] = None,
):
    load_dotenv()
    level = log_level or LogLevel.from_str(os.getenv(LOG_LEVEL_ENV))
    logging.basicConfig(
        level=level.value, format=LOG_FORMAT, stream=sys.stderr, force=True
    )
    if config is not None and ctx.invoked_subcommand is not None:
        try:
            ctx.default_map = {ctx.invoked_subcommand: read_config(config)}
        except ValidationError as e:
            typer.echo(
                f"Error: config '{config}' is not a flat JSON object\n{e}", err=True
            )
            raise typer.Exit(code=EXIT_VALIDATION) from e


def include_router(router: typer.Typer) -> None:
    app.registered_commands.extend(router.registered_commands)


include_router(blackbody)
include_router(vacuum)
include_router(maxwell)
include_router(twoslit)
include_router(verify)


def main() -> None:
    app()
