from pathlib import Path
from typing import Mapping, Sequence

import numpy as np
import polars as pl
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.types import OutputFormat
from physics.verify import CheckResult

"""
MODEL STRUCTURE
RunConfig:
    one parsed invocation (subcommand, its parameters, where the output goes)

Grid:
    an evenly spaced sweep requested with --*-min/--*-max/--points

Document:
    what every subcommand emits: params (provenance), columns, rows

NOTE:
1. Cells are JSON scalars; None is written as null (JSON) or an empty field (CSV)
2. floats are written with 17 significant digits in CSV and shortest repr in JSON,
   both of which round-trip exactly
"""

Scalar = float | int | str | bool | None

FLOAT_FORMAT = "%.17g"


## RUN MODELS
class Grid(BaseModel):
    model_config = ConfigDict(frozen=True)

    start: float = Field(allow_inf_nan=False)
    stop: float = Field(allow_inf_nan=False)
    count: int = Field(ge=1)

    @model_validator(mode="after")
    def _check_order(self) -> "Grid":
        if self.count > 1 and not self.stop > self.start:
            raise ValueError(
                f"Grid end '{self.stop}' must exceed its start '{self.start}'"
            )
        return self

    def points(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


class RunConfig(BaseModel):
    subcommand: str
    parameters: dict[str, Scalar] = Field(default_factory=dict)
    output_format: OutputFormat = OutputFormat.JSON
    output_path: Path | None = None
    grid: Grid | None = None


## DOCUMENT MODELS
def _cell(value: Scalar) -> str:
    match value:
        case None:
            return ""
        case bool():
            return "true" if value else "false"
        case float():
            return FLOAT_FORMAT % value
        case _:
            return str(value)


class Document(BaseModel):
    params: dict[str, Scalar]
    columns: list[str]
    rows: list[list[Scalar]]

    @model_validator(mode="after")
    def _check_rows(self) -> "Document":
        for index, row in enumerate(self.rows):
            if len(row) != len(self.columns):
                raise ValueError(
                    f"Row '{index}' has '{len(row)}' cells for "
                    f"'{len(self.columns)}' columns"
                )
        return self

    @staticmethod
    def from_record(
        params: Mapping[str, Scalar], record: Mapping[str, Scalar]
    ) -> "Document":
        return Document(
            params=dict(params),
            columns=list(record),
            rows=[[_scalar(value) for value in record.values()]],
        )

    @staticmethod
    def from_columns(
        params: Mapping[str, Scalar], columns: Mapping[str, Sequence[Scalar]]
    ) -> "Document":
        return Document(
            params=dict(params),
            columns=list(columns),
            rows=[
                [_scalar(value) for value in row] for row in zip(*columns.values())
            ],
        )

    def to_frame(self) -> pl.DataFrame:
        """Every cell as its fixed textual form, in column order"""
        return pl.DataFrame(
            {
                name: [
                    None if row[index] is None else _cell(row[index])
                    for row in self.rows
                ]
                for index, name in enumerate(self.columns)
            },
            schema={name: pl.String for name in self.columns},
        )

    def to_metadata(self) -> list[str]:
        return [f"# {key}={_cell(value)}" for key, value in self.params.items()]


def _scalar(value: object) -> Scalar:
    """numpy scalars to their Python equivalents"""
    if isinstance(value, np.generic):
        return value.item()
    return value  # type: ignore[return-value]


## VERIFY MODELS
class CheckReport(BaseModel):
    suite: str
    passed: bool
    checks: list[CheckResult]

    @staticmethod
    def from_checks(suite: str, checks: Sequence[CheckResult]) -> "CheckReport":
        return CheckReport(
            suite=suite,
            passed=all(check.passed for check in checks),
            checks=list(checks),
        )

    def to_document(self) -> Document:
        return Document(
            params={"suite": self.suite, "passed": self.passed},
            columns=["suite", "name", "passed", "measured", "limit"],
            rows=[
                [check.suite, check.name, check.passed, check.measured, check.limit]
                for check in self.checks
            ],
        )
