import logging
from pathlib import Path

from app.models import Document
from app.types import OutputFormat

logger = logging.getLogger(__name__)


def to_csv(document: Document) -> str:
    """Metadata lines, then the header and rows written by polars"""
    table = document.to_frame().write_csv(line_terminator="\n")
    return "".join(line + "\n" for line in document.to_metadata()) + table


def to_json(document: Document) -> str:
    return document.model_dump_json(indent=2) + "\n"


def render(document: Document, output_format: OutputFormat) -> str:
    match output_format:
        case OutputFormat.CSV:
            return to_csv(document)
        case OutputFormat.JSON:
            return to_json(document)


def write_document(
    document: Document, output_format: OutputFormat, path: Path | None = None
) -> str:
    """Renders the document and writes it to path when one is given"""
    text = render(document, output_format)
    if path is not None:
        path.write_text(text, encoding="utf-8", newline="\n")
        logger.info("Wrote %d rows to %s", len(document.rows), path)
    return text
