"""
Output utilities for CSV tables and verification reports.
"""

import io
import logging
import os
import sys
from typing import IO, Any, Iterable, List, Mapping, Optional, Sequence

logger = logging.getLogger(__name__)


def format_value(value: Any) -> str:
    """Render one cell; floats use 15 significant digits so output is stable."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.15g}"
    return str(value)


def render_table(rows: Iterable[Mapping[str, Any]],
                 columns: Sequence[str],
                 header_lines: Optional[List[str]] = None) -> str:
    """
    Render rows as CSV text with a ``#``-prefixed header block.

    Args:
        rows: Row mappings; missing keys become empty cells
        columns: Column order
        header_lines: Free-form header lines, each written as ``# line``

    Returns:
        The CSV document as a string
    """
    buffer = io.StringIO()
    for line in header_lines or []:
        buffer.write(f"# {line}\n")
    buffer.write(",".join(columns) + "\n")
    for row in rows:
        buffer.write(",".join(format_value(row.get(col)) for col in columns) + "\n")
    return buffer.getvalue()


def write_text(text: str, path: Optional[str] = None, stream: Optional[IO[str]] = None):
    """
    Write rendered output to a file, or to ``stream`` (stdout by default).

    Args:
        text: Document to write
        path: Output file path; parent directories are created
        stream: Stream used when no path is given
    """
    if path:
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, "w", newline="\n") as f:
            f.write(text)
        logger.info("Saved output to %s", path)
    else:
        (stream or sys.stdout).write(text)


def header_block(version: str, config_digest: str, command: str,
                 warnings: Optional[List[str]] = None) -> List[str]:
    """Standard header lines: tool version, config hash, command, regime warnings."""
    lines = [
        f"eigenladder {version}",
        f"command: {command}",
        f"config_hash: {config_digest}",
    ]
    for warning in warnings or []:
        lines.append(f"warning: {warning}")
    return lines


def write_table(rows: Iterable[Mapping[str, Any]],
                columns: Sequence[str],
                path: Optional[str] = None,
                header_lines: Optional[List[str]] = None,
                stream: Optional[IO[str]] = None) -> str:
    """Render a CSV table and write it; returns the rendered text."""
    text = render_table(rows, columns, header_lines)
    write_text(text, path, stream)
    return text
