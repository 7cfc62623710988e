"""
writers.py – CSV/JSON emission for dicke-gmc results.
Numbers are written with 17 significant digits and every file starts with the
same provenance comments, so identical runs give byte-identical files.
"""
import io
import json
import math
from pathlib import Path
from typing import Iterable, List, Sequence

import numpy as np
import pandas as pd
from loguru import logger

from dicke_gmc import __version__
from dicke_gmc.errors import DomainError
from .run_config import RunConfig

FLOAT_FORMAT = "%.17g"


def format_number(value) -> str:
    """17 significant digits for floats, plain integers, empty for missing values."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    number = float(value)
    if math.isnan(number):
        return ""
    return FLOAT_FORMAT % number


def _json_value(value):
    text = format_number(value)
    if text == "":
        return None
    if isinstance(value, (int, bool, np.integer, np.bool_)):
        return int(value)
    return float(text)


def header_lines(config: RunConfig, comments: Iterable[str] = ()) -> List[str]:
    """Provenance comments opening every output file."""
    lines = [
        f"tool-version: dicke-gmc {__version__}",
        f"command-line: {config.command_line}",
        "natural-log units (nats)",
        f"gamma: {format_number(config.gamma)}",
    ]
    lines.extend(comments)
    return lines


def output_path(config: RunConfig, filename: str) -> Path:
    """Resolve filename in the output directory, switching the suffix for JSON."""
    path = Path(config.output) / filename
    return path.with_suffix(".json") if config.fmt == "json" else path


def write_table(config: RunConfig, filename: str, columns: Sequence[str], rows: Iterable[Sequence],
                comments: Iterable[str] = ()) -> Path:
    """
    Write one table as CSV (with '# ' comment header) or JSON.

    Args:
        config (RunConfig): Run configuration (format, output directory, provenance).
        filename (str): CSV file name; '.json' replaces the suffix for JSON output.
        columns (Sequence[str]): Column names.
        rows (Iterable[Sequence]): Row values.
        comments (Iterable[str]): Extra comment lines after the provenance block.

    Returns:
        Path: The file written.
    """
    path = output_path(config, filename)
    rows = [list(row) for row in rows]
    meta = header_lines(config, comments)
    if config.fmt == "json":
        document = {
            "comments": meta,
            "columns": list(columns),
            "rows": [[_json_value(v) for v in row] for row in rows],
        }
        text = json.dumps(document, ensure_ascii=False, indent=1) + "\n"
    else:
        buffer = io.StringIO()
        for line in meta:
            buffer.write(f"# {line}\n")
        frame = pd.DataFrame(rows, columns=list(columns)).infer_objects()
        frame.to_csv(buffer, index=False, float_format=FLOAT_FORMAT, na_rep="", lineterminator="\n")
        text = buffer.getvalue()
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as e:
        logger.error(f"Cannot write {path}: {e}")
        raise DomainError(f"cannot write {path}: {e}") from e
    logger.info(f"Wrote {path} ({len(rows)} rows)")
    return path
