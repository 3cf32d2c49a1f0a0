"""CSV and JSON report writers."""

import csv
import json
import math
import os
from collections.abc import Sequence
from typing import Any

from src.utils.exceptions import ReportException
from src.utils.logging import get_logger

logger = get_logger("reporting")


def _encode(value: Any) -> Any:
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if isinstance(value, dict):
        return {key: _encode(v) for key, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    return value


def _fieldnames(rows: Sequence[dict[str, Any]]) -> list[str]:
    names: list[str] = []
    for row in rows:
        names.extend(key for key in row if key not in names)
    return names


def write_report(
    rows: Sequence[dict[str, Any]],
    path: str,
    output_format: str = "csv",
    config: dict[str, Any] | None = None,
    summary: dict[str, Any] | None = None,
) -> list[str]:
    """Write ``rows`` as CSV with a ``<path>.config.json`` sidecar, or as a single JSON document.

    Returns:
        The paths written
    """
    if output_format not in ("csv", "json"):
        raise ReportException(path, f"unknown format '{output_format}'")
    meta = {"config": _encode(config or {}), "summary": _encode(summary or {})}
    try:
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        if output_format == "json":
            with open(path, "w", encoding="utf-8") as file:
                json.dump({**meta, "rows": _encode(list(rows))}, file, indent=2)
            written = [path]
        else:
            with open(path, "w", encoding="utf-8", newline="") as file:
                writer = csv.DictWriter(file, fieldnames=_fieldnames(rows))
                writer.writeheader()
                for row in rows:
                    writer.writerow({key: "" if value is None else _encode(value) for key, value in row.items()})
            sidecar = f"{path}.config.json"
            with open(sidecar, "w", encoding="utf-8") as file:
                json.dump(meta, file, indent=2)
            written = [path, sidecar]
    except OSError as e:
        raise ReportException(path, str(e)) from e
    logger.info(f"Wrote {len(rows)} rows to {path}")
    return written
