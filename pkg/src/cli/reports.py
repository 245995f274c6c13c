"""
CSV Reports.

Every output file starts with ``# key=value`` lines (tool version, resolved
parameters, base seed) followed by a header row and the data rows. Analytic
reports contain no timestamps, so re-running a command reproduces the file
byte for byte.
"""
from __future__ import annotations

import csv
import io
import logging
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence

from pydantic import BaseModel, Field

from src import __version__
from src.sim.monte_carlo import MetricSummary

logger = logging.getLogger(__name__)


class SummaryRow(BaseModel):
    """One Monte Carlo metric as written to a simulation report."""

    metric: str = Field(..., min_length=1, description="Metric name.")
    mean: float = Field(..., description="Sample mean over replicas.")
    std: float = Field(..., ge=0.0, description="Sample standard deviation.")
    ci_lo: float = Field(..., description="Lower end of the 95% interval.")
    ci_hi: float = Field(..., description="Upper end of the 95% interval.")
    replicas: int = Field(..., ge=2, description="Replicas aggregated.")
    base_seed: int = Field(..., ge=0, description="Root seed of the campaign.")


def format_csv(
    rows: Sequence[Mapping[str, object]],
    metadata: Optional[Mapping[str, object]] = None,
    fieldnames: Optional[Sequence[str]] = None,
) -> str:
    """
    Render rows as CSV text with a metadata preamble.

    Args:
        rows: Data rows; keys missing from a row are written empty
        metadata: Extra ``# key=value`` lines after the version line
        fieldnames: Column order (union of row keys in first-seen order if omitted)

    Returns:
        CSV text
    """
    if fieldnames is None:
        fieldnames = []
        for row in rows:
            fieldnames.extend(k for k in row if k not in fieldnames)

    buffer = io.StringIO()
    buffer.write(f"# version={__version__}\n")
    for key, value in (metadata or {}).items():
        buffer.write(f"# {key}={value}\n")
    writer = csv.DictWriter(buffer, fieldnames=list(fieldnames), restval="", lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()


def write_csv(
    path: Path,
    rows: Sequence[Mapping[str, object]],
    metadata: Optional[Mapping[str, object]] = None,
    fieldnames: Optional[Sequence[str]] = None,
) -> Path:
    """Write rows to ``path`` (parents created) and return the path."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        f.write(format_csv(rows, metadata, fieldnames))
    logger.info("Exported %d rows to %s", len(rows), path)
    return path


def summary_rows(
    summaries: Mapping[str, MetricSummary],
    base_seed: int,
    params: Optional[Mapping[str, object]] = None,
) -> List[Dict[str, object]]:
    """One row per metric: the given parameters followed by the summary columns."""
    rows = []
    for metric, summary in summaries.items():
        checked = SummaryRow(metric=metric, base_seed=base_seed, **summary.to_row())
        row: Dict[str, object] = dict(params or {})
        row.update(checked.model_dump())
        rows.append(row)
    return rows


def read_csv(path: Path) -> tuple[Dict[str, str], List[Dict[str, str]]]:
    """Read a report back as (metadata, rows)."""
    metadata: Dict[str, str] = {}
    body: List[str] = []
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            if line.startswith("# ") and not body:
                key, _, value = line[2:].rstrip("\n").partition("=")
                metadata[key] = value
            else:
                body.append(line)
    return metadata, list(csv.DictReader(body))


def print_rows(rows: Iterable[Mapping[str, object]], columns: Sequence[str]) -> None:
    """Print selected columns as an aligned table."""
    widths = [max(len(c), 12) for c in columns]
    print("  ".join(c.rjust(w) for c, w in zip(columns, widths)))
    for row in rows:
        cells = []
        for c, w in zip(columns, widths):
            value = row.get(c, "")
            text = f"{value:.6g}" if isinstance(value, float) else str(value)
            cells.append(text.rjust(w))
        print("  ".join(cells))
