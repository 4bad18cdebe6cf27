"""Batch harness: evaluate the commuting-powers property over many groups and exponent pairs."""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np

from commuting_powers.core.arith import coprime
from commuting_powers.core.errors import NotCoprime
from commuting_powers.core.group import FiniteGroup
from commuting_powers.core.laws import satisfies_P
from commuting_powers.core.models import PropertyReport, ScanReport, ScanSummary
from commuting_powers.core.report_renderer import to_record
from commuting_powers.core.settings import get_settings

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


def parse_pairs(text: str) -> List[Pair]:
    """Parse "2,3;3,4" into [(2, 3), (3, 4)]."""
    pairs = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(",")
        if len(parts) != 2:
            raise ValueError(f"{chunk!r} is not an m,n pair")
        m, n = (int(p) for p in parts)
        if m < 1 or n < 1:
            raise ValueError(f"{chunk!r}: exponents must be positive")
        pairs.append((m, n))
    if not pairs:
        raise ValueError("no exponent pairs given")
    return pairs


def _scan_rows(groups: Sequence[FiniteGroup], pairs: Sequence[Pair]) -> List[PropertyReport]:
    return [satisfies_P(G, m, n) for G in groups for m, n in pairs]


def summarize(rows: Sequence[PropertyReport]) -> ScanSummary:
    summary = ScanSummary()
    for row in rows:
        if row.satisfies_p and row.is_abelian:
            summary.p_abelian += 1
        elif row.satisfies_p:
            summary.p_nonabelian += 1
        elif row.is_abelian:
            summary.not_p_abelian += 1
        else:
            summary.not_p_nonabelian += 1
    return summary


def scan(groups: Sequence[FiniteGroup], pairs: Sequence[Pair], workers: Optional[int] = None) -> ScanReport:
    for m, n in pairs:
        if not coprime(m, n):
            raise NotCoprime(f"pair ({m}, {n}) is not coprime")
    workers = workers or get_settings().scan_workers

    if workers > 1 and len(groups) > 1:
        chunks = [list(chunk) for chunk in np.array_split(np.arange(len(groups)), min(workers, len(groups)))]
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            parts = pool.map(_scan_rows, [[groups[i] for i in chunk] for chunk in chunks], [pairs] * len(chunks))
            rows = [row for part in parts for row in part]
    else:
        rows = _scan_rows(groups, pairs)

    rows.sort(key=lambda r: (r.order, r.group, r.m, r.n))
    counterexamples = [row for row in rows if row.is_counterexample]
    report = ScanReport(rows=rows, summary=summarize(rows), counterexamples=counterexamples)
    for row in counterexamples:
        logger.warning("%s satisfies P(%d, %d) but is not abelian", row.group, row.m, row.n)
    logger.info("Scanned %d groups x %d pairs: %d counterexamples", len(groups), len(pairs), len(counterexamples))
    return report


def write_scan_records(report: ScanReport, path: Path, timings: bool = False) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("".join(to_record(row, timings=timings) + "\n" for row in report.rows))
    logger.info("Wrote %d scan records to %s", len(report.rows), path)
    return path
