"""Plain-text Cayley table files.

    # name: S3        (optional, first line only)
    6
    0 1 2 3 4 5
    ...
"""
from __future__ import annotations

import logging
from pathlib import Path
from typing import List, Optional

from commuting_powers.core.errors import CayleyFileError
from commuting_powers.core.group import FiniteGroup, from_cayley_table

logger = logging.getLogger(__name__)

NAME_PREFIX = "# name:"


def format_cayley(G: FiniteGroup) -> str:
    lines = [f"{NAME_PREFIX} {G.name}", str(G.order)]
    lines.extend(" ".join(str(v) for v in row) for row in G.rows)
    return "\n".join(lines) + "\n"


def parse_cayley(text: str, default_name: str = "G") -> FiniteGroup:
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    name: Optional[str] = None
    if lines and lines[0].startswith(NAME_PREFIX):
        name = lines.pop(0)[len(NAME_PREFIX):].strip()
    if not lines:
        raise CayleyFileError("missing order line")
    try:
        n = int(lines[0])
        rows: List[List[int]] = [[int(tok) for tok in line.split()] for line in lines[1:]]
    except ValueError as exc:
        raise CayleyFileError(f"non-integer token: {exc}") from exc
    if n < 1 or len(rows) != n or any(len(row) != n for row in rows):
        raise CayleyFileError(f"expected {n} rows of {n} entries")
    return from_cayley_table(rows, name=name or default_name)


def read_cayley_file(path: Path) -> FiniteGroup:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise CayleyFileError(f"cannot read {path}: {exc}") from exc
    return parse_cayley(text, default_name=path.stem)


def write_cayley_file(G: FiniteGroup, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_cayley(G))
    logger.info("Wrote %s (order %d) to %s", G.name, G.order, path)
    return path
