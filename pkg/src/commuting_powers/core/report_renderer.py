from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Dict

from jinja2 import Environment, FileSystemLoader, StrictUndefined
from pydantic import BaseModel

logger = logging.getLogger(__name__)

TIMING_FIELDS = {"wall_time_ms"}


def powers_word(exponent: int) -> str:
    return {1: "elements", 2: "squares", 3: "cubes"}.get(exponent, f"{exponent}-th powers")


def yes_no(flag: bool) -> str:
    return "true" if flag else "false"


def _strip_timings(value: Any) -> Any:
    if isinstance(value, dict):
        return {k: _strip_timings(v) for k, v in value.items() if k not in TIMING_FIELDS}
    if isinstance(value, list):
        return [_strip_timings(v) for v in value]
    return value


def to_record(model: BaseModel | Dict[str, Any], timings: bool = False, **extra: Any) -> str:
    """One line of machine output: sorted-key JSON, wall times dropped unless asked for."""
    data = model.dict() if isinstance(model, BaseModel) else dict(model)
    if not timings:
        data = _strip_timings(data)
    data.update(extra)
    return json.dumps(data, sort_keys=True)


class ReportRenderer:
    """Render human-readable reports from verdicts and reports using Jinja2 templates."""

    def __init__(self, template_dir: Path | None = None):
        template_path = template_dir or Path(__file__).resolve().parent.parent / "templates"
        self.env = Environment(
            loader=FileSystemLoader(str(template_path)),
            autoescape=False,
            undefined=StrictUndefined,
            trim_blocks=True,
            lstrip_blocks=True,
            keep_trailing_newline=False,
        )
        self.env.filters["powers"] = powers_word
        self.env.filters["yn"] = yes_no

    def render(self, template_name: str, **context: Any) -> str:
        template = self.env.get_template(template_name)
        logger.debug("Rendering %s", template_name)
        return template.render(**context).rstrip("\n")
