from __future__ import annotations

import os
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, validator

ENUMERATION_HARD_CEILING = 16
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Settings(BaseModel):
    group_order_cap: int = 48  # subgroup lattice, isomorphism, Sylow search
    closure_element_cap: int = 10080  # permutation closure, products, catalog
    enumeration_order_cap: int = 12
    law_evaluation_budget: int = 10_000_000
    scan_workers: int = 1
    log_level: str = "INFO"

    class Config:
        frozen = True

    @validator("enumeration_order_cap")
    def enumeration_cap_in_range(cls, v: int) -> int:
        if not 1 <= v <= ENUMERATION_HARD_CEILING:
            raise ValueError(f"enumeration_order_cap must lie in [1, {ENUMERATION_HARD_CEILING}], got {v}")
        return v

    @validator("group_order_cap", "closure_element_cap", "law_evaluation_budget", "scan_workers")
    def positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("caps, budgets and worker counts must be positive")
        return v

    @validator("log_level")
    def known_level(cls, v: str) -> str:
        level = v.upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"log_level must be one of {', '.join(LOG_LEVELS)}, got {v!r}")
        return level


@lru_cache()
def get_settings() -> Settings:
    load_dotenv()
    return Settings(
        group_order_cap=int(os.getenv("GROUP_ORDER_CAP", "48")),
        closure_element_cap=int(os.getenv("CLOSURE_ELEMENT_CAP", "10080")),
        enumeration_order_cap=int(os.getenv("ENUMERATION_ORDER_CAP", "12")),
        law_evaluation_budget=int(os.getenv("LAW_EVALUATION_BUDGET", "10000000")),
        scan_workers=int(os.getenv("SCAN_WORKERS", "1")),
        log_level=os.getenv("LOG_LEVEL", "INFO"),
    )
