"""Process-wide effort bounds. The CLI overrides these from its flags."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class Settings:
    mr_rounds: int = 40
    rho_iterations: int = 10_000_000
    cf_bound: int = 100_000_000
    # maximum number of terms examined by a single arithmetic-progression scan
    search_bound: int = 10_000_000


settings = Settings()
