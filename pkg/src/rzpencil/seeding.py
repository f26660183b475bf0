"""Seed handling.  Every random draw in the package starts from here."""

import os

DEFAULT_SEED = 20240607
SEED_ENV = "RZPENCIL_SEED"


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_SEED
    return int(raw)


def resolve_seed(seed: int | None) -> int:
    return default_seed() if seed is None else int(seed)
