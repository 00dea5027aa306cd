"""Enumeration caps for exhaustive computations."""

import os

DEFAULT_ENUMERATION_CAP = 10**6
DEFAULT_PAIR_CAP = 10**8


def enumeration_cap() -> int:
    """Default cap on field/group sizes; ``ECX_CAP`` in the environment overrides it."""
    raw = os.environ.get("ECX_CAP")
    if raw is None or raw.strip() == "":
        return DEFAULT_ENUMERATION_CAP
    cap = int(raw)
    if cap <= 0:
        raise ValueError(f"ECX_CAP must be positive, got {raw!r}")
    return cap
