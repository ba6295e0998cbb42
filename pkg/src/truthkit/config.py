"""Enumeration caps.

``TRUTHKIT_MAX_TYPES`` overrides both type-count caps (subset enumeration
and full closure enumeration). The morphism search cap is fixed.
"""
import os

from .errors import SizeCapExceeded

SUBSET_CAP = 12
CLOSURE_CAP = 6
MORPHISM_SEARCH_CAP = 10**6

ENV_VAR = "TRUTHKIT_MAX_TYPES"


def _override() -> int | None:
    raw = os.environ.get(ENV_VAR)
    if raw is None or raw.strip() == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise SizeCapExceeded(f"{ENV_VAR} must be an integer, got {raw!r}") from None
    return max(value, 0)


def subset_cap() -> int:
    o = _override()
    return SUBSET_CAP if o is None else o


def closure_cap() -> int:
    o = _override()
    return CLOSURE_CAP if o is None else o


def require_subset_enumerable(n_types: int, what: str = "subset enumeration") -> None:
    cap = subset_cap()
    if n_types > cap:
        raise SizeCapExceeded(f"{what}: {n_types} types exceeds cap {cap}")


def require_closure_enumerable(n_types: int, what: str = "closure enumeration") -> None:
    cap = closure_cap()
    if n_types > cap:
        raise SizeCapExceeded(f"{what}: {n_types} types exceeds cap {cap} (4^n sequents)")
