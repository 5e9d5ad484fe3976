"""Exception hierarchy shared by all modules.

The CLI maps these to exit codes: validation errors exit 2, resource guard
errors exit 3.
"""
import os


class MMKError(Exception):
    pass


class ValidationError(MMKError, ValueError):
    """Input data violates a mathematical precondition."""


class UsageError(MMKError, ValueError):
    """An operation was called with arguments outside its contract."""


class ResourceGuardError(MMKError, RuntimeError):
    """A desk-scale size guard was exceeded (see MMK_GUARD_LIMITS)."""


class InternalError(MMKError, AssertionError):
    """A property that the theory guarantees failed to hold."""


_DEFAULT_LIMITS = {
    "max_ambient_dim": 32,
    "max_closed_vertices": 16,
    "max_arrows": 64,
    "max_walk_steps": 10**6,
    "max_coarsen_steps": 10**4,
}


def guard_limit(name):
    """Current value of a size guard, honouring ``MMK_GUARD_LIMITS``.

    The variable holds comma-separated ``key=value`` pairs, for example
    ``MMK_GUARD_LIMITS="max_ambient_dim=64,max_closed_vertices=20"``.
    Values can only raise a guard, never lower it below the default.
    """
    limit = _DEFAULT_LIMITS[name]
    raw = os.environ.get("MMK_GUARD_LIMITS", "")
    for item in raw.split(","):
        key, _, value = item.partition("=")
        if key.strip() == name and value.strip():
            limit = max(limit, int(value))
    return limit
