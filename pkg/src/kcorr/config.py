"""Global validation switch.

Release mode validates values only when they are constructed.  Debug mode
additionally re-checks closure properties after every derived operation and
cross-checks fast paths against their defining computations.  The flag is a
process-wide toggle; all algebra values themselves stay immutable.
"""

from contextlib import contextmanager

_debug_validate = False


def debug_enabled() -> bool:
    return _debug_validate


def set_debug_validation(enabled: bool) -> None:
    global _debug_validate
    _debug_validate = bool(enabled)


@contextmanager
def debug_validation(enabled: bool = True):
    """Temporarily switch expensive re-validation on (or off)."""
    global _debug_validate
    previous = _debug_validate
    _debug_validate = bool(enabled)
    try:
        yield
    finally:
        _debug_validate = previous
