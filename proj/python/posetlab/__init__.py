"""Persistence modules over finite posets: intervals, the four functors of an
interior system, interval covers and resolutions, and resolution global
dimensions."""

try:
    from _posetlab import *  # noqa: F401,F403  (module built next to the package)
except ImportError:  # pragma: no cover - installed layout
    from ._posetlab import *  # noqa: F401,F403
