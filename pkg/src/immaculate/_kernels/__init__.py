"""Kernel backend selection.

The compiled ``_speedups`` extension is preferred when it imported cleanly;
otherwise the pure-Python twin ``_pure`` takes over with identical behaviour.
Set the environment variable IMMACULATE_PURE=1 to force the pure backend, for
debugging or benchmarking.
"""

from __future__ import annotations

import os

if os.environ.get("IMMACULATE_PURE", "").strip() not in ("", "0"):
    from . import _pure as _backend
else:
    try:
        from . import _speedups as _backend  # type: ignore[attr-defined]
    except ImportError:
        from . import _pure as _backend

ShapeOps = _backend.ShapeOps
BACKEND: str = _backend.BACKEND


def get_backend(name: str | None = None):
    """Kernel module by name: 'pure', 'compiled', or None for the active one.

    Asking for 'compiled' raises ImportError when the extension is missing.
    """
    if name is None or name == BACKEND:
        return _backend
    if name == "pure":
        from . import _pure

        return _pure
    if name == "compiled":
        from . import _speedups  # type: ignore[attr-defined]

        return _speedups
    raise ValueError(f"unknown backend {name!r}; expected 'pure' or 'compiled'")
