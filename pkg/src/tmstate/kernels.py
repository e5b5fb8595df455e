"""Hot loops, served by the compiled extension when it is importable.

``hopcroft``, ``sweep`` and ``residual_row`` are rebound by ``use_backend``;
call them through this module (``kernels.hopcroft(...)``) so a switch takes
effect everywhere.
"""

from __future__ import annotations

import logging
from types import ModuleType

from tmstate import _pykernels

log = logging.getLogger(__name__)

try:
    from tmstate import _ckernels
except ImportError:  # extension not built
    _ckernels = None
    log.debug("compiled kernels unavailable, using pure Python")

BACKENDS: dict[str, ModuleType] = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

_active: ModuleType = _ckernels if _ckernels is not None else _pykernels
hopcroft = _active.hopcroft
sweep = _active.sweep
residual_row = _active.residual_row


def backend() -> str:
    return _active.NAME


def use_backend(name: str) -> str:
    """Switch kernels to ``name`` ("cython" or "python"); returns the previous name."""
    global _active, hopcroft, sweep, residual_row
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} not available; have {sorted(BACKENDS)}")
    previous = _active.NAME
    _active = BACKENDS[name]
    hopcroft = _active.hopcroft
    sweep = _active.sweep
    residual_row = _active.residual_row
    return previous
