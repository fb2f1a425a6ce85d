"""Backend selection for the batch kernels.

The compiled extension is used when it imports; set ZPARTIAL_PURE_PYTHON=1
to force the pure-Python implementation.
"""
from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
pushout_verdicts = _kernels_py.pushout_verdicts

if os.environ.get("ZPARTIAL_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels
    except ImportError:  # not built
        pass
    else:
        BACKEND = "cython"
        pushout_verdicts = _kernels.pushout_verdicts

__all__ = ["BACKEND", "pushout_verdicts"]
