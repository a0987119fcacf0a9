"""Select the compiled bitset kernels when available, else the pure-Python ones.

Set ``DVPOWER_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _bitkernels_py as python_kernels

compiled_kernels = None
if os.environ.get("DVPOWER_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _bitkernels as compiled_kernels  # type: ignore[no-redef]
    except ImportError:
        compiled_kernels = None

active = compiled_kernels if compiled_kernels is not None else python_kernels
IMPLEMENTATION = active.IMPLEMENTATION

dv_counterexamples = active.dv_counterexamples
dv_passes = active.dv_passes
rigid_relations = active.rigid_relations
principal_round_generators = active.principal_round_generators
order_pairs = python_kernels.order_pairs
