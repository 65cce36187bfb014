"""Kernel backend selection.

Imports the compiled extension when available, falling back to the pure
Python implementation. Set RMGA_PURE_PYTHON=1 to force the fallback
(used by the backend benchmark and for debugging).
"""

import os

if os.environ.get("RMGA_PURE_PYTHON"):
    from rmga._kernels import _pykernels as impl
else:
    try:
        from rmga._kernels import _ckernels as impl  # type: ignore[no-redef]
    except ImportError:
        from rmga._kernels import _pykernels as impl  # type: ignore[no-redef]

BACKEND = impl.BACKEND
FOXHOLE_A1 = impl.FOXHOLE_A1
FOXHOLE_A2 = impl.FOXHOLE_A2
GRID_CODES = impl.GRID_CODES

eval_f1 = impl.eval_f1
eval_f2 = impl.eval_f2
eval_f3 = impl.eval_f3
eval_f4_noise_free = impl.eval_f4_noise_free
eval_f4_noisy = impl.eval_f4_noisy
eval_f5 = impl.eval_f5
eval_beale = impl.eval_beale
eval_quad = impl.eval_quad
grid_scan = impl.grid_scan
