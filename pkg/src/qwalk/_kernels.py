"""Pick the compiled kernels when available, else the numpy fallback."""

import os

from . import _pykernels

if os.environ.get("QWALK_PURE_PYTHON"):
    kernels = _pykernels
else:
    try:
        from . import _ckernels as kernels
    except ImportError:  # extension not built
        kernels = _pykernels

IMPLEMENTATION = kernels.IMPLEMENTATION
