"""Selects the compiled kernels when available, the NumPy ones otherwise.

Set ``CHARTESTS_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

python_kernels = _pykernels

if os.environ.get("CHARTESTS_PURE_PYTHON") == "1":
    kernels = _pykernels
    compiled_kernels = None
else:
    try:
        from . import _ckernels as compiled_kernels
    except ImportError:
        compiled_kernels = None
        kernels = _pykernels
    else:
        kernels = compiled_kernels

NAME = kernels.NAME
