"""Kernel selection: compiled extension if importable, else pure Python.

Set SUQDIRAC_PURE_PYTHON=1 to force the fallback.
"""
import os

from . import _pykernels

kernels = _pykernels
NAME = "python"

if os.environ.get("SUQDIRAC_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as kernels  # noqa: F811
        NAME = "cython"
    except ImportError:
        pass

log_qint = kernels.log_qint
link_square = kernels.link_square
terminal_square = kernels.terminal_square
cg_log = kernels.cg_log
