"""Select the alignment kernel at import time.

The compiled extension is used when it was built; otherwise, or when
``COCKPIT_WER_PURE_PYTHON=1`` is set, the pure-Python module is used.
"""
import os
from array import array

from . import _align_py

if os.environ.get("COCKPIT_WER_PURE_PYTHON", "").strip() not in ("", "0"):
    _impl = _align_py
    BACKEND = "python"
else:
    try:
        from . import _align_ext as _impl
    except ImportError:
        _impl = _align_py
        BACKEND = "python"
    else:
        BACKEND = "cython"


def _ids(seq):
    return array("i", seq) if BACKEND == "cython" else seq


def edit_ops(ref_ids, hyp_ids):
    return _impl.edit_ops(_ids(ref_ids), _ids(hyp_ids))


def edit_distance(ref_ids, hyp_ids):
    return _impl.edit_distance(_ids(ref_ids), _ids(hyp_ids))
