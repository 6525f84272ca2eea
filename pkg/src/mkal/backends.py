"""Selects the compiled or pure-numpy inner-kernel implementation.

The compiled extension is preferred when importable.  Set MKAL_BACKEND to
"python" or "compiled" to force a choice (forcing "compiled" when the
extension is missing raises at import).
"""

import os

from . import _kernels_py


def _load():
    forced = os.environ.get("MKAL_BACKEND", "").strip().lower()
    if forced == "python":
        return _kernels_py
    try:
        from . import _kernels
    except ImportError:
        if forced == "compiled":
            raise ImportError(
                "MKAL_BACKEND=compiled but the mkal._kernels extension is not built"
            )
        return _kernels_py
    return _kernels


_impl = _load()

BACKEND = _impl.NAME

sincos_features = _impl.sincos_features
ekd_scores = _impl.ekd_scores
ekl_scores = _impl.ekl_scores
qbc_scores = _impl.qbc_scores
emc_scores = _impl.emc_scores


def available_backends():
    """Map of backend name to implementation module, for benchmarks/tests."""
    found = {"python": _kernels_py}
    try:
        from . import _kernels
        found["compiled"] = _kernels
    except ImportError:
        pass
    return found
