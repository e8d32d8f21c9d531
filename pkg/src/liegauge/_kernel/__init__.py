"""Kernel backend selection.

The compiled Cython kernel is used when it has been built; otherwise the
pure-Python twin takes over.  Set ``LIEGAUGE_PURE=1`` to force the fallback
(used by the parity tests and the benchmark).
"""

import os

if os.environ.get("LIEGAUGE_PURE"):
    from . import _termops_py as _impl
else:
    try:
        from . import _termops_cy as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _termops_py as _impl

BACKEND = _impl.BACKEND
mono_mul = _impl.mono_mul
terms_add = _impl.terms_add
terms_sub = _impl.terms_sub
terms_neg = _impl.terms_neg
terms_scale = _impl.terms_scale
terms_mul = _impl.terms_mul
terms_derive = _impl.terms_derive
