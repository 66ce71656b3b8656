"""Numeric hot-loop kernels with a compiled core and a numpy fallback.

The Cython extension ``faber._kernels._fast`` is preferred when it imported
cleanly; otherwise the pure-numpy reference implementations take over.  Set
``FABER_FORCE_REFERENCE=1`` to pin the fallback (used by the benchmark and
the parity tests).
"""

import os

from . import reference

if os.environ.get("FABER_FORCE_REFERENCE") == "1":
    _impl = reference
    BACKEND = "reference"
else:
    try:
        from . import _fast as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = reference
        BACKEND = "reference"

ppoly_eval = _impl.ppoly_eval
stride2_correlate = _impl.stride2_correlate
banded_contract = _impl.banded_contract

__all__ = ["ppoly_eval", "stride2_correlate", "banded_contract", "BACKEND", "reference"]
