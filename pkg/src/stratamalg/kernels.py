"""Backend selection for the order kernels.

The compiled extension is used when it imports; otherwise the pure-Python
module is.  Set ``STRATAMALG_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("STRATAMALG_PURE"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _kernels_py

BACKEND = "python" if _impl is _kernels_py else "compiled"

OK, FAIL, EXHAUSTED = _kernels_py.OK, _kernels_py.FAIL, _kernels_py.EXHAUSTED

closure = _impl.closure
antisymmetry_violations = _impl.antisymmetry_violations
cover_pairs = _impl.cover_pairs
chain_heights = _impl.chain_heights
order_violation = _impl.order_violation
reflect_violation = _impl.reflect_violation
universal_check = _impl.universal_check


def backends() -> dict:
    """All importable backends by name, for tests and benchmarks."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels  # type: ignore[attr-defined]
    except ImportError:  # pragma: no cover
        pass
    else:
        out["compiled"] = _kernels
    return out
