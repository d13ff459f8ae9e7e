"""Backend selection for the weight kernel.

The compiled extension is preferred when importable; otherwise the NumPy
fallback takes over transparently. LEVELSCOPE_BACKEND=python|compiled
forces the choice (the compiled value raises if the extension is missing,
rather than silently handing back the fallback).
"""

from __future__ import annotations

import os

from . import _fockcore_py

_FORCED = os.environ.get("LEVELSCOPE_BACKEND")

if _FORCED == "python":
    _impl = _fockcore_py
elif _FORCED == "compiled":
    from . import _fockcore as _impl  # type: ignore[no-redef]
elif _FORCED in (None, ""):
    try:
        from . import _fockcore as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _fockcore_py
else:
    raise RuntimeError(
        f"LEVELSCOPE_BACKEND={_FORCED!r} not understood (use 'python' or 'compiled')"
    )

BACKEND = _impl.BACKEND
fock_weight_block = _impl.fock_weight_block


def available_backends() -> dict[str, object]:
    """Map of importable backend name -> module (for benchmarks and tests)."""
    found: dict[str, object] = {"python": _fockcore_py}
    try:
        from . import _fockcore

        found["compiled"] = _fockcore
    except ImportError:
        pass
    return found
