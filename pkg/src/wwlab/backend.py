"""Kernel backend selection.

The compiled extension is preferred when importable; the numpy fallback is
always available.  ``WWLAB_BACKEND`` forces the choice: ``python`` (or
``pure``) for the fallback, ``compiled`` to require the extension, anything
else (or unset) for automatic selection.
"""

from __future__ import annotations

import os


def _select():
    choice = os.environ.get("WWLAB_BACKEND", "auto").strip().lower()
    if choice in ("python", "pure", "fallback"):
        from . import _kernels_py

        return _kernels_py
    try:
        from . import _kernels  # type: ignore[attr-defined]

        return _kernels
    except ImportError:
        if choice == "compiled":
            raise RuntimeError(
                "WWLAB_BACKEND=compiled but the wwlab._kernels extension is "
                "not built; install with the C extension or unset the variable"
            ) from None
        from . import _kernels_py

        return _kernels_py


K = _select()


def available_backends() -> dict:
    """All importable kernel backends, keyed by name."""
    from . import _kernels_py

    found = {_kernels_py.NAME: _kernels_py}
    try:
        from . import _kernels  # type: ignore[attr-defined]

        found[_kernels.NAME] = _kernels
    except ImportError:
        pass
    return found
