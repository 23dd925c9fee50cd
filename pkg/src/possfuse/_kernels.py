"""Backend selection for the numeric kernels.

The hot inner loops (pivot root solves, Irwin-Hall sums, alpha-cut scans)
run through numba-compiled kernels by default, with a pure-NumPy fallback.
``POSSFUSE_BACKEND`` controls the choice:

    auto   (default) numba when importable, NumPy otherwise
    numba  require numba, fail loudly if missing
    numpy  force the pure-NumPy implementations

``POSSFUSE_THREADS`` optionally caps the numba thread pool. The kernels are
single-stream deterministic either way; the cap only limits resources.
"""

from __future__ import annotations

import os

_choice = os.environ.get("POSSFUSE_BACKEND", "auto").strip().lower()
if _choice not in ("auto", "numba", "numpy"):
    raise RuntimeError(
        f"POSSFUSE_BACKEND={_choice!r} not understood; use auto, numba or numpy"
    )

_impl = None
if _choice in ("auto", "numba"):
    try:
        from . import _backend_numba as _impl  # noqa: F401
    except ImportError:
        if _choice == "numba":
            raise
        _impl = None

if _impl is None:
    from . import _backend_numpy as _impl  # noqa: F401

BACKEND = "numba" if _impl.__name__.endswith("_backend_numba") else "numpy"

if BACKEND == "numba":
    _threads = os.environ.get("POSSFUSE_THREADS")
    if _threads:
        import numba

        try:
            cap = max(1, min(int(_threads), numba.config.NUMBA_NUM_THREADS))
            numba.set_num_threads(cap)
        except ValueError:
            raise RuntimeError(f"POSSFUSE_THREADS={_threads!r} is not an integer")


def backend_name() -> str:
    """Name of the active kernel backend ('numba' or 'numpy')."""
    return BACKEND


erf_vec = _impl.erf_vec
normal_cdf_vec = _impl.normal_cdf_vec
irwin_hall_cdf_vec = _impl.irwin_hall_cdf_vec
irwin_hall_pdf_vec = _impl.irwin_hall_pdf_vec
gamma_upper_vec = _impl.gamma_upper_vec
pivot_roots_vec = _impl.pivot_roots_vec
pivot_prob_vec = _impl.pivot_prob_vec
alpha_cut_measures_vec = _impl.alpha_cut_measures_vec
