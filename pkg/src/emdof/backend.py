"""Execution backend selection.

Hot pairwise loops are compiled with numba when it is importable and the
environment flag EMDOF_DISABLE_NUMBA is not set; otherwise a vectorized
pure-numpy path is used. Both paths implement the same formulas and are
compared in the test suite and in benchmarks/bench_assembly.py.
"""

import os

_FLAG = "EMDOF_DISABLE_NUMBA"


def _flag_set() -> bool:
    return os.environ.get(_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}


try:
    import numba  # noqa: F401

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba installed
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _flag_set()


def backend_name() -> str:
    """Name of the active pairwise-assembly backend: 'numba' or 'numpy'."""
    return "numba" if USE_NUMBA else "numpy"
