"""Backend selection for the hot kernels.

numba is used when importable, unless the environment variable
``COHBOUND_NO_NUMBA`` is set to anything other than 0/false/no, in which
case the vectorized numpy fallbacks take over. The decision is made once
at import time.
"""

import os


def env_disabled() -> bool:
    val = os.environ.get("COHBOUND_NO_NUMBA", "")
    return val.strip().lower() not in ("", "0", "false", "no")


NUMBA_AVAILABLE = False
if not env_disabled():
    try:
        import numba  # noqa: F401

        NUMBA_AVAILABLE = True
    except ImportError:
        NUMBA_AVAILABLE = False

USE_NUMBA = NUMBA_AVAILABLE


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
