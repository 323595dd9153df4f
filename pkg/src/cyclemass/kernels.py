"""Hot-loop kernels, compiled when available.

The compiled module is used unless it failed to build or the environment
variable ``CYCLEMASS_PURE`` is set to a non-empty value other than ``0``.
``BACKEND`` names the active implementation.
"""

import os

from . import _purepy

BACKENDS = {"python": _purepy}

try:
    from . import _speedups
except ImportError:  # extension not built
    _speedups = None
else:
    BACKENDS["cython"] = _speedups

if _speedups is not None and os.environ.get("CYCLEMASS_PURE", "") in ("", "0"):
    _impl = _speedups
    BACKEND = "cython"
else:
    _impl = _purepy
    BACKEND = "python"

simple_cycles = _impl.simple_cycles
canonical_labeling = _impl.canonical_labeling
mc_successes = _impl.mc_successes
