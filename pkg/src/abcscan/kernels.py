"""Backend selection for the hot integer kernels.

The compiled ``_ckernels`` extension is used when it was built; otherwise
the pure-Python ``_pykernels`` module provides the same functions.
``load(name)`` returns a specific backend, which the tests and the
benchmark use to compare the two.
"""

import importlib

from . import _pykernels

try:
    from . import _ckernels as active
except ImportError:  # extension not built
    active = _pykernels

BACKEND = active.BACKEND

# Largest value the compiled kernels accept.
U64_LIMIT = 1 << 64


def available():
    names = ["python"]
    if active is not _pykernels:
        names.insert(0, "cython")
    return names


def load(name):
    if name == "python":
        return _pykernels
    if name == "cython":
        return importlib.import_module("abcscan._ckernels")
    raise ValueError(f"unknown kernel backend {name!r}")
