"""Sweep kernel selection: compiled extension when built, Python otherwise."""

from . import _sweep_py

try:
    from . import _sweep as _compiled
except ImportError:  # extension not built
    _compiled = None

DEFAULT = "cython" if _compiled is not None else "python"


def available():
    return ["cython", "python"] if _compiled is not None else ["python"]


def get(backend=None):
    backend = backend or DEFAULT
    if backend == "python":
        return _sweep_py
    if backend == "cython":
        if _compiled is None:
            raise RuntimeError("compiled sweep kernel is not built")
        return _compiled
    raise ValueError(f"unknown sweep backend {backend!r}")
