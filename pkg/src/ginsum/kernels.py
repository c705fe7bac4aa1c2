"""Backend selection for the hot rate kernels.

At import time the compiled extension (:mod:`ginsum._kernels_cy`) is
preferred; the numpy fallback (:mod:`ginsum._kernels_py`) is used when the
extension is missing (no compiler at install time).  Both export the same
four functions:

    t_bounds_scalar, min_t_scalar, t_bounds_batch, min_t_batch

``set_backend`` exists for benchmarks and tests; library code goes through
the module-level names so a switch takes effect everywhere.
"""

from __future__ import annotations

from . import _kernels_py

try:
    from . import _kernels_cy
except ImportError:  # extension not built on this machine
    _kernels_cy = None

_BACKENDS = {"numpy": _kernels_py}
if _kernels_cy is not None:
    _BACKENDS["cython"] = _kernels_cy

BACKEND = "cython" if _kernels_cy is not None else "numpy"
_impl = _BACKENDS[BACKEND]

t_bounds_scalar = _impl.t_bounds_scalar
min_t_scalar = _impl.min_t_scalar
t_bounds_batch = _impl.t_bounds_batch
min_t_batch = _impl.min_t_batch
t_bounds_batch_params = _impl.t_bounds_batch_params


def available_backends() -> dict[str, object]:
    """Mapping of backend name to its implementation module."""
    return dict(_BACKENDS)


def set_backend(name: str) -> None:
    """Switch the active backend ('cython' or 'numpy').

    Intended for benchmarking and backend-equivalence tests; not thread-safe
    against concurrent kernel calls.
    """
    global BACKEND, _impl, t_bounds_scalar, min_t_scalar
    global t_bounds_batch, min_t_batch, t_bounds_batch_params
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; available: {sorted(_BACKENDS)}")
    BACKEND = name
    _impl = _BACKENDS[name]
    t_bounds_scalar = _impl.t_bounds_scalar
    min_t_scalar = _impl.min_t_scalar
    t_bounds_batch = _impl.t_bounds_batch
    min_t_batch = _impl.min_t_batch
    t_bounds_batch_params = _impl.t_bounds_batch_params
