"""Backend selection for the hot loops.

The compiled extension ``lmkit._ckernels`` is used when it was built and
``LMKIT_PURE_PYTHON`` is not set; otherwise the pure-Python module is used.
Bitmask kernels fall back to Python for carriers wider than 63 points.
"""

import os

from . import _pykernels

SEMIMODAL = _pykernels.SEMIMODAL
MODAL = _pykernels.MODAL
THETA = _pykernels.THETA

_MAX_BITS = 63

_compiled = None
if not os.environ.get("LMKIT_PURE_PYTHON"):
    try:
        from . import _ckernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def available_backends():
    names = ["python"]
    if _compiled is not None:
        names.append("cython")
    return names


def get_backend(name=None):
    """Return the kernel module called ``name`` (default: the active one)."""
    name = name or BACKEND
    if name == "python":
        return _pykernels
    if name == "cython" and _compiled is not None:
        return _compiled
    raise ValueError(f"kernel backend {name!r} is not available")


_impl = get_backend()


def congruence_closure(size, join, meet, unary, pairs, reflect=None):
    return _impl.congruence_closure(size, join, meet, unary, pairs, reflect)


def partition_labels(keys):
    return _impl.partition_labels(keys)


def upsets(size, strict_up, order):
    if size > _MAX_BITS:
        return _pykernels.upsets(size, strict_up, order)
    return _impl.upsets(size, strict_up, order)


def scan_subsets(npoints, maps, kind):
    if npoints > _MAX_BITS:
        return _pykernels.scan_subsets(npoints, maps, kind)
    return _impl.scan_subsets(npoints, maps, kind)


def preimage_collision(npoints, maps):
    if npoints > _MAX_BITS:
        return _pykernels.preimage_collision(npoints, maps)
    return _impl.preimage_collision(npoints, maps)
