"""Kernel backend selection.

The compiled extension is used when it imports; ``OILLAB_PURE_PYTHON=1``
forces the numpy fallback. Both expose identical functions.
"""
import os

from . import _kernels_py as python_backend

compiled_backend = None
if not os.environ.get("OILLAB_PURE_PYTHON"):
    try:
        from . import _kernels as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

_impl = compiled_backend if compiled_backend is not None else python_backend
BACKEND = _impl.BACKEND

down_closure = _impl.down_closure
glb_table = _impl.glb_table
first_bad_triple = _impl.first_bad_triple
first_join_prime_failure = _impl.first_join_prime_failure
first_nonassociative = _impl.first_nonassociative
first_bound_mismatch = _impl.first_bound_mismatch
minmax_tables = _impl.minmax_tables
pattern_mask = _impl.pattern_mask
count_avoiders = _impl.count_avoiders
all_permutations = python_backend.all_permutations
