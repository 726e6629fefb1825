"""Size caps. ``OILLAB_MAX_ELEMENTS`` overrides every materialization cap."""
import os

from .errors import SizeLimitExceeded

#: lattices up to this size get dense meet/join tables and exact checks
DENSE_CAP = 5000
#: exhaustive triple loops (distributivity, associativity) run up to this size;
#: between here and DENSE_CAP the equivalent O(n^2) criteria are used
TRIPLE_CAP = 1000
#: associativity is checked triple-by-triple up to this size
ASSOC_CAP = 2000
#: largest poset whose full order relation is stored as bitsets
CLOSURE_CAP = 20000
#: triples drawn when a lattice is too large for an exact distributivity check
SAMPLE_TRIPLES = 20000
#: default cap on materialized elements (ideals, paths, tableaux, ...)
DEFAULT_MAX_ELEMENTS = 10**6

PATH_CAPS = {"dyck": 14, "motzkin": 14, "schroeder": 10}
PERM_CAP = 10
MIDDLE_CAP = 9


def max_elements(default=DEFAULT_MAX_ELEMENTS):
    value = os.environ.get("OILLAB_MAX_ELEMENTS")
    if value:
        return int(value)
    return default


def overridden():
    return bool(os.environ.get("OILLAB_MAX_ELEMENTS"))


def enforce(what, size, default=DEFAULT_MAX_ELEMENTS):
    cap = max_elements(default)
    if size > cap:
        raise SizeLimitExceeded(what, size, cap)


def enforce_param(what, value, cap):
    """Parameter caps (n ≤ 14 etc.) are lifted when the env override is set."""
    if value > cap and not overridden():
        raise SizeLimitExceeded(what, value, cap)
