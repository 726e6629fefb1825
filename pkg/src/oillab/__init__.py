"""Finite distributive lattices, Order Ideal Lemma certificates and
log-concavity checks for combinatorial sequences."""
from .errors import InputError, NotALattice, OilLabError, SizeLimitExceeded
from .kernels import BACKEND
from .lattice import (
    Certificate,
    Poset,
    VectorLattice,
    birkhoff,
    check_distributive,
    check_lattice_axioms,
    compute_lattice,
    fkg_check,
    oil_check,
    poset_from_covers,
    q_oil_check,
    to_dot,
)
from .qpoly import QPoly
from .seqlab import analyze, sequence

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Certificate", "InputError", "NotALattice", "OilLabError", "Poset", "QPoly",
    "SizeLimitExceeded", "VectorLattice", "analyze", "birkhoff", "check_distributive",
    "check_lattice_axioms", "compute_lattice", "fkg_check", "oil_check", "poset_from_covers",
    "q_oil_check", "sequence", "to_dot", "__version__",
]
