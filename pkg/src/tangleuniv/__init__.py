"""Exact computation of bead invariants of upwards tangles over XC-algebras."""

from .scalars import HALF, I, ONE, TWO, ZERO, Scalar, as_scalar, gaussian, rational
from .algebra import (
    AlgebraError,
    CheckReport,
    Permutation,
    StructureAlgebra,
    TensorElement,
    Vector,
    embed_pair,
    sigma_star,
    tensor_mul,
    verify_algebra,
)
from .xc import (
    AxiomReport,
    HopfData,
    RibbonDerived,
    XCError,
    XCStructure,
    check_xc_axioms,
    classical_ribbon_inverse,
    derive_ribbon,
)
from .algebras import (
    builtin,
    builtin_names,
    double_sweedler,
    matrix2,
    sweedler,
    trivial,
    trivial_structure,
)

__version__ = "0.1.0"
