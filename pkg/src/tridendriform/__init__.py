"""Exact workbench for finite-dimensional tridendriform algebras."""

from .exactla import (
    DimensionMismatchError,
    Matrix,
    Rational,
    SubspaceBasis,
    Vector,
    contains,
    nullspace,
    rank,
    rat,
    rat_str,
    rref,
    span,
)
from .core import (
    AxiomFailure,
    ResidualReport,
    TDAFormatError,
    TridendriformAlgebra,
    algebra_from_products,
    algebra_from_tda,
    algebra_to_tda,
    axiom_residuals,
    center,
    centralizer,
    full_space,
    is_associative,
    is_morphism,
    load_algebra,
    multiply,
    save_algebra,
    star,
    subspace_product,
    zero_algebra,
)
from .opspaces import (
    CompareResult,
    Fingerprint,
    OperatorSpace,
    assemble_system,
    closure_check,
    commutator,
    compare,
    fingerprint,
    operator_space,
)
from .rotabaxter import (
    AssociativeAlgebra,
    NotAssociativeError,
    NotRotaBaxterError,
    RotaBaxterData,
    associative_from_products,
    induced_tridendriform,
    is_rota_baxter,
    rota_baxter_witness,
)
from . import catalog

__all__ = [name for name in dir() if not name.startswith("_")]
