"""Exact computations with evolution algebras.

The usual entry points::

    from evokit import Field, Matrix, EvolutionAlgebra
    K = Field.tower(2)
    E = EvolutionAlgebra.from_rows([[1, 1], [2, 2]], Field.rational())
"""

from .algebra import (
    EvolutionAlgebra,
    apply_evolution_operator,
    has_2li,
    has_unique_natural_basis,
    is_degenerate,
    multiply_elements,
    verify_support_theorem,
)
from .errors import (
    EvokitError,
    FieldMismatchError,
    NotAutomorphism,
    NotNaturalBasisChange,
    PreconditionError,
    ScalarParseError,
    ShapeError,
    TheoremViolation,
)
from .matrix import Matrix, all_ones, diag, hadamard_power, hadamard_product, identity, permutation_matrix, star_product
from .morphism import (
    conjugate_operator_of_automorphism,
    diagonal_automorphisms,
    is_endomorphism,
    is_natural_basis_change,
    monomial_automorphism_check,
    operator_in_new_basis,
    same_operator_as_L,
    symmetric_group_in_aut,
)
from .opset import (
    classify_operator_set,
    nontrivial_witness,
    operator_set_rank,
    scaled_form_decompose,
    scaling_membership,
)
from .orbit import certify_infinite_orbit, orbit_explore
from .scalar import (
    Field,
    FloatScalar,
    TowerScalar,
    embed_float,
    is_root_of_unity,
    minimal_polynomial,
    parse_scalar,
    sqrt_in_field,
)

__version__ = "0.1.0"
