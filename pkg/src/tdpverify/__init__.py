"""Exact-arithmetic machinery behind sharp tridiagonal pairs, at desk scale:
parameter-sequence feasibility and q-Racah detection, the word algebra on two
idempotent families, zigzag combinatorics, relator rank certificates, and the
monomial-side evidence reports, all over exact rationals or prime fields."""

from .exactfield import FieldCtx, FieldElement
from .linalg import SparseMatrix, in_span, rank, sum_is_direct
from .mu import Monomial, MuReport, monomials, mu_verification, natural_inverse, natural_map, phi_matrix
from .params import (
    FeasibilityReport,
    ParameterArray,
    ParameterSequence,
    QRacahWitness,
    ValidationReport,
    check_feasible,
    geometric_sequence,
    qracah_construct,
    qracah_witness,
    recurrence_sequence,
    sample_feasible,
    tau_eval,
    validate_parameter_array,
)
from .relators import (
    APowerVector,
    DirectnessCertificate,
    RelatorSpec,
    a_power,
    directness_check,
    enumerate_relator_specs,
    expand_relator,
    in_R,
    relator_matrix,
    verify_psi_identities,
)
from .words import (
    Generator,
    TElement,
    Word,
    WordType,
    bracket_type,
    element_mul,
    enumerate_words,
    enumerate_zigzag,
    is_zigzag,
    is_zigzag_via_signs,
    kappa_of,
    project_component,
    type_of,
    word_mul,
)

__version__ = "0.1.0"
