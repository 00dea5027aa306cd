"""Two-source randomness extractors for elliptic curves, with exact small-curve audits."""

__version__ = "0.1.0"

from .errors import (
    AbscissaUndefined,
    CurveMismatch,
    DerivationFailed,
    DivisionByZero,
    EcxError,
    EmptyDistribution,
    EnumerationTooLarge,
    FieldMismatch,
    InvalidK,
    NotIrreducible,
    NotOnCurve,
    NotPrime,
    SingularCurve,
    TrivialCharacter,
    UnsupportedField,
)
from .finite_field import ExtField, ExtFieldElement, FieldElement, PrimeField, trace
from .curve import (
    Curve,
    Point,
    Subgroup,
    enumerate_points,
    find_subgroups,
    point_add,
    scalar_mul,
    subgroup_from_generator,
)
from .extractors import BitString, CoeffVector, D_k, L_k, ext1, ext2, lsb_k
from .stat_lab import ExactDistribution, exact_distribution, run_audit
from .keyflow import PrngState, dh_derive, prng_next
