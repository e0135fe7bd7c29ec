"""Complementary quantum measurements and invariant-information numerics.

Builds complete families of mutually unbiased measurements, general SIC
measurements, prime-dimension mutually unbiased bases and the qubit
tetrahedron SIC-POVM; computes total variance, index of coincidence and
the invariant information/uncertainty of arbitrary density matrices both
by direct summation and by closed form; and simulates finite-shot
measurement statistics.
"""

__version__ = "0.1.0"

from .basis import MumGrid, OperatorBasis, gell_mann_basis, grid_partition
from .errors import (
    BzinfoError,
    DomainError,
    NumericalError,
    PositivityError,
    SchemaError,
    VerificationError,
)
from .invariants import (
    BzReport,
    ClosedForms,
    DirectEvaluator,
    OutcomeDistribution,
    bz_report,
    closed_forms,
    family_probs,
    index_of_coincidence,
    measurement_probs,
    total_variance_direct,
    variance,
)
from .linalg import expectation, herm_eig, hermitian, purity
from .measurements import (
    GsmSet,
    MumSet,
    Povm,
    VerificationReport,
    build_gsm,
    build_mub,
    build_mum,
    gsm_a,
    max_t_gsm,
    max_t_mum,
    mum_kappa,
    sic2_fixture,
    verify,
    verify_gsm,
    verify_mum,
)
from .sampler import CountTable, estimate_bz_info, estimate_coincidence, sample_outcomes
from .serialize import decode, encode, load, save
from .states import DensityMatrix, maximally_mixed, random_density, validate_state

__all__ = [
    "BzReport",
    "BzinfoError",
    "ClosedForms",
    "CountTable",
    "DensityMatrix",
    "DirectEvaluator",
    "DomainError",
    "GsmSet",
    "MumGrid",
    "MumSet",
    "NumericalError",
    "OperatorBasis",
    "OutcomeDistribution",
    "PositivityError",
    "Povm",
    "SchemaError",
    "VerificationError",
    "VerificationReport",
    "build_gsm",
    "build_mub",
    "build_mum",
    "bz_report",
    "closed_forms",
    "decode",
    "encode",
    "estimate_bz_info",
    "estimate_coincidence",
    "expectation",
    "family_probs",
    "gell_mann_basis",
    "grid_partition",
    "gsm_a",
    "herm_eig",
    "hermitian",
    "index_of_coincidence",
    "load",
    "max_t_gsm",
    "max_t_mum",
    "maximally_mixed",
    "measurement_probs",
    "mum_kappa",
    "purity",
    "random_density",
    "sample_outcomes",
    "save",
    "sic2_fixture",
    "total_variance_direct",
    "validate_state",
    "variance",
    "verify",
    "verify_gsm",
    "verify_mum",
]
