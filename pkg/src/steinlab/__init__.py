"""Finite-n numerical certification of the direct part of quantum Stein's lemma."""

from .certificates import OrderCertificate, ScalarCertificate
from .errors import (
    ConfigError,
    DimensionCapError,
    DimensionError,
    InvalidMeasurementError,
    InvalidStateError,
    InvalidTestError,
    NonFiniteFunctionError,
    NotHermitianError,
    SteinLabError,
    SupportError,
)
from .exponents import best_exponent, certify_theorem3, proof_chain_diagnostics, psi, psi_zero_slope_check
from .hypothesis import Test, error_probabilities, np_dominance_certificates, optimal_beta, stein_sweep, stein_test
from .measurements import (
    POVM,
    hiai_petz_gap,
    measured_divergence,
    monotonicity_certificate,
    outcome_distribution,
    pinched_pvm_equality,
    random_povm,
)
from .pinching import PVM, key_inequality_certificate, pinch, pinch_state, pinched_pair, type_count_bound
from .spectral import eig_hermitian, matrix_function, operator_leq, positive_part_projection
from .states import (
    DensityOperator,
    StatePair,
    kl_divergence,
    preset_pair,
    random_density,
    random_pair,
    relative_entropy,
    tensor_power,
)

__version__ = "0.1.0"
