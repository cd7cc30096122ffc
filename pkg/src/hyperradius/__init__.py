"""Radii of convergence for quaternionic, octonionic and Moisil-Theodoresco power series."""

from .algebra import (
    Octonion,
    Quaternion,
    SignedUnit,
    conj,
    euclid_norm,
    inverse,
    oct_mul,
    prime_norm_h,
    prime_norm_mt,
    prime_norm_o,
    quat_mul,
)
from .fueter import (
    Flavor,
    PolyTable,
    RealMonomialPoly,
    ZetaValues,
    apply_operator,
    eval_P_table,
    eval_S_table,
    eval_V_table,
    expand_P,
    expand_S,
    expand_V,
    expand_word,
    zeta,
    zeta_values,
)
from .multiindex import (
    DegreeCapError,
    enumerate_degree,
    enumerate_words,
    multinomial_exact,
    multinomial_log,
)
from .radius import (
    ProbeRow,
    RadiusEstimate,
    abel_check,
    ball_volume_prime,
    probe_convergence,
    rho1_estimate,
    rho2_estimate,
    rho_tau_estimate,
    sigma_estimate,
)
from .series import (
    EvalResult,
    SeriesSpec,
    SpecError,
    eval_truncated,
    lemma_aux_domain_check,
    zeta_domain_contains,
    load_series,
    majorant_degree_term,
    majorant_partial,
    parse_series,
)

__version__ = "0.1.0"
