"""Riesz and beta-Riesz distributions on the cone of positive-definite
matrices, the triangular (Cholesky) and quadratic division algorithms, and
numerical checks of the identities that tie them together."""

from .cone import (
    Congruence,
    EPlusPoint,
    TriangularTransform,
    cholesky_div,
    divide,
    eplus_jacobian,
    frobenius_product,
    frobenius_tau,
    gen_power,
    hprime_at_e,
    log_gen_power,
    padded_block_inverse,
    peirce_reweight_operator,
    principal_minor,
    proj_pk,
    quadratic_div,
    tau_adjoint_peirce,
    triangular_from_eplus,
)
from .jordan import (
    ConeDomainError,
    box_op,
    devectorize,
    inner,
    jordan_product,
    lmap,
    peirce_decompose,
    peirce_wrt_idempotent,
    quad_rep,
    sym_sqrt,
    vectorize,
)
from .riesz import (
    BetaRieszParams,
    RieszParams,
    log_beta_omega,
    log_beta_riesz_density,
    log_gamma_omega,
    log_riesz_density,
    riesz_admissible,
    riesz_mean,
    sample_beta_riesz,
    sample_riesz,
)

__version__ = "0.1.0"
