"""Riesz and beta-Riesz distributions on positive-definite matrices.

Densities are with respect to Lebesgue measure in the orthonormal coordinates
of :func:`rieszlab.jordan.vectorize` (off-diagonal coordinates are
``sqrt(2) x_ij``).  This is the normalization under which

    Gamma_cone(s) = (2 pi)^((n - r)/2) prod_j Gamma(s_j - (j - 1)/2)

normalizes the density.
"""
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .cone import divide, log_gen_power
from .jordan import ConeDomainError, as_cone, as_sym, dim, in_cone

__all__ = [
    "RieszParams",
    "BetaRieszParams",
    "check_admissible",
    "riesz_admissible",
    "log_gamma_omega",
    "log_beta_omega",
    "log_riesz_density",
    "log_beta_riesz_density",
    "sample_riesz",
    "sample_beta_riesz",
    "riesz_mean",
]


def check_admissible(s, name="s"):
    """Return ``s`` as a float array, raising unless ``s_i > (i-1)/2`` for all i."""
    s = np.atleast_1d(np.asarray(s, dtype=float))
    if s.ndim != 1 or not np.all(np.isfinite(s)):
        raise ValueError(f"{name} must be a finite vector")
    for i, si in enumerate(s):
        if not si > i / 2:
            raise ValueError(f"{name}[{i + 1}] = {si:g} violates {name}_i > (i-1)/2")
    return s


def riesz_admissible(s):
    """True when ``s`` indexes a Riesz law: finite with ``s_i > (i-1)/2``."""
    try:
        check_admissible(s)
    except ValueError:
        return False
    return True


@dataclass(frozen=True)
class RieszParams:
    s: np.ndarray
    sigma: np.ndarray

    def __post_init__(self):
        s = check_admissible(self.s)
        sigma = as_cone(self.sigma, "sigma")
        if sigma.shape != (s.size, s.size):
            raise ValueError(f"sigma has shape {sigma.shape}, expected {(s.size, s.size)}")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "sigma", sigma)

    @property
    def r(self):
        return self.s.size

    @classmethod
    def standard(cls, s):
        s = np.atleast_1d(np.asarray(s, dtype=float))
        return cls(s, np.eye(s.size))


@dataclass(frozen=True)
class BetaRieszParams:
    s: np.ndarray
    s_prime: np.ndarray

    def __post_init__(self):
        s = check_admissible(self.s)
        sp = check_admissible(self.s_prime, "s_prime")
        if s.size != sp.size:
            raise ValueError("s and s_prime differ in length")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "s_prime", sp)

    @property
    def r(self):
        return self.s.size


def log_gamma_omega(s):
    """Log of the cone gamma function (d = 1)."""
    s = check_admissible(s)
    r = s.size
    return 0.5 * (dim(r) - r) * np.log(2 * np.pi) + np.sum(gammaln(s - 0.5 * np.arange(r)))


def log_beta_omega(s, s_prime):
    s = np.asarray(s, dtype=float)
    s_prime = np.asarray(s_prime, dtype=float)
    return log_gamma_omega(s) + log_gamma_omega(s_prime) - log_gamma_omega(s + s_prime)


def _sigma_inv_factor(sigma):
    """Lower Cholesky factor ``W`` of ``sigma^-1``."""
    return np.linalg.cholesky(np.linalg.inv(sigma))


def _masked(logf, x, support, outside):
    """Evaluate ``logf`` on points where ``support`` holds, ``-inf`` elsewhere."""
    if outside not in ("-inf", "raise"):
        raise ValueError("outside must be '-inf' or 'raise'")
    support = np.asarray(support)
    if outside == "raise" and not support.all():
        raise ConeDomainError("point outside the support")
    if support.ndim == 0:
        return float(logf(x)) if support else -np.inf
    out = np.full(support.shape, -np.inf)
    out[support] = logf(x[support])
    return out


def log_riesz_density(p, x, outside="raise"):
    """Log-density of ``R(s, sigma)`` at ``x`` (or a stack of points).

    ``outside="-inf"`` returns ``-inf`` off the cone instead of raising.
    """
    x = as_sym(x)
    r = p.r
    if x.shape[-2:] != (r, r):
        raise ValueError(f"point has shape {x.shape[-2:]}, expected {(r, r)}")
    shift = 0.5 * (r + 1)
    const = -log_gamma_omega(p.s) - log_gen_power(p.s, np.linalg.inv(p.sigma))

    def logf(y):
        return const - np.einsum("ij,...ij->...", p.sigma, y) + log_gen_power(p.s - shift, y)

    return _masked(logf, x, in_cone(x), outside)


def log_beta_riesz_density(p, x, outside="raise"):
    """Log-density of the beta-Riesz law on ``{0 < x < e}``."""
    x = as_sym(x)
    r = p.r
    if x.shape[-2:] != (r, r):
        raise ValueError(f"point has shape {x.shape[-2:]}, expected {(r, r)}")
    shift = 0.5 * (r + 1)
    e = np.eye(r)
    const = -log_beta_omega(p.s, p.s_prime)

    def logf(y):
        return const + log_gen_power(p.s - shift, y) + log_gen_power(p.s_prime - shift, e - y)

    return _masked(logf, x, in_cone(x) & in_cone(e - x), outside)


def _standard_factor(s, rng, size):
    r = s.size
    t = np.zeros((size, r, r))
    idx = np.arange(r)
    t[:, idx, idx] = np.sqrt(rng.gamma(s - 0.5 * idx, size=(size, r)))
    rows, cols = np.tril_indices(r, -1)
    t[:, rows, cols] = rng.normal(scale=np.sqrt(0.5), size=(size, rows.size))
    return t


def sample_riesz(p, rng, size=None):
    """Draw from ``R(s, sigma)``.

    Bartlett-type construction: ``T`` lower triangular with ``T_ii^2 ~
    Gamma(s_i - (i-1)/2, 1)`` and ``T_ji ~ N(0, 1/2)`` gives ``T T^T ~ R(s, e)``;
    the result is transported by ``W`` with ``W W^T = sigma^-1``.
    Returns shape ``(r, r)`` if ``size`` is None, else ``(size, r, r)``.
    """
    n = 1 if size is None else int(size)
    t = _standard_factor(p.s, rng, n)
    if not np.array_equal(p.sigma, np.eye(p.r)):
        t = _sigma_inv_factor(p.sigma) @ t
    x = as_sym(t @ np.swapaxes(t, -1, -2))
    return x[0] if size is None else x


def sample_beta_riesz(p, rng, size=None, sigma=None, algorithm="cholesky"):
    """Draw ``U = g(X + Y)(X)`` with ``X ~ R(s, sigma)``, ``Y ~ R(s', sigma)``.

    With the default Cholesky division this is the beta-Riesz law whatever
    ``sigma`` is; ``sigma`` defaults to the identity.
    """
    sigma = np.eye(p.r) if sigma is None else sigma
    n = 1 if size is None else int(size)
    x = sample_riesz(RieszParams(p.s, sigma), rng, n)
    y = sample_riesz(RieszParams(p.s_prime, sigma), rng, n)
    u = divide(x, x + y, algorithm)
    return u[0] if size is None else u


def riesz_mean(p):
    """``E[X] = W diag(s) W^T`` where ``W W^T = sigma^-1``."""
    w = _sigma_inv_factor(p.sigma)
    return as_sym(w @ np.diag(p.s) @ w.T)
