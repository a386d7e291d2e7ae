"""Residual checks for the algebraic identities, the two functional equations
and their solution families.

Every check is deterministic given its RNG and returns a :class:`CheckReport`.
"""
import json
from dataclasses import dataclass

import numpy as np

from .cone import (
    EPlusPoint,
    divide,
    eplus_jacobian,
    eplus_jacobian_fd,
    frobenius_product,
    hprime_at_e,
    hprime_fd,
    log_gen_power,
    log_principal_minors,
    padded_block_inverse,
    peirce_reweight,
    peirce_reweight_operator,
    tau_adjoint_paths,
    triangular_from_eplus,
    tu_operator,
)
from .jordan import (
    apply,
    box_op,
    frame,
    frame_sum,
    inner,
    jordan_product,
    lmap,
    quad_rep,
)


@dataclass(frozen=True)
class CheckReport:
    name: str
    trials: int
    max_residual: float
    tolerance: float

    @property
    def passed(self):
        return bool(self.max_residual < self.tolerance)

    def to_dict(self):
        return {
            "name": self.name,
            "trials": self.trials,
            "max_residual": float(self.max_residual),
            "tolerance": self.tolerance,
            "pass": self.passed,
        }

    def to_json(self):
        return json.dumps(self.to_dict())


@dataclass(frozen=True)
class FuncEqSolution33:
    """``a(x) = log D_p(x) - log D_p(e - x)``, ``g(y) = log D_p(y) + c``."""
    p: np.ndarray
    c: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "p", np.asarray(self.p, dtype=float))
        if not (np.all(np.isfinite(self.p)) and np.isfinite(self.c)):
            raise ValueError("solution parameters must be finite")

    def a(self, x):
        return log_gen_power(self.p, x) - log_gen_power(self.p, np.eye(self.p.size) - x)

    def g(self, y):
        return log_gen_power(self.p, y) + self.c


@dataclass(frozen=True)
class FuncEqSolution34:
    """``g(y) = log D_p'(y) + <delta, y> + c1``,
    ``a1(x) = log D_p'(x) + log D_p'(e - x) + c2``,
    ``a2(y) = 2 log D_p'(y) + <delta, y> + c3``, with ``2 c1 = c2 + c3``."""
    p_prime: np.ndarray
    delta: np.ndarray
    c1: float
    c2: float
    c3: float

    def __post_init__(self):
        object.__setattr__(self, "p_prime", np.asarray(self.p_prime, dtype=float))
        object.__setattr__(self, "delta", np.asarray(self.delta, dtype=float))
        if 2 * self.c1 != self.c2 + self.c3:
            raise ValueError("constants must satisfy 2 c1 = c2 + c3")

    @classmethod
    def from_constants(cls, p_prime, delta, c2, c3):
        return cls(p_prime, delta, (c2 + c3) / 2, c2, c3)

    def g(self, y):
        return log_gen_power(self.p_prime, y) + inner(self.delta, y) + self.c1

    def a1(self, x):
        e = np.eye(self.p_prime.size)
        return log_gen_power(self.p_prime, x) + log_gen_power(self.p_prime, e - x) + self.c2

    def a2(self, y):
        return 2 * log_gen_power(self.p_prime, y) + inner(self.delta, y) + self.c3


# random inputs


def random_sym(r, rng, unit=False):
    a = rng.normal(size=(r, r))
    x = 0.5 * (a + a.T)
    return x / np.linalg.norm(x) if unit else x


def random_cone(r, rng):
    a = rng.normal(size=(r, r))
    return a @ a.T / r + 0.5 * np.eye(r)


def random_eplus(r, rng):
    return EPlusPoint(np.exp(rng.uniform(-1, 1, r)), rng.uniform(-1, 1, r * (r - 1) // 2))


def random_unit_interval(r, rng, size=None):
    """Points of ``{0 < x < e}`` as ``g(X + Y)(X)`` with Wishart ``X, Y``."""
    n = 1 if size is None else size
    p = 0.5 * (r + 1) + 1.0
    t = np.zeros((2, n, r, r))
    idx = np.arange(r)
    t[..., idx, idx] = np.sqrt(rng.gamma(p - 0.5 * idx, size=(2, n, r)))
    rows, cols = np.tril_indices(r, -1)
    t[..., rows, cols] = rng.normal(scale=np.sqrt(0.5), size=(2, n, rows.size))
    xy = t @ np.swapaxes(t, -1, -2)
    u = divide(xy[0], xy[0] + xy[1])
    return u[0] if size is None else u


def _rel(err, ref):
    return err / max(1.0, abs(ref))


# algebra


def check_jordan_axioms(trials, rng, r=3):
    """Commutativity, associativity of the form, unit, Jordan identity."""
    worst = 0.0
    e = np.eye(r)
    for _ in range(trials):
        x, y, z = (random_sym(r, rng, unit=True) for _ in range(3))
        x2 = jordan_product(x, x)
        res = [
            np.abs(jordan_product(x, y) - jordan_product(y, x)).max(),
            abs(inner(x, jordan_product(y, z)) - inner(jordan_product(x, y), z)),
            np.abs(jordan_product(e, x) - x).max(),
            np.abs(jordan_product(x, jordan_product(x2, y)) - jordan_product(x2, jordan_product(x, y))).max(),
        ]
        worst = max(worst, *res)
    return CheckReport(f"jordan_axioms_r{r}", trials, worst, 1e-12)


def check_quad_rep(trials, rng, r=3):
    """``P(x) h = x h x`` on unit-norm inputs."""
    worst = 0.0
    for _ in range(trials):
        x, h = random_sym(r, rng, unit=True), random_sym(r, rng, unit=True)
        worst = max(worst, np.abs(apply(quad_rep(x), h) - x @ h @ x).max())
    return CheckReport(f"quad_rep_r{r}", trials, worst, 1e-12)


def check_lc_spectrum(trials, rng, r=3):
    """Spectrum of ``L(c)`` for sums of frame idempotents lies in ``{0, 1/2, 1}``."""
    worst = 0.0
    targets = np.array([0.0, 0.5, 1.0])
    c = frame(r)
    for _ in range(trials):
        subset = rng.random(r) < 0.5
        w = np.linalg.eigvalsh(lmap(c[subset].sum(axis=0)))
        worst = max(worst, np.abs(w[:, None] - targets).min(axis=1).max())
    return CheckReport(f"lc_spectrum_r{r}", trials, worst, 1e-10)


def check_nilpotency(trials, rng, r=3):
    """``(2 z [] c)^3 = 0`` for ``c = c_1 + ... + c_k`` and ``z`` in ``E(c, 1/2)``."""
    worst = 0.0
    for _ in range(trials):
        k = rng.integers(1, r)
        z = np.zeros((r, r))
        z[:k, k:] = rng.normal(size=(k, r - k))
        z = z + z.T
        z /= np.linalg.norm(z)
        n = 2.0 * box_op(z, frame_sum(k, r))
        worst = max(worst, np.abs(n @ n @ n).max())
    return CheckReport(f"nilpotency_r{r}", trials, worst, 1e-12)


def check_box_adjoint(trials, rng, r=3):
    """Matrix of ``x [] y`` transposed equals that of ``y [] x``."""
    worst = 0.0
    for _ in range(trials):
        x, y = random_sym(r, rng, unit=True), random_sym(r, rng, unit=True)
        worst = max(worst, np.abs(box_op(x, y).T - box_op(y, x)).max())
    return CheckReport(f"box_adjoint_r{r}", trials, worst, 1e-12)


# cone identities


def check_minor_homogeneity(trials, rng, r=5):
    """``Delta_k(t_u x) = Delta_k(t_u e) Delta_k(x)`` in log space (relative)."""
    worst = 0.0
    for _ in range(trials):
        t = triangular_from_eplus(random_eplus(r, rng))
        x = random_cone(r, rng)
        lhs = log_principal_minors(t(x))
        rhs = log_principal_minors(t(np.eye(r))) + log_principal_minors(x)
        worst = max(worst, (np.abs(lhs - rhs) / np.maximum(1.0, np.abs(lhs))).max())
    return CheckReport(f"minor_homogeneity_r{r}", trials, worst, 1e-10)


def check_gen_power_identities(trials, rng, r=4):
    """``D_{s+s'} = D_s D_s'``, ``D_(p..p) = det^p``, ``D_{s+m} = D_s det^m``."""
    worst = 0.0
    for _ in range(trials):
        x = random_cone(r, rng)
        s, s2 = rng.uniform(-2, 2, r), rng.uniform(-2, 2, r)
        p, m = rng.uniform(-2, 2, 2)
        logdet = np.linalg.slogdet(x)[1]
        pairs = [
            (log_gen_power(s + s2, x), log_gen_power(s, x) + log_gen_power(s2, x)),
            (log_gen_power(np.full(r, p), x), p * logdet),
            (log_gen_power(s + m, x), log_gen_power(s, x) + m * logdet),
        ]
        worst = max(worst, *(_rel(abs(a - b), a) for a, b in pairs))
    return CheckReport(f"gen_power_identities_r{r}", trials, worst, 1e-10)


def check_jacobian(trials, rng, r=3):
    """Closed-form Jacobian of ``u -> t_u(e)`` against central differences."""
    worst = 0.0
    for _ in range(trials):
        u = random_eplus(r, rng)
        exact = eplus_jacobian(u)
        worst = max(worst, abs(exact - eplus_jacobian_fd(u)) / exact)
    return CheckReport(f"eplus_jacobian_r{r}", trials, worst, 1e-6)


def check_frobenius_product(trials, rng, r=4):
    """Frobenius-transform product equals conjugation by the triangular factor."""
    worst = 0.0
    for _ in range(trials):
        u = random_eplus(r, rng)
        ref = tu_operator(u)
        worst = max(worst, np.abs(frobenius_product(u) - ref).max() / max(1.0, np.abs(ref).max()))
    return CheckReport(f"frobenius_product_r{r}", trials, worst, 1e-10)


def check_division_law(trials, rng, r=3):
    """``g(y)(y) = e`` for both division algorithms."""
    y = np.stack([random_cone(r, rng) for _ in range(trials)])
    worst = max(np.abs(divide(y, y, tag) - np.eye(r)).max() for tag in ("cholesky", "quadratic"))
    return CheckReport(f"division_law_r{r}", trials, worst, 1e-10)


def check_tau_adjoint(trials, rng, r=3):
    """Peirce-component formula for ``tau_c(z)^*`` against the operator transpose."""
    worst = 0.0
    c_all = frame(r)
    for _ in range(trials):
        if rng.random() < 0.5:
            k = rng.integers(1, r)
            c = frame_sum(k, r)
            z = np.zeros((r, r))
            z[:k, k:] = rng.normal(size=(k, r - k))
        else:
            j = rng.integers(r)
            c = c_all[j]
            z = np.zeros((r, r))
            z[j] = rng.normal(size=r)
            z[j, j] = 0.0
        z = z + z.T
        z /= np.linalg.norm(z)
        x = random_sym(r, rng, unit=True)
        a, b = tau_adjoint_paths(c, z, x)
        worst = max(worst, np.abs(a - b).max())
    return CheckReport(f"tau_adjoint_peirce_r{r}", trials, worst, 1e-12)


# propositions


def check_prop41(trials, rng, r=4, step=1e-5):
    """Gradient of ``log Delta_k`` and differential of ``x -> (P_k x)^-1``
    against central differences.  Returns ``(gradient, differential)`` reports."""
    grad_err = diff_err = 0.0
    for _ in range(trials):
        x = random_cone(r, rng)
        h = random_sym(r, rng, unit=True)
        lp, lm = log_principal_minors(x + step * h), log_principal_minors(x - step * h)
        for k in range(1, r + 1):
            pinv = padded_block_inverse(k, x)
            fd = (lp[k - 1] - lm[k - 1]) / (2 * step)
            grad_err = max(grad_err, abs(fd - inner(pinv, h)))
            fd2 = (padded_block_inverse(k, x + step * h) - padded_block_inverse(k, x - step * h)) / (2 * step)
            diff_err = max(diff_err, np.abs(fd2 + apply(quad_rep(pinv), h)).max())
    return (
        CheckReport(f"minor_gradient_r{r}", trials, grad_err, 1e-6),
        CheckReport(f"block_inverse_differential_r{r}", trials, diff_err, 1e-5),
    )


def check_prop42(trials, rng, r=5):
    """``(P_k x)^-1 = t_u^{*-1}(c_1 + ... + c_k)`` for ``x = t_u(e)``; the right
    side uses the inverse-adjoint of the Frobenius-product operator."""
    worst = 0.0
    for _ in range(trials):
        u = random_eplus(r, rng)
        t = triangular_from_eplus(u)
        x = t(np.eye(r))
        inv_adj = np.linalg.inv(frobenius_product(u)).T
        for k in range(1, r + 1):
            lhs = padded_block_inverse(k, x)
            rhs = apply(inv_adj, frame_sum(k, r))
            worst = max(worst, np.abs(lhs - rhs).max() / max(1.0, np.abs(lhs).max()))
    return CheckReport(f"block_inverse_transport_r{r}", trials, worst, 1e-10)


def check_prop44(trials, rng, r=6):
    """Peirce reweighting as a combination of quadratic representations."""
    worst = 0.0
    for _ in range(trials):
        q = rng.normal(size=r)
        x = random_sym(r, rng, unit=True)
        op = peirce_reweight_operator(q)
        worst = max(worst, np.abs(apply(op, x) - peirce_reweight(q, x)).max())
    return CheckReport(f"reweight_operator_r{r}", trials, worst, 1e-12)


def check_lemma43_at_e(trials, rng, r=3, step=1e-5):
    """Closed-form differential of ``u -> t_u`` at ``e`` against central
    differences, in operator 2-norm."""
    worst = 0.0
    for _ in range(trials):
        h = random_sym(r, rng, unit=True)
        worst = max(worst, np.linalg.norm(hprime_at_e(h) - hprime_fd(h, step), 2))
    return CheckReport(f"hprime_at_e_r{r}", trials, worst, 1e-6)


# functional equations


def random_solution33(r, rng):
    return FuncEqSolution33(rng.uniform(-2, 2, r), rng.normal())


def random_solution34(r, rng):
    return FuncEqSolution34.from_constants(
        rng.uniform(-2, 2, r), random_sym(r, rng), rng.normal(), rng.normal()
    )


def check_thm33(sol, trials, rng, r=None, perturb=0.0):
    """Residual of ``a(x) = g(t x) - g(t (e - x))``.

    ``sol=None`` draws a fresh random solution for each trial.  A nonzero
    ``perturb`` shifts the exponent used for ``a`` (negative control).
    """
    r = sol.p.size if sol is not None else (3 if r is None else r)
    worst = 0.0
    e = np.eye(r)
    for _ in range(trials):
        s = sol if sol is not None else random_solution33(r, rng)
        x = random_unit_interval(r, rng)
        t = triangular_from_eplus(random_eplus(r, rng))
        a = FuncEqSolution33(s.p + perturb, s.c).a if perturb else s.a
        res = abs(a(x) - s.g(t(x)) + s.g(t(e - x)))
        worst = max(worst, res)
    name = f"quotient_equation_r{r}" + ("_perturbed" if perturb else "")
    return CheckReport(name, trials, worst, 1e-9)


def check_thm34(sol, trials, rng, r=None):
    """Residual of ``a1(x) + a2(t e) = g(t x) + g(t (e - x))``."""
    r = sol.p_prime.size if sol is not None else (3 if r is None else r)
    worst = 0.0
    e = np.eye(r)
    for _ in range(trials):
        s = sol if sol is not None else random_solution34(r, rng)
        x = random_unit_interval(r, rng)
        t = triangular_from_eplus(random_eplus(r, rng))
        res = abs(s.a1(x) + s.a2(t(e)) - s.g(t(x)) - s.g(t(e - x)))
        worst = max(worst, res)
    return CheckReport(f"sum_equation_r{r}", trials, worst, 1e-9)


def run_suite(r=3, trials=200, seed=0, fault=False):
    """Run every check at rank ``r`` with independent child streams of ``seed``."""
    checks = [
        lambda g: check_jordan_axioms(trials, g, r),
        lambda g: check_quad_rep(trials, g, r),
        lambda g: check_lc_spectrum(trials, g, r),
        lambda g: check_box_adjoint(trials, g, r),
        lambda g: check_gen_power_identities(trials, g, r),
        lambda g: check_minor_homogeneity(trials, g, r),
        lambda g: check_jacobian(trials, g, r),
        lambda g: check_division_law(trials, g, r),
        lambda g: check_prop41(trials, g, r),
        lambda g: check_prop42(trials, g, r),
        lambda g: check_prop44(trials, g, r),
        lambda g: check_thm33(None, trials, g, r, perturb=1e-3 if fault else 0.0),
        lambda g: check_thm34(None, trials, g, r),
    ]
    if r >= 2:
        checks += [
            lambda g: check_nilpotency(trials, g, r),
            lambda g: check_frobenius_product(trials, g, r),
            lambda g: check_tau_adjoint(trials, g, r),
            lambda g: check_lemma43_at_e(trials, g, r),
        ]
    streams = np.random.SeedSequence(seed).spawn(len(checks))
    reports = []
    for check, ss in zip(checks, streams):
        out = check(np.random.default_rng(ss))
        reports.extend(out if isinstance(out, tuple) else (out,))
    return reports
