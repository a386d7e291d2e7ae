"""Principal minors, generalized powers, the triangular group and division
algorithms on the cone of positive-definite matrices.

Indices of frame elements (``j`` in :func:`frobenius_tau`) are 0-based; the
order ``k`` of a principal minor is the size of the leading block.
"""
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .jordan import (
    ConeDomainError,
    apply,
    as_cone,
    as_sym,
    box_op,
    dim,
    frame,
    frame_sum,
    inv_sqrt,
    is_idempotent,
    jordan_product,
    lmap,
    operator_from_action,
    peirce_wrt_idempotent,
    quad_rep,
)

NILPOTENT_TOL = 1e-12


def _check_order(k, r):
    if not 1 <= k <= r:
        raise ValueError(f"minor order k={k} outside 1..{r}")


def principal_minor(k, x):
    """``det`` of the leading ``k x k`` block."""
    x = as_sym(x)
    _check_order(k, x.shape[-1])
    return np.linalg.det(x[..., :k, :k])


def _cholesky(x, name="x"):
    try:
        return np.linalg.cholesky(x)
    except np.linalg.LinAlgError:
        raise ConeDomainError(f"{name} is not positive definite") from None


def log_principal_minors(x):
    """``(log Delta_1(x), ..., log Delta_r(x))`` from the Cholesky factor."""
    t = _cholesky(as_sym(x))
    d = np.diagonal(t, axis1=-2, axis2=-1)
    return np.cumsum(2.0 * np.log(d), axis=-1)


def log_gen_power(s, x):
    """``log Delta_s(x) = sum_k (s_k - s_{k+1}) log Delta_k(x)``, ``s_{r+1} = 0``.

    Works on stacks of matrices.  With ``x = T T^T`` this equals
    ``sum_i s_i log T_ii^2``.
    """
    x = as_sym(x)
    s = np.asarray(s, dtype=float)
    if s.shape[-1] != x.shape[-1]:
        raise ValueError(f"power has length {s.shape[-1]}, matrix has rank {x.shape[-1]}")
    logm = log_principal_minors(x)
    steps = s - np.append(s[..., 1:], np.zeros(s.shape[:-1] + (1,)), axis=-1)
    return np.sum(steps * logm, axis=-1)


def gen_power(s, x):
    return np.exp(log_gen_power(s, x))


class Congruence:
    """Linear map ``x -> A x A^T`` on the algebra."""

    def __init__(self, a):
        self.a = np.array(a, dtype=float)
        if self.a.ndim != 2 or self.a.shape[0] != self.a.shape[1]:
            raise ValueError("congruence factor must be square")

    @property
    def r(self):
        return self.a.shape[0]

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return as_sym(self.a @ x @ self.a.T)

    def adjoint(self, x):
        """Adjoint for the trace form: ``x -> A^T x A``."""
        x = np.asarray(x, dtype=float)
        return as_sym(self.a.T @ x @ self.a)

    def matrix(self):
        """Operator matrix in the orthonormal basis."""
        return operator_from_action(lambda b: self.a @ b @ self.a.T, self.r)

    def __repr__(self):
        return f"{type(self).__name__}({self.a!r})"


class TriangularTransform(Congruence):
    """Element of the triangular group: ``x -> L x L^T``, ``L`` lower
    triangular with positive diagonal."""

    def __init__(self, lower):
        super().__init__(lower)
        if np.any(np.triu(self.a, 1) != 0.0):
            raise ValueError("triangular factor has nonzero strictly-upper entries")
        if np.any(np.diag(self.a) <= 0.0):
            raise ValueError("triangular factor needs a strictly positive diagonal")

    @property
    def lower(self):
        return self.a

    def inverse(self):
        inv = solve_triangular(self.a, np.eye(self.r), lower=True)
        return TriangularTransform(np.tril(inv))

    def __matmul__(self, other):
        return TriangularTransform(np.tril(self.a @ other.a))


@dataclass(frozen=True)
class EPlusPoint:
    """Coordinates ``u_i > 0`` and raw off-diagonal entries ``v_ij`` (``i < j``,
    row-major) of a point of the parameter set ``E_+``."""
    diag: np.ndarray
    off: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.diag, dtype=float)
        o = np.asarray(self.off, dtype=float)
        r = d.size
        if o.size != r * (r - 1) // 2:
            raise ValueError(f"expected {r * (r - 1) // 2} off-diagonal coordinates, got {o.size}")
        if np.any(d <= 0.0):
            raise ValueError("E+ point needs u_i > 0")
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "off", o.ravel())

    @property
    def r(self):
        return self.diag.size

    def off_matrix(self):
        """Strictly upper-triangular matrix of the ``v_ij``."""
        m = np.zeros((self.r, self.r))
        m[np.triu_indices(self.r, 1)] = self.off
        return m

    def as_element(self):
        """``sum u_i c_i + sum u_ij`` as a symmetric matrix."""
        m = self.off_matrix()
        return np.diag(self.diag) + m + m.T

    @classmethod
    def identity(cls, r):
        return cls(np.ones(r), np.zeros(r * (r - 1) // 2))

    @classmethod
    def from_cone(cls, x):
        """The unique ``u`` with ``t_u(e) = x``."""
        t = _cholesky(as_cone(x))
        r = t.shape[0]
        return cls(np.diag(t).copy(), t.T[np.triu_indices(r, 1)])

    @classmethod
    def from_vector(cls, w, r):
        w = np.asarray(w, dtype=float)
        return cls(w[:r], w[r:])

    def to_vector(self):
        return np.concatenate([self.diag, self.off])


def triangular_from_eplus(u):
    """``t_u`` with ``L_ii = u_i`` and ``L_ji = v_ij`` for ``j > i``."""
    return TriangularTransform(np.diag(u.diag) + u.off_matrix().T)


def tau(c, z):
    """Frobenius transformation ``exp(2 z [] c)`` for idempotent ``c`` and
    ``z`` in ``E(c, 1/2)``; the series stops at the quadratic term."""
    c, z = as_sym(c), as_sym(z)
    if not is_idempotent(c):
        raise ValueError("c is not idempotent")
    if np.max(np.abs(jordan_product(c, z) - 0.5 * z)) > NILPOTENT_TOL * max(1.0, np.abs(z).max()):
        raise ValueError("z is not in the 1/2-eigenspace of L(c)")
    nil = 2.0 * box_op(z, c)
    nil2 = nil @ nil
    scale = max(1.0, np.abs(nil).max()) ** 3
    if np.max(np.abs(nil2 @ nil)) > NILPOTENT_TOL * scale:
        raise ArithmeticError("2 z [] c is not nilpotent of order 3")
    return np.eye(nil.shape[0]) + nil + 0.5 * nil2


def frobenius_tau(j, z):
    """``tau_{c_j}(z)`` for ``z`` supported on entries ``(j, k), (k, j)``, ``k > j``."""
    z = as_sym(z)
    r = z.shape[0]
    if not 0 <= j < r:
        raise ValueError(f"frame index {j} outside 0..{r - 1}")
    mask = np.zeros((r, r), dtype=bool)
    mask[j, j + 1:] = mask[j + 1:, j] = True
    if np.max(np.abs(np.where(mask, 0.0, z)), initial=0.0) > NILPOTENT_TOL:
        raise ValueError(f"z has components outside sum_(k>{j}) E_({j},k)")
    return tau(frame(r)[j], z)


def frobenius_product(u):
    """Operator ``tau_{c_1}(z^(1)) ... tau_{c_{r-1}}(z^(r-1)) P(sum u_i c_i)``
    with ``z_ij = u_ij / u_i``, assembled from Frobenius transformations."""
    r = u.r
    v = u.off_matrix()
    op = np.eye(dim(r))
    for j in range(r - 1):
        z = np.zeros((r, r))
        z[j, j + 1:] = v[j, j + 1:] / u.diag[j]
        op = op @ frobenius_tau(j, z + z.T)
    return op @ quad_rep(np.diag(u.diag))


def tau_adjoint_paths(c, z, x):
    """``tau_c(z)^*(x)`` computed twice: by transposing the operator matrix, and
    from the Peirce components of ``x`` with respect to ``c``:

        y_1 = 2 c[z(z x_0) + z x_12] + x_1,  y_12 = 2 z x_0 + x_12,  y_0 = x_0.
    """
    x = as_sym(x)
    via_matrix = apply(tau(c, z).T, x)
    x1, x12, x0 = peirce_wrt_idempotent(x, c)
    zx0 = jordan_product(z, x0)
    y1 = 2.0 * jordan_product(c, jordan_product(z, zx0) + jordan_product(z, x12)) + x1
    y12 = 2.0 * zx0 + x12
    return via_matrix, y1 + y12 + x0


def tau_adjoint_peirce(c, z, x, tol=1e-12):
    """``tau_c(z)^*(x)``; raises if the two evaluation paths disagree."""
    via_matrix, via_peirce = tau_adjoint_paths(c, z, x)
    err = np.max(np.abs(via_matrix - via_peirce))
    if err > tol * max(1.0, np.abs(via_matrix).max()):
        raise ArithmeticError(f"adjoint Frobenius paths disagree by {err:.3e}")
    return via_matrix


def _lower_index(r):
    return np.tril_indices(r)


def eplus_jacobian(u):
    """``2^r prod u_i^(1 + r - i)``: Jacobian of ``u -> t_u(e)`` in entry coordinates."""
    r = u.r
    return 2.0 ** r * np.prod(u.diag ** (1 + r - np.arange(1, r + 1)))


def eplus_jacobian_fd(u, step=1e-5):
    """Finite-difference |det| of ``(u_i, v_ij) -> lower-triangle entries of t_u(e)``."""
    r = u.r
    w0 = u.to_vector()
    rows, cols = _lower_index(r)

    def entries(w):
        t = triangular_from_eplus(EPlusPoint.from_vector(w, r)).lower
        return (t @ t.T)[rows, cols]

    jac = np.empty((w0.size, w0.size))
    for a in range(w0.size):
        dw = np.zeros_like(w0)
        dw[a] = step
        jac[:, a] = (entries(w0 + dw) - entries(w0 - dw)) / (2 * step)
    return abs(np.linalg.det(jac))


def cholesky_div(y):
    """Division by ``y = T T^T``: the triangular transform ``x -> T^-1 x T^-T``."""
    y = as_cone(y, "y")
    return TriangularTransform(np.tril(_cholesky(y, "y"))).inverse()


def quadratic_div(y):
    """Division by ``y`` through the quadratic representation: ``x -> y^-1/2 x y^-1/2``."""
    return Congruence(inv_sqrt(as_cone(y, "y")))


DIVISION_ALGORITHMS = {"cholesky": cholesky_div, "quadratic": quadratic_div}


def division_algorithm(tag):
    try:
        return DIVISION_ALGORITHMS[tag]
    except KeyError:
        raise ValueError(f"unknown division algorithm {tag!r}; use one of {sorted(DIVISION_ALGORITHMS)}") from None


def divide(x, y, tag="cholesky"):
    """``g(y)(x)`` for stacks of matrices ``x, y`` of shape ``(N, r, r)``."""
    x, y = as_sym(x), as_sym(y)
    if tag == "cholesky":
        t = _cholesky(y, "y")
        r = t.shape[-1]
        tinv = np.linalg.solve(t, np.broadcast_to(np.eye(r), t.shape))
        a = np.tril(tinv)
    elif tag == "quadratic":
        w, q = np.linalg.eigh(y)
        if np.any(w <= 0):
            raise ConeDomainError("y is not positive definite")
        a = (q / np.sqrt(w)[..., None, :]) @ np.swapaxes(q, -1, -2)
    else:
        division_algorithm(tag)
    return as_sym(a @ x @ np.swapaxes(a, -1, -2))


def proj_pk(k, x):
    """Orthogonal projection onto the leading ``k x k`` block subalgebra."""
    x = as_sym(x)
    _check_order(k, x.shape[-1])
    out = np.zeros_like(x)
    out[..., :k, :k] = x[..., :k, :k]
    return out


def padded_block_inverse(k, x):
    """Inverse of the leading ``k x k`` block, embedded in the corner."""
    x = as_sym(x)
    _check_order(k, x.shape[-1])
    block = x[..., :k, :k]
    if not np.all(np.linalg.eigvalsh(block)[..., 0] > 0):
        raise ConeDomainError(f"leading {k}x{k} block is not positive definite")
    out = np.zeros_like(x)
    out[..., :k, :k] = as_sym(np.linalg.inv(block))
    return out


def peirce_reweight(q, x):
    """Scale ``x_ij`` (``i <= j``) by ``q_j``: entry ``(i, j)`` gets ``q_max(i,j)``."""
    x = as_sym(x)
    q = np.asarray(q, dtype=float)
    r = x.shape[-1]
    idx = np.arange(r)
    return x * q[np.maximum(idx[:, None], idx[None, :])]


def peirce_reweight_operator(q):
    """``q_r P(c_1+...+c_r) + sum_{k<r} (q_k - q_{k+1}) P(c_1+...+c_k)``."""
    q = np.asarray(q, dtype=float)
    r = q.size
    op = q[-1] * quad_rep(np.eye(r))
    for k in range(1, r):
        op = op + (q[k - 1] - q[k]) * quad_rep(frame_sum(k, r))
    return op


def tu_operator(u):
    """``t_u`` as an operator matrix."""
    return triangular_from_eplus(u).matrix()


def hprime_at_e(h):
    """Differential of ``u -> t_u`` at ``u = e`` in direction ``h``:
    ``2 [sum_j h^(j) [] c_j + L(hbar)]``."""
    h = as_sym(h)
    r = h.shape[0]
    c = frame(r)
    op = lmap(np.diag(np.diag(h)))
    for j in range(r - 1):
        hj = np.zeros((r, r))
        hj[j, j + 1:] = h[j, j + 1:]
        op = op + box_op(hj + hj.T, c[j])
    return 2.0 * op


def eplus_direction(h):
    """Read a symmetric matrix ``h`` as a tangent vector of ``E_+`` coordinates."""
    h = as_sym(h)
    r = h.shape[0]
    return np.concatenate([np.diag(h), h[np.triu_indices(r, 1)]])


def hprime_fd(h, step=1e-5):
    """Central finite difference of ``u -> t_u`` at ``u = e`` along ``h``."""
    h = as_sym(h)
    r = h.shape[0]
    w0 = EPlusPoint.identity(r).to_vector()
    dw = step * eplus_direction(h)
    plus = tu_operator(EPlusPoint.from_vector(w0 + dw, r))
    minus = tu_operator(EPlusPoint.from_vector(w0 - dw, r))
    return (plus - minus) / (2 * step)
