"""Jordan algebra of real symmetric matrices.

Elements of the algebra are plain ``(r, r)`` float arrays.  Linear operators
on the algebra ("EndoE") are ``(n, n)`` arrays, ``n = r(r+1)/2``, acting on
coordinates in the orthonormal basis

    e_11, ..., e_rr, (e_ij + e_ji)/sqrt(2) for i < j (row-major),

which is orthonormal for the trace form ``<x, y> = tr(x y)``.  With this
choice the adjoint of an operator is its matrix transpose.
"""
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

SQRT2 = np.sqrt(2.0)
SPD_RTOL = 1e-12


class ConeDomainError(ValueError):
    """Raised when an argument lies outside the open cone (or support)."""


def dim(r):
    """Dimension ``n = r(r+1)/2`` of the algebra of rank ``r``."""
    return r * (r + 1) // 2


@lru_cache(maxsize=None)
def _index(r):
    diag = np.arange(r)
    iu, ju = np.triu_indices(r, k=1)
    rows = np.concatenate([diag, iu])
    cols = np.concatenate([diag, ju])
    weights = np.concatenate([np.ones(r), np.full(iu.size, SQRT2)])
    rows.setflags(write=False)
    cols.setflags(write=False)
    weights.setflags(write=False)
    return rows, cols, weights


def as_sym(x):
    """Validate ``x`` as an element of the algebra; returns a symmetrized copy.

    Accepts a stack ``(..., r, r)`` as well.
    """
    x = np.array(x, dtype=float)
    if x.ndim == 0:
        x = x.reshape(1, 1)
    if x.ndim < 2 or x.shape[-1] != x.shape[-2]:
        raise ValueError(f"expected square matrix, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError("matrix has non-finite entries")
    return 0.5 * (x + np.swapaxes(x, -1, -2))


def in_cone(x):
    """Boolean (or boolean array, for stacks) membership test for the open cone."""
    x = as_sym(x)
    w = np.linalg.eigvalsh(x)
    top = np.maximum(1.0, w[..., -1])
    return w[..., 0] > SPD_RTOL * top


def as_cone(x, name="x"):
    """Validate ``x`` as a positive-definite matrix (or stack of them)."""
    x = as_sym(x)
    ok = in_cone(x)
    if not np.all(ok):
        raise ConeDomainError(f"{name} is not positive definite")
    return x


def _same_shape(x, y):
    if x.shape[-2:] != y.shape[-2:]:
        raise ValueError(f"dimension mismatch: {x.shape[-2:]} vs {y.shape[-2:]}")


def jordan_product(x, y):
    """Jordan product ``(x y + y x) / 2``."""
    x, y = as_sym(x), as_sym(y)
    _same_shape(x, y)
    xy = x @ y
    return 0.5 * (xy + np.swapaxes(xy, -1, -2))


def inner(x, y):
    """Trace form ``tr(x y)``."""
    x, y = as_sym(x), as_sym(y)
    _same_shape(x, y)
    return np.einsum("...ij,...ij->...", x, y)


def vectorize(x):
    """Coordinates of ``x`` in the orthonormal basis (supports stacks)."""
    x = np.asarray(x, dtype=float)
    rows, cols, w = _index(x.shape[-1])
    return x[..., rows, cols] * w


def devectorize(v):
    """Inverse of :func:`vectorize`."""
    v = np.asarray(v, dtype=float)
    n = v.shape[-1]
    r = int(round((np.sqrt(8 * n + 1) - 1) / 2))
    if dim(r) != n:
        raise ValueError(f"{n} is not a triangular number")
    rows, cols, w = _index(r)
    x = np.zeros(v.shape[:-1] + (r, r))
    vals = v / w
    x[..., rows, cols] = vals
    x[..., cols, rows] = vals
    return x


@lru_cache(maxsize=None)
def _basis(r):
    b = devectorize(np.eye(dim(r)))
    b.setflags(write=False)
    return b


def basis(r):
    """The orthonormal basis as an ``(n, r, r)`` array."""
    return _basis(r)


def operator_from_action(action, r):
    """Matrix of a linear map ``E -> E`` given as a python callable on matrices."""
    images = action(_basis(r))
    return vectorize(images).T


def apply(op, x):
    """Apply an operator matrix to an element (or stack) of the algebra."""
    return devectorize(vectorize(x) @ np.asarray(op).T)


def lmap(x):
    """Multiplication operator ``L(x): y -> x y``."""
    x = as_sym(x)
    b = _basis(x.shape[-1])
    xb = x @ b
    return vectorize(0.5 * (xb + np.swapaxes(xb, -1, -2))).T


def quad_rep(x):
    """Quadratic representation ``P(x) = 2 L(x)^2 - L(x^2)``.

    Acts as ``h -> x h x``.
    """
    x = as_sym(x)
    lx = lmap(x)
    return 2.0 * lx @ lx - lmap(x @ x)


def box_op(x, y):
    """Box operator ``x [] y = L(xy) + L(x)L(y) - L(y)L(x)``."""
    lx, ly = lmap(x), lmap(y)
    return lmap(jordan_product(x, y)) + lx @ ly - ly @ lx


def inverse(x):
    x = as_cone(x)
    return as_sym(np.linalg.inv(x))


def sym_sqrt(x):
    """Positive-definite square root via the symmetric eigendecomposition."""
    x = as_cone(x)
    w, q = np.linalg.eigh(x)
    return as_sym((q * np.sqrt(w)[..., None, :]) @ np.swapaxes(q, -1, -2))


def inv_sqrt(x):
    x = as_cone(x)
    w, q = np.linalg.eigh(x)
    return as_sym((q / np.sqrt(w)[..., None, :]) @ np.swapaxes(q, -1, -2))


def frame(r):
    """Standard Jordan frame ``c_1, ..., c_r`` (diagonal matrix units)."""
    c = np.zeros((r, r, r))
    c[np.arange(r), np.arange(r), np.arange(r)] = 1.0
    return c


def frame_sum(k, r):
    """``c_1 + ... + c_k``, the padded identity ``J_k``."""
    j = np.zeros((r, r))
    j[np.arange(k), np.arange(k)] = 1.0
    return j


@dataclass(frozen=True)
class PeirceComponents:
    """Peirce decomposition with respect to the standard frame.

    ``diag[i]`` is the coefficient of ``c_i``; ``off[(i, j)]`` (0-based,
    ``i < j``) is the matrix supported on entries ``(i, j)`` and ``(j, i)``.
    """
    diag: np.ndarray
    off: dict = field(default_factory=dict)

    @property
    def r(self):
        return len(self.diag)

    def assemble(self):
        x = np.diag(np.asarray(self.diag, dtype=float))
        for xij in self.off.values():
            x = x + xij
        return x


def peirce_decompose(x):
    x = as_sym(x)
    r = x.shape[0]
    off = {}
    for i in range(r):
        for j in range(i + 1, r):
            if x[i, j] != 0.0:
                m = np.zeros((r, r))
                m[i, j] = m[j, i] = x[i, j]
                off[(i, j)] = m
    return PeirceComponents(diag=np.diag(x).copy(), off=off)


def is_idempotent(c, tol=1e-12):
    c = as_sym(c)
    return np.max(np.abs(c @ c - c)) < tol


def peirce_projectors(c):
    """Spectral projectors of ``L(c)`` on eigenvalues ``1, 1/2, 0``."""
    c = as_sym(c)
    if not is_idempotent(c):
        raise ValueError("c is not idempotent")
    w, q = np.linalg.eigh(lmap(c))
    targets = np.array([1.0, 0.5, 0.0])
    nearest = np.argmin(np.abs(w[:, None] - targets[None, :]), axis=1)
    if np.max(np.abs(w - targets[nearest])) > 1e-10:
        raise ValueError("L(c) has eigenvalues outside {0, 1/2, 1}")
    return tuple(q[:, nearest == k] @ q[:, nearest == k].T for k in range(3))


def peirce_wrt_idempotent(x, c):
    """Split ``x`` into components in ``E(c,1)``, ``E(c,1/2)``, ``E(c,0)``."""
    x = as_sym(x)
    _same_shape(x, np.asarray(c))
    v = vectorize(x)
    return tuple(devectorize(p @ v) for p in peirce_projectors(c))
