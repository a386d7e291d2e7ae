"""Monte Carlo experiments on the independence of ``U = g(X+Y)(X)`` and
``V = X + Y`` for Riesz ``X, Y``, under either division algorithm.

Sampling is split into fixed-size chunks, each with its own child stream of
the configured seed, so results do not depend on how chunks are scheduled.
"""
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import stats
from scipy.spatial.distance import cdist

from .cone import divide
from .jordan import as_cone, in_cone, vectorize
from .riesz import RieszParams, check_admissible, riesz_mean, sample_riesz


@dataclass(frozen=True)
class ExperimentConfig:
    s: tuple
    s_prime: tuple
    sigma: np.ndarray = None
    n_samples: int = 50_000
    seed: int = 0
    algorithm: str = "cholesky"
    permutations: int = 199
    n_dcor: int = 4000
    chunk_size: int = 10_000

    def __post_init__(self):
        s = tuple(check_admissible(self.s).tolist())
        sp = tuple(check_admissible(self.s_prime, "s_prime").tolist())
        if len(s) != len(sp):
            raise ValueError("s and s_prime differ in length")
        r = len(s)
        sigma = np.eye(r) if self.sigma is None else as_cone(self.sigma, "sigma")
        if sigma.shape != (r, r):
            raise ValueError(f"sigma has shape {sigma.shape}, expected {(r, r)}")
        if self.n_samples < 100:
            raise ValueError(f"n_samples = {self.n_samples} violates N >= 100")
        if self.permutations < 99:
            raise ValueError(f"permutations = {self.permutations} violates n_perm >= 99")
        if self.algorithm not in ("cholesky", "quadratic"):
            raise ValueError(f"unknown division algorithm {self.algorithm!r}")
        if self.n_dcor < 10:
            raise ValueError("n_dcor must be at least 10")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "s_prime", sp)
        object.__setattr__(self, "sigma", sigma)

    @property
    def r(self):
        return len(self.s)


@dataclass
class IndependenceResult:
    algorithm: str
    n_samples: int
    n_dcor: int
    permutations: int
    dcor: float
    p_value: float
    ks_statistics: list
    ks_p_values: list
    v_mean: list
    v_mean_expected: list
    v_mean_max_abs_z: float
    u_mean: list
    u_in_support: bool = field(default=True)

    @property
    def v_mean_within_3se(self):
        return self.v_mean_max_abs_z < 3.0

    def to_dict(self):
        d = asdict(self)
        d["v_mean_within_3se"] = self.v_mean_within_3se
        return d


# distance correlation


def _centered_distances(a):
    a = np.asarray(a, dtype=float)
    if a.ndim == 1:
        a = a[:, None]
    d = cdist(a, a)
    return d - d.mean(axis=0) - d.mean(axis=1)[:, None] + d.mean()


def distance_covariance_sq(a, b):
    """Squared sample distance covariance (V-statistic)."""
    return float(np.mean(_centered_distances(a) * _centered_distances(b)))


def _dcor_from_centered(ac, bc):
    vab = np.mean(ac * bc)
    vaa, vbb = np.mean(ac * ac), np.mean(bc * bc)
    if vaa <= 0.0 or vbb <= 0.0:
        return 0.0
    return float(np.sqrt(max(vab, 0.0) / np.sqrt(vaa * vbb)))


def distance_correlation(a, b):
    """Sample distance correlation of paired rows of ``a`` and ``b``; 0 if
    either sample is constant."""
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    if len(a) != len(b):
        raise ValueError("samples must have the same number of rows")
    if len(a) < 10:
        raise ValueError("need at least 10 paired observations")
    return _dcor_from_centered(_centered_distances(a), _centered_distances(b))


def permutation_pvalue(a, b, statistic, n_perm, rng):
    """``(1 + #{permuted >= observed}) / (n_perm + 1)``, permuting rows of ``b``."""
    if n_perm < 99:
        raise ValueError("n_perm must be at least 99")
    b = np.asarray(b)
    observed = statistic(a, b)
    hits = sum(statistic(a, b[rng.permutation(len(b))]) >= observed for _ in range(n_perm))
    return (1 + hits) / (n_perm + 1)


def dcor_test(a, b, n_perm, rng):
    """Distance correlation and its permutation p-value.

    Distance matrices are centered once; each permutation re-indexes the
    centered matrix of ``b``, which leaves the distance variances unchanged,
    so comparing ``dCov^2`` is equivalent to comparing ``dCor``.
    """
    if n_perm < 99:
        raise ValueError("n_perm must be at least 99")
    ac, bc = _centered_distances(a), _centered_distances(b)
    observed = np.vdot(ac, bc)
    hits = 0
    for _ in range(n_perm):
        idx = rng.permutation(len(bc))
        hits += np.vdot(ac, bc.take(idx, axis=0).take(idx, axis=1)) >= observed
    return _dcor_from_centered(ac, bc), (1 + hits) / (n_perm + 1)


# experiments


def draw_pairs(cfg):
    """Independent ``X ~ R(s, sigma)``, ``Y ~ R(s', sigma)`` in seed-split chunks."""
    n_chunks = -(-cfg.n_samples // cfg.chunk_size)
    children = np.random.SeedSequence([cfg.seed, 0]).spawn(n_chunks)
    px = RieszParams(cfg.s, cfg.sigma)
    py = RieszParams(cfg.s_prime, cfg.sigma)
    xs, ys = [], []
    for i, child in enumerate(children):
        size = min(cfg.chunk_size, cfg.n_samples - i * cfg.chunk_size)
        rng = np.random.default_rng(child)
        xs.append(sample_riesz(px, rng, size))
        ys.append(sample_riesz(py, rng, size))
    return np.concatenate(xs), np.concatenate(ys)


def _bartlett_ks(cfg, v):
    """KS tests of the squared Cholesky diagonal of ``W^-1 V W^-T`` against
    ``Gamma(s_k + s'_k - (k-1)/2, 1)``."""
    w = np.linalg.cholesky(np.linalg.inv(cfg.sigma))
    winv = np.linalg.inv(w)
    t = np.linalg.cholesky(winv @ v @ winv.T)
    total = np.add(cfg.s, cfg.s_prime)
    out = []
    for k in range(cfg.r):
        res = stats.kstest(t[:, k, k] ** 2, stats.gamma(total[k] - 0.5 * k).cdf)
        out.append((float(res.statistic), float(res.pvalue)))
    return out


def analyze(cfg, x, y, algorithm, rng):
    """Form ``V`` and ``U`` from the draws and measure their dependence."""
    v = x + y
    u = divide(x, v, algorithm)
    e = np.eye(cfg.r)
    if not (np.all(in_cone(u)) and np.all(in_cone(e - u))):
        raise RuntimeError("a quotient sample left {0 < u < e}")

    n = len(v)
    m = min(cfg.n_dcor, n)
    idx = np.sort(rng.choice(n, size=m, replace=False)) if m < n else np.arange(n)
    dc, pval = dcor_test(vectorize(u[idx]), vectorize(v[idx]), cfg.permutations, rng)

    expected = riesz_mean(RieszParams(np.add(cfg.s, cfg.s_prime), cfg.sigma))
    mean = v.mean(axis=0)
    se = v.std(axis=0, ddof=1) / np.sqrt(n)
    rows, cols = np.tril_indices(cfg.r)
    z = np.abs(mean - expected)[rows, cols] / se[rows, cols]
    ks = _bartlett_ks(cfg, v)
    return IndependenceResult(
        algorithm=algorithm,
        n_samples=n,
        n_dcor=m,
        permutations=cfg.permutations,
        dcor=dc,
        p_value=float(pval),
        ks_statistics=[k[0] for k in ks],
        ks_p_values=[k[1] for k in ks],
        v_mean=mean.tolist(),
        v_mean_expected=expected.tolist(),
        v_mean_max_abs_z=float(z.max()),
        u_mean=u.mean(axis=0).tolist(),
        u_in_support=True,
    )


def _analysis_seed(cfg, rng):
    if rng is None:
        return np.random.SeedSequence([cfg.seed, 1])
    return np.random.SeedSequence(rng.integers(2**63))


def run_theorem31(cfg, rng=None):
    """Draw ``N`` pairs and test ``U`` against ``V`` with the configured division.

    ``rng`` drives the dCor subsample and permutations; by default it is
    derived from ``cfg.seed``.  The draws themselves always come from
    ``cfg.seed``.
    """
    x, y = draw_pairs(cfg)
    return analyze(cfg, x, y, cfg.algorithm, np.random.default_rng(_analysis_seed(cfg, rng)))


def run_contrast(cfg, rng=None):
    """Same draws, both division algorithms: ``(cholesky, quadratic)`` results.

    Both analyses use the same dCor subsample.  Needs ``max(s) - min(s) >= 1``:
    for Wishart-type ``s`` the quadratic quotient is also independent of
    ``V`` and there is nothing to contrast.
    """
    if max(cfg.s) - min(cfg.s) < 1.0:
        raise ValueError(
            f"s = {list(cfg.s)} is too close to Wishart form; the contrast needs max(s) - min(s) >= 1"
        )
    x, y = draw_pairs(cfg)
    seed = _analysis_seed(cfg, rng)
    return tuple(
        analyze(cfg, x, y, tag, np.random.default_rng(seed)) for tag in ("cholesky", "quadratic")
    )
