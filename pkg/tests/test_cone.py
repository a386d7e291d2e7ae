import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from rieszlab.cone import (
    EPlusPoint,
    TriangularTransform,
    cholesky_div,
    divide,
    eplus_jacobian,
    eplus_jacobian_fd,
    frobenius_product,
    frobenius_tau,
    gen_power,
    hprime_at_e,
    hprime_fd,
    log_gen_power,
    log_principal_minors,
    padded_block_inverse,
    peirce_reweight,
    peirce_reweight_operator,
    principal_minor,
    proj_pk,
    quadratic_div,
    tau,
    tau_adjoint_paths,
    tau_adjoint_peirce,
    triangular_from_eplus,
    tu_operator,
)
from rieszlab.jordan import (
    ConeDomainError,
    apply,
    frame,
    frame_sum,
    inner,
    peirce_wrt_idempotent,
)

from conftest import random_spd, random_sym


def random_eplus(r, rng):
    return EPlusPoint(np.exp(rng.uniform(-1, 1, r)), rng.uniform(-1, 1, r * (r - 1) // 2))


class TestMinors:
    def test_identity(self):
        for k in range(1, 4):
            assert principal_minor(k, np.eye(3)) == 1.0

    def test_two_by_two(self):
        x = np.array([[2.0, 1.0], [1.0, 2.0]])
        assert principal_minor(1, x) == pytest.approx(2.0)
        assert principal_minor(2, x) == pytest.approx(3.0)

    def test_diagonal(self):
        x = np.diag([2.0, 3.0, 4.0])
        assert [principal_minor(k, x) for k in (1, 2, 3)] == pytest.approx([2.0, 6.0, 24.0])
        np.testing.assert_allclose(np.exp(log_principal_minors(x)), [2.0, 6.0, 24.0])

    def test_order_range(self):
        with pytest.raises(ValueError):
            principal_minor(0, np.eye(2))
        with pytest.raises(ValueError):
            principal_minor(3, np.eye(2))


class TestGenPower:
    def test_diagonal(self, rng):
        lam, s = rng.uniform(0.2, 3, 4), rng.uniform(-2, 2, 4)
        assert gen_power(s, np.diag(lam)) == pytest.approx(np.prod(lam ** s))

    def test_constant_power_is_det(self, rng):
        x = random_spd(4, rng)
        assert log_gen_power(np.full(4, 1.7), x) == pytest.approx(1.7 * np.linalg.slogdet(x)[1], rel=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_additive_in_exponent(self, seed):
        rng = np.random.default_rng(seed)
        x = random_spd(4, rng)
        s, t = rng.uniform(-2, 2, 4), rng.uniform(-2, 2, 4)
        m = rng.uniform(-2, 2)
        assert log_gen_power(s + t, x) == pytest.approx(log_gen_power(s, x) + log_gen_power(t, x), abs=1e-10)
        assert log_gen_power(s + m, x) == pytest.approx(
            log_gen_power(s, x) + m * np.linalg.slogdet(x)[1], abs=1e-10
        )

    def test_matches_minor_product(self, rng):
        x = random_spd(3, rng)
        s = np.array([0.3, -1.2, 2.0])
        minors = [principal_minor(k, x) for k in (1, 2, 3)]
        ref = minors[0] ** (s[0] - s[1]) * minors[1] ** (s[1] - s[2]) * minors[2] ** s[2]
        assert gen_power(s, x) == pytest.approx(ref, rel=1e-12)

    def test_large_rank_no_overflow(self, rng):
        x = 50.0 * random_spd(12, rng)
        assert np.isfinite(log_gen_power(np.full(12, 40.0), x))

    def test_domain(self):
        with pytest.raises(ConeDomainError):
            log_gen_power([1.0, 1.0], np.diag([1.0, -1.0]))


class TestTriangular:
    def test_invariants(self):
        with pytest.raises(ValueError):
            TriangularTransform([[1.0, 1.0], [0.0, 1.0]])
        with pytest.raises(ValueError):
            TriangularTransform([[1.0, 0.0], [0.0, 0.0]])

    def test_eplus_identity(self):
        t = triangular_from_eplus(EPlusPoint.identity(3))
        np.testing.assert_array_equal(t.lower, np.eye(3))

    def test_eplus_rank2(self):
        u = EPlusPoint([1.3, 0.6], [0.4])
        np.testing.assert_array_equal(triangular_from_eplus(u).lower, [[1.3, 0.0], [0.4, 0.6]])
        # oracle: tau_{c1}(z) P(diag u) with z = v/u1 (e12 + e21), composed as operators
        z = 0.4 / 1.3 * np.array([[0.0, 1.0], [1.0, 0.0]])
        from rieszlab.jordan import quad_rep

        op = frobenius_tau(0, z) @ quad_rep(np.diag([1.3, 0.6]))
        np.testing.assert_allclose(op, tu_operator(u), atol=1e-14)

    def test_minors_of_tu_e(self, rng):
        u = random_eplus(4, rng)
        x = triangular_from_eplus(u)(np.eye(4))
        np.testing.assert_allclose(np.exp(log_principal_minors(x)), np.cumprod(u.diag ** 2), rtol=1e-12)

    @pytest.mark.parametrize("r", [2, 3, 5])
    def test_frobenius_product(self, r, rng):
        for _ in range(10):
            u = random_eplus(r, rng)
            ref = tu_operator(u)
            assert np.abs(frobenius_product(u) - ref).max() < 1e-10 * max(1.0, np.abs(ref).max())

    def test_minor_homogeneity(self, rng):
        u, x = random_eplus(5, rng), random_spd(5, rng)
        t = triangular_from_eplus(u)
        np.testing.assert_allclose(
            log_principal_minors(t(x)), log_principal_minors(t(np.eye(5))) + log_principal_minors(x), rtol=1e-10
        )

    def test_bijection_and_uniqueness(self, rng):
        for _ in range(20):
            x = random_spd(4, rng)
            u = EPlusPoint.from_cone(x)
            t = triangular_from_eplus(u)
            assert np.abs(t(np.eye(4)) - x).max() < 1e-10 * np.abs(x).max()
            # any other triangular t' with t'(e) = x has the same factor
            np.testing.assert_allclose(t.lower, np.linalg.cholesky(x), atol=1e-12)

    def test_inverse_and_adjoint(self, rng):
        t = triangular_from_eplus(random_eplus(3, rng))
        x, y = random_sym(3, rng), random_sym(3, rng)
        np.testing.assert_allclose(t.inverse()(t(x)), x, atol=1e-12)
        assert inner(t(x), y) == pytest.approx(inner(x, t.adjoint(y)))
        np.testing.assert_allclose((t @ t.inverse()).lower, np.eye(3), atol=1e-12)


class TestFrobenius:
    def test_zero(self):
        np.testing.assert_allclose(frobenius_tau(0, np.zeros((3, 3))), np.eye(6), atol=1e-15)

    def test_rank2_conjugation(self):
        beta = -0.8
        z = beta * np.array([[0.0, 1.0], [1.0, 0.0]])
        m = np.eye(2) + beta * np.array([[0.0, 0.0], [1.0, 0.0]])
        op = frobenius_tau(0, z)
        c1 = frame(2)[0]
        np.testing.assert_allclose(apply(op, c1), m @ c1 @ m.T, atol=1e-15)
        np.testing.assert_allclose(apply(op, c1), c1 + z + beta ** 2 * frame(2)[1], atol=1e-15)

    def test_rejects_wrong_support(self):
        z = np.zeros((3, 3))
        z[0, 1] = z[1, 0] = 1.0
        with pytest.raises(ValueError):
            frobenius_tau(1, z)

    def test_adjoint_zero(self, rng):
        x = random_sym(3, rng)
        np.testing.assert_allclose(tau_adjoint_peirce(frame_sum(1, 3), np.zeros((3, 3)), x), x, atol=1e-14)

    def test_adjoint_fixes_zero_space(self, rng):
        # for x in E(c, 0) the E(c, 0) part of tau_c(z)^* x is x itself
        c = frame_sum(2, 4)
        z = np.zeros((4, 4))
        z[:2, 2:] = rng.normal(size=(2, 2))
        z = z + z.T
        x = np.zeros((4, 4))
        x[2:, 2:] = random_sym(2, rng)
        y = tau_adjoint_peirce(c, z, x)
        np.testing.assert_allclose(peirce_wrt_idempotent(y, c)[2], x, atol=1e-12)

    def test_adjoint_two_paths(self, rng):
        c = frame(3)[1]
        z = np.zeros((3, 3))
        z[1, [0, 2]] = rng.normal(size=2)
        z = z + z.T
        a, b = tau_adjoint_paths(c, z, random_sym(3, rng))
        assert np.abs(a - b).max() < 1e-12

    def test_tau_requires_half_space(self):
        with pytest.raises(ValueError):
            tau(frame(2)[0], np.eye(2))


class TestJacobian:
    def test_rank1(self):
        assert eplus_jacobian(EPlusPoint([1.7], [])) == pytest.approx(3.4)

    def test_rank2_symbolic(self):
        u1, u2, v = sympy.symbols("u1 u2 v", positive=True)
        entries = sympy.Matrix([u1 ** 2, u1 * v, v ** 2 + u2 ** 2])
        jac = sympy.Abs(entries.jacobian([u1, u2, v]).det())
        point = {u1: 1.3, u2: 0.7, v: -0.4}
        expected = float(jac.subs(point))
        assert expected == pytest.approx(4 * 1.3 ** 2 * 0.7)
        assert eplus_jacobian(EPlusPoint([1.3, 0.7], [-0.4])) == pytest.approx(expected, rel=1e-14)

    def test_finite_differences(self, rng):
        for r in (2, 3, 4):
            u = random_eplus(r, rng)
            assert eplus_jacobian_fd(u) == pytest.approx(eplus_jacobian(u), rel=1e-6)


class TestDivision:
    def test_identity(self):
        np.testing.assert_allclose(cholesky_div(np.eye(3)).matrix(), np.eye(6))
        np.testing.assert_allclose(quadratic_div(np.eye(3)).matrix(), np.eye(6))

    def test_diagonal(self):
        y = np.diag([4.0, 9.0])
        d = np.diag([0.5, 1 / 3])
        for g in (cholesky_div(y), quadratic_div(y)):
            np.testing.assert_allclose(g.a, d, atol=1e-15)

    @pytest.mark.parametrize("r", [2, 3, 5])
    @pytest.mark.parametrize("tag", ["cholesky", "quadratic"])
    def test_division_law(self, r, tag, rng):
        y = np.stack([random_spd(r, rng) for _ in range(1000)])
        assert np.abs(divide(y, y, tag) - np.eye(r)).max() < 1e-10

    def test_algorithms_differ_by_rotation(self, rng):
        y, x = random_spd(3, rng), random_spd(3, rng)
        c, q = cholesky_div(y), quadratic_div(y)
        np.testing.assert_allclose(c(y), np.eye(3), atol=1e-12)
        np.testing.assert_allclose(q(y), np.eye(3), atol=1e-12)
        o = q.a @ np.linalg.inv(c.a)
        np.testing.assert_allclose(o @ o.T, np.eye(3), atol=1e-12)
        np.testing.assert_allclose(q(x), o @ c(x) @ o.T, atol=1e-10)

    def test_batch_matches_single(self, rng):
        y, x = random_spd(3, rng), random_spd(3, rng)
        np.testing.assert_allclose(divide(x[None], y[None])[0], cholesky_div(y)(x), atol=1e-13)
        np.testing.assert_allclose(divide(x[None], y[None], "quadratic")[0], quadratic_div(y)(x), atol=1e-13)

    def test_rejects_non_spd(self):
        with pytest.raises(ConeDomainError):
            cholesky_div(np.diag([1.0, -2.0]))
        with pytest.raises(ValueError):
            divide(np.eye(2)[None], np.eye(2)[None], "lu")


class TestBlocks:
    def test_projection(self, rng):
        x = random_sym(4, rng)
        p = proj_pk(2, x)
        np.testing.assert_array_equal(p[:2, :2], x[:2, :2])
        assert np.count_nonzero(p[2:]) == 0 and np.count_nonzero(p[:, 2:]) == 0

    def test_padded_inverse(self, rng):
        x = random_spd(3, rng)
        np.testing.assert_allclose(padded_block_inverse(3, x), np.linalg.inv(x), atol=1e-12)
        np.testing.assert_array_equal(padded_block_inverse(2, np.eye(3)), frame_sum(2, 3))
        b = padded_block_inverse(2, x)
        np.testing.assert_allclose((b @ x)[:2, :2], np.eye(2), atol=1e-12)

    def test_padded_inverse_singular(self):
        x = np.array([[0.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
        with pytest.raises(ConeDomainError):
            padded_block_inverse(1, x)

    def test_transport_identity(self, rng):
        # (P_k x)^-1 = L^-T J_k L^-1 with x = L L^T
        x = random_spd(5, rng)
        low = np.linalg.cholesky(x)
        linv = np.linalg.inv(low)
        for k in range(1, 6):
            np.testing.assert_allclose(padded_block_inverse(k, x), linv.T @ frame_sum(k, 5) @ linv, atol=1e-10)


class TestReweight:
    def test_constant(self, rng):
        np.testing.assert_allclose(peirce_reweight_operator(np.full(4, 2.5)), 2.5 * np.eye(10), atol=1e-14)

    def test_rank2(self):
        x = np.array([[1.0, 2.0], [2.0, 3.0]])
        out = apply(peirce_reweight_operator([5.0, 7.0]), x)
        np.testing.assert_allclose(out, [[5.0, 14.0], [14.0, 21.0]], atol=1e-14)

    def test_random(self, rng):
        q, x = rng.normal(size=4), random_sym(4, rng)
        expected = np.array([[x[i, j] * q[max(i, j)] for j in range(4)] for i in range(4)])
        np.testing.assert_allclose(peirce_reweight(q, x), expected)
        np.testing.assert_allclose(apply(peirce_reweight_operator(q), x), expected, atol=1e-12)


class TestHPrime:
    def test_identity_direction(self):
        np.testing.assert_allclose(hprime_at_e(np.eye(3)), 2 * np.eye(6), atol=1e-14)

    def test_off_diagonal_direction(self):
        hval = 0.9
        h = hval * np.array([[0.0, 1.0], [1.0, 0.0]])
        op = hprime_at_e(h)
        np.testing.assert_allclose(apply(op, np.eye(2)), h, atol=1e-15)
        eps, xi = 0.3, 1 / np.sqrt(2)
        x12 = xi * np.array([[0.0, 1.0], [1.0, 0.0]])
        x = np.eye(2) / 2 + eps * x12
        np.testing.assert_allclose(apply(op, x), h / 2 + eps * inner(h, x12) * frame(2)[1], atol=1e-15)

    def test_finite_differences(self, rng):
        for r in (2, 3, 4):
            h = random_sym(r, rng)
            assert np.linalg.norm(hprime_at_e(h) - hprime_fd(h), 2) < 1e-6
