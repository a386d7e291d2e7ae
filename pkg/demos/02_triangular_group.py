"""
Triangular group, generalized power and division algorithms
===========================================================

Every positive-definite ``x`` is ``t_u(e)`` for a unique lower-triangular
transform.  The generalized power ``Delta_s`` is multiplicative under this
group, and a division algorithm is a choice of ``g(y)`` with ``g(y)(y) = e``.
"""
import numpy as np

from rieszlab import cone as C
from rieszlab.verify import random_cone

rng = np.random.default_rng(2)
r = 3
x = random_cone(r, rng)

# Coordinates of x in E+: the diagonal and strict lower part of its Cholesky factor.
u = C.EPlusPoint.from_cone(x)
t = C.triangular_from_eplus(u)
print("u diag:", np.round(u.diag, 4), " u off:", np.round(u.off, 4))
print("|t_u(e) - x|                :", np.abs(t(np.eye(r)) - x).max())

# The same transform as a product of Frobenius transformations and P(diag u).
print("|Frobenius product - t_u|   :", np.abs(C.frobenius_product(u) - C.tu_operator(u)).max())

# Jacobian of u -> t_u(e): closed form against finite differences.
print("Jacobian closed form / FD   :", C.eplus_jacobian(u), C.eplus_jacobian_fd(u))

# Delta_s(t x) = Delta_s(t e) Delta_s(x) for triangular t.
s = np.array([0.7, -1.2, 2.0])
y = random_cone(r, rng)
lhs = C.log_gen_power(s, t(y))
rhs = C.log_gen_power(s, t(np.eye(r))) + C.log_gen_power(s, y)
print("log Delta_s(t y) - [...]    :", lhs - rhs)

# Two division algorithms.  Both send y to e; they differ by a rotation
# that depends on y, which matters for the quotient laws (see 05).
for tag in C.DIVISION_ALGORITHMS:
    g = C.division_algorithm(tag)(y)
    print(f"{tag:10s} g(y)(y) = e error: {np.abs(g(y) - np.eye(r)).max():.1e};  g(y)(x) =")
    print(np.round(g(x), 4))
