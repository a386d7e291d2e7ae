"""
The Jordan algebra of symmetric matrices
========================================

Symmetric matrices with the product ``x o y = (xy + yx)/2`` form a Jordan
algebra.  This script walks through the operators the rest of the package is
built on: multiplication ``L(x)``, the quadratic representation ``P(x)``, the
Peirce decomposition and the box operator.
"""
import numpy as np

from rieszlab import jordan as J

rng = np.random.default_rng(1)
r = 3

# Elements are plain symmetric ndarrays.  The algebra is commutative but
# not associative.
a, b, c = (J.as_sym(rng.normal(size=(r, r))) for _ in range(3))
print("commutator  |ab - ba|      :", np.abs(J.jordan_product(a, b) - J.jordan_product(b, a)).max())
print("associator  |(ab)c - a(bc)|:", np.abs(J.jordan_product(J.jordan_product(a, b), c)
                                            - J.jordan_product(a, J.jordan_product(b, c))).max())

# Operators on E act on the orthonormal coordinates of ``vectorize``; for
# r = 3 they are 6 x 6 matrices.  P(x) = 2 L(x)^2 - L(x^2) is x h x.
P = J.quad_rep(a)
h = J.as_sym(rng.normal(size=(r, r)))
print("P(a)h vs a h a             :", np.abs(J.apply(P, h) - a @ h @ a).max())

# The spectrum of L(c) for an idempotent c sits in {0, 1/2, 1}; the three
# eigenspaces give the Peirce decomposition of E relative to c.
cidem = J.frame_sum(2, r)
print("spectrum of L(c1 + c2)     :", np.round(np.linalg.eigvalsh(J.lmap(cidem)), 12))
x1, xh, x0 = J.peirce_wrt_idempotent(h, cidem)
print("Peirce pieces of h (1, 1/2, 0):")
for name, part in (("E(c,1)", x1), ("E(c,1/2)", xh), ("E(c,0)", x0)):
    print(f"  {name:9s}\n", np.round(part, 3))

# With z in E(c1, 1/2), 2 z[]c1 is nilpotent of order three, which is why the
# Frobenius transformation exp(2 z[]c1) is a short polynomial.
z = np.zeros((r, r))
z[0, 1:] = z[1:, 0] = rng.normal(size=r - 1)
N = 2 * J.box_op(z, J.frame(r)[0])
print("|N^2|, |N^3|               :", np.abs(N @ N).max(), np.abs(N @ N @ N).max())
