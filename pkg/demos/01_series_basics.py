"""
Truncated power series basics
=============================

Build a few series, multiply, invert and dissect them.
"""

from falsetheta import eta, series
from falsetheta.series import dissect, invert, mul, reduce_mod

# f1 = (q;q)_inf, the pentagonal series
f1 = eta(1, 30)
print("f1          :", f1.tolist())

# its reciprocal counts partitions
p = invert(f1)
print("1/f1        :", p.tolist())
print("check       :", mul(f1, p).tolist()[:8], "...")

# even and odd parts of 1/f1
print("p(2n)       :", dissect(p, 2, 0).tolist())
print("p(2n+1)     :", dissect(p, 2, 1).tolist())

# the same series over Z/2: squaring is the Frobenius map
x = series([1, 1, 0, 1, 0, 0, 0], 2)
print("x^2 mod 2   :", mul(x, x).tolist())
print("p mod 2     :", reduce_mod(p, 2).tolist())
