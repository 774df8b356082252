"""
Congruences for the reciprocal of a false theta function
========================================================

Expand c5 = 1/psi(-q^5, q) modulo 8 and check the progressions that
carry its mod 8 and mod 4 congruences.
"""

import time

from falsetheta import CongruenceClaim, check_claim, named_series, theorem2_family
from falsetheta.congruence import required_order, unfold

t0 = time.perf_counter()
c5 = named_series("c5", 8192, 8)
print(f"c5 mod 8 to order 8192 in {time.perf_counter() - t0:.2f}s")
print("first coefficients:", c5.tolist()[:12])

for A, B, M, n_max in [(32, 31, 8, 255), (128, 123, 8, 63), (512, 491, 8, 15),
                       (64, 19, 4, 127), (256, 75, 4, 31)]:
    print(check_claim(c5, CongruenceClaim("c5", A, B, M), n_max).summary())

# a progression that should fail: c5(0) = 1 is odd
bad = check_claim(c5, CongruenceClaim("c5", 8, 0, 2), 10)
print(bad.summary(), "first violations:", bad.violations[:3])

# the prime-power family at p = 7 and its unfolding modulo 196
fam = theorem2_family(7, 0)
print(fam.name, "->", [u.B for u in unfold(fam)])
s = named_series("c5", required_order(fam, 280), 4)
print(check_claim(s, fam, 280).summary())
