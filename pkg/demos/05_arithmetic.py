"""
Divisor sums, Legendre symbols and quadratic forms
==================================================

The coefficients of f3^6/f1^2 have a closed form via sigma(3n+2)/3,
and the p-adic valuation of 3n+2 decides representability by
x^2+y^2 and 2x^2+y^2 along the prime-power progressions.
"""

from falsetheta import evaluate
from falsetheta.arith import is_represented, legendre, nu_p, valuation_parity_audit, wang_a1

s = evaluate("f3^6/f1^2", 20).tolist()
print("series :", s)
print("closed :", [wang_a1(n) for n in range(21)])

print("(-1/7) =", legendre(-1, 7), " (-2/7) =", legendre(-2, 7))
print("nu_7(119) =", nu_p(119, 7))
print("119 as x^2+y^2:", is_represented("x^2+y^2", 119),
      " as 2x^2+y^2:", is_represented("2x^2+y^2", 119))

print(valuation_parity_audit(7, 0, 500).summary())
print(valuation_parity_audit(23, 0, 200).summary())
