"""
Theta and false theta functions
===============================

Compare the bilateral sum with the triple product, and split the
theta series at q^5 into its two halves A and B.
"""

from falsetheta import SignedMonomial, false_theta_psi, named_series, theta_f
from falsetheta.series import add, sub

N = 60
a, b = SignedMonomial(-1, 5), SignedMonomial(1, 1)

as_sum = theta_f(a, b, N, form="sum")
as_product = theta_f(a, b, N, form="product")
print("sum == product:", as_sum == as_product)

A = named_series("A", N)
B = named_series("B", N)
print("A   :", {n: v for n, v in enumerate(A.tolist()) if v})
print("B   :", {n: v for n, v in enumerate(B.tolist()) if v})

# theta is A + B, the false theta is A - B
print("theta == A+B:", as_sum == add(A, B))
print("psi   == A-B:", false_theta_psi(a, b, N) == sub(A, B))
