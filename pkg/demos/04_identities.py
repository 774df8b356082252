"""
Checking q-series identities
============================

Each catalog entry is a pair of expressions compared coefficientwise,
either exactly or modulo a small power of two.
"""

from falsetheta import catalog, evaluate, verify_identity

for entry in catalog()[:8]:
    r = verify_identity(entry)
    print(f"{entry.name:20s} {r.status}  {entry.lhs} == {entry.rhs}")

# an ad hoc pair, both sides given as expression text
print(verify_identity(("f1^2", "f2", 2), 500).summary())

# and a false one, reported with the first mismatch
r = verify_identity(("f1", "f2", 0), 10)
print(r.summary(), r.violations, r.info["window"])

# expressions evaluate directly too
print(evaluate("f3^3/f1", 10).tolist())
