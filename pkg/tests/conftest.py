"""Independent oracles: plain-list polynomial code that shares nothing with
the package's series implementation."""

import pytest


def poly_mul(a, b, N):
    out = [0] * (N + 1)
    for i, x in enumerate(a[: N + 1]):
        if x:
            for j, y in enumerate(b[: N + 1 - i]):
                out[i + j] += x * y
    return out


def product_oracle(factors, N):
    """Expand prod (1 - s q^e) over (s, e) pairs by repeated multiplication."""
    out = [1] + [0] * N
    for s, e in factors:
        f = [0] * (N + 1)
        f[0] = 1
        if e <= N:
            f[e] -= s
        out = poly_mul(out, f, N)
    return out


def eta_oracle(m, N):
    return product_oracle([(1, m * k) for k in range(1, N // m + 1)], N)


def recurrence_inverse(c, N):
    """y_n = -sum_{k=1..n} c_k y_{n-k}, for c_0 = 1."""
    assert c[0] == 1
    y = [1]
    for n in range(1, N + 1):
        y.append(-sum(c[k] * y[n - k] for k in range(1, n + 1)))
    return y


def psi_oracle(t, N):
    """Psi(-q^t, q) by direct bilateral enumeration of the summand."""
    c = [0] * (N + 1)
    for n in range(-N - 2, N + 3):
        tu, td = n * (n + 1) // 2, n * (n - 1) // 2
        e = t * tu + td
        if 0 <= e <= N:
            s = (-1) ** tu
            c[e] += s if n >= 0 else -s
    return c


@pytest.fixture
def oracles():
    return {
        "poly_mul": poly_mul,
        "product": product_oracle,
        "eta": eta_oracle,
        "inverse": recurrence_inverse,
        "psi": psi_oracle,
    }
