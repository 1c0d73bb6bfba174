"""Polynomials over prime fields, just enough for factorization patterns.

Polynomials are lists of ints mod p, constant term first, no trailing zeros.
"""

from fractions import Fraction
from math import lcm


def _trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def reduce_mod(coeffs, p):
    return _trim([c % p for c in coeffs])


def _sub(f, g, p):
    n = max(len(f), len(g))
    out = [((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n)]
    return _trim(out)


def _mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _trim(out)


def _divmod(f, g, p):
    if not g:
        raise ZeroDivisionError("polynomial division by zero mod p")
    f = list(f)
    inv = pow(g[-1], -1, p)
    dg = len(g) - 1
    q = [0] * max(len(f) - dg, 0)
    while len(f) - 1 >= dg and f:
        shift = len(f) - 1 - dg
        c = f[-1] * inv % p
        q[shift] = c
        for i, b in enumerate(g):
            f[i + shift] = (f[i + shift] - c * b) % p
        _trim(f)
    return _trim(q), f


def _monic(f, p):
    if not f:
        return f
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def gcd_mod(f, g, p):
    f, g = _trim(list(f)), _trim(list(g))
    while g:
        f, g = g, _divmod(f, g, p)[1]
    return _monic(f, p)


def _powmod(base, e, mod, p):
    result = [1]
    base = _divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _divmod(_mul(result, base, p), mod, p)[1]
        base = _divmod(_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def distinct_degree_pattern(f, p):
    """Degrees of the irreducible factors of a squarefree ``f`` mod ``p``.

    Uses distinct-degree factorization; equal-degree splitting is not needed
    because only the degree multiset is reported.  Sorted descending.
    """
    f = _monic(_trim(list(f)), p)
    degrees = []
    x = [0, 1]
    h = x
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = _powmod(h, p, f, p)
        g = gcd_mod(f, _sub(h, x, p), p)
        if len(g) > 1:
            degrees.extend([d] * ((len(g) - 1) // d))
            f = _divmod(f, g, p)[0]
            h = _divmod(h, f, p)[1] if len(f) > 1 else h
    if len(f) > 1:
        degrees.append(len(f) - 1)
    return sorted(degrees, reverse=True)


def is_squarefree_mod(f, p):
    f = reduce_mod(f, p)
    df = _trim([(i * c) % p for i, c in enumerate(f)][1:])
    if not df:
        return False
    return len(gcd_mod(f, df, p)) == 1


def integral_monic(coeffs):
    """Rescale a monic rational polynomial to a monic integer polynomial.

    Returns ``(int_coeffs, scale)`` where ``int_coeffs`` are the coefficients
    of ``scale**n * f(t / scale)``.
    """
    coeffs = [Fraction(c) for c in coeffs]
    n = len(coeffs) - 1
    scale = 1
    for c in coeffs:
        scale = lcm(scale, c.denominator)
    # scale**(n-k) * c_k is integral once scale clears every denominator
    out = [coeffs[k] * scale ** (n - k) for k in range(n + 1)]
    assert all(c.denominator == 1 for c in out)
    return [int(c) for c in out], scale


def primes():
    """Infinite generator of primes."""
    yield 2
    found = [2]
    k = 3
    while True:
        if all(k % q for q in found if q * q <= k):
            found.append(k)
            yield k
        k += 2
