"""Independent reference implementations used by the tests."""

from fractions import Fraction
from itertools import product

import sympy

from boundgen.lattice import hnf

T = sympy.Symbol("t")


def to_sympy_poly(p):
    """UPoly over Q -> sympy Poly in t."""
    coeffs = [c if isinstance(c, Fraction) else c.to_rational() for c in p.coeffs]
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)] or [0], T)


def poly_coeffs(sp):
    """sympy Poly -> list of Fractions, constant first."""
    return [Fraction(int(c.p), int(c.q)) for c in reversed(sp.all_coeffs())]


def to_sympy_matrix(m):
    return sympy.Matrix([[sympy.Rational(x.to_rational().numerator, x.to_rational().denominator) for x in row]
                         for row in m.rows])


def box_lattice(values, box):
    """HNF of all exponent vectors in the box giving a product equal to 1 (plain Fractions)."""
    rels = []
    for e in product(range(-box, box + 1), repeat=len(values)):
        val = Fraction(1)
        for v, k in zip(values, e):
            val *= Fraction(v) ** k
        if val == 1 and any(e):
            rels.append(list(e))
    return [tuple(r) for r in hnf(rels, len(values))] if rels else []


def naive_J(gamma, gens, m_range, box):
    """Every m in range with gamma^m in the full product set; m -> lex-least tuple."""
    products = {}
    for e in product(range(-box, box + 1), repeat=len(gens)):
        mat = gens[0].identity(gamma.n, gamma.field)
        for g, a in zip(gens, e):
            mat = mat * g**a
        products.setdefault(mat.key, e)
    out = {}
    for m in range(-m_range, m_range + 1):
        k = (gamma**m).key
        if k in products:
            out[m] = products[k]
    return out


def mpoly_to_sympy(p):
    """MPoly over Q -> sympy expression in symbols named like its variables."""
    syms = sympy.symbols(list(p.vars)) if p.vars else []
    if len(p.vars) == 1:
        syms = [syms]
    expr = sympy.Integer(0)
    for exp, c in p.terms.items():
        q = c.to_rational()
        term = sympy.Rational(q.numerator, q.denominator)
        for s, k in zip(syms, exp):
            term *= s**k
        expr += term
    return sympy.expand(expr)


def random_invertible(rng, n, field, lo=-2, hi=2):
    from boundgen.nflinalg import NFMatrix

    while True:
        m = NFMatrix(field, [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])
        if not m.det().is_zero():
            return m


def random_case2_instance(rng, field):
    """(g, g_list with None at s, A, s, n) for a random two-factor Case-2 product."""
    from boundgen.nflinalg import NFMatrix, unipotent_power_matrix

    n = rng.choice([2, 3])
    while True:
        upper = NFMatrix(field, [[1 if i == j else (rng.randint(-2, 2) if j > i else 0) for j in range(n)]
                                 for i in range(n)])
        if not upper.is_identity():
            break
    h = random_invertible(rng, n, field)
    u = h * upper * h.inverse()
    s = rng.choice([1, 2])
    g = random_invertible(rng, n, field)
    gi = random_invertible(rng, n, field)
    g_list = [None, gi] if s == 1 else [gi, None]
    return g, g_list, unipotent_power_matrix(u), s, n
