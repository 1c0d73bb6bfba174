"""Exact linear algebra over a number field.

Matrices are immutable and hashable; ``NFMatrix.key`` is the canonical
serialization used as a hash key in enumeration loops.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial

import mpmath

from .errors import DimensionMismatch, FieldMismatch, NotInvertible, NotSplit, NotUnipotent
from .qarith import (
    NFElem,
    NumberField,
    UPoly,
    embeddings,
    poly_gcd,
    poly_xgcd,
    rational_roots,
    rationals,
    squarefree_part,
)


class NFMatrix:
    __slots__ = ("field", "n", "rows", "_key")

    def __init__(self, field: NumberField, rows):
        self.field = field
        self.rows = tuple(tuple(field(x) for x in row) for row in rows)
        self.n = len(self.rows)
        if any(len(r) != self.n for r in self.rows):
            raise DimensionMismatch("matrix must be square")
        self._key = None

    @classmethod
    def from_rows(cls, rows, field: NumberField | None = None) -> NFMatrix:
        if field is None:
            field = next((x.field for row in rows for x in row if isinstance(x, NFElem)), None) or rationals()
        return cls(field, rows)

    @classmethod
    def identity(cls, n: int, field: NumberField | None = None) -> NFMatrix:
        field = field or rationals()
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, values, field: NumberField | None = None) -> NFMatrix:
        values = list(values)
        if field is None:
            field = next((x.field for x in values if isinstance(x, NFElem)), None) or rationals()
        n = len(values)
        return cls(field, [[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @property
    def key(self):
        if self._key is None:
            self._key = tuple(x.coeffs for row in self.rows for x in row)
        return self._key

    def __eq__(self, other):
        if not isinstance(other, NFMatrix):
            return NotImplemented
        return self.n == other.n and self.field == other.field and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return "NFMatrix(" + repr([list(r) for r in self.rows]) + ")"

    def _check(self, other):
        if self.n != other.n:
            raise DimensionMismatch("matrix dimensions differ")
        if self.field != other.field:
            raise FieldMismatch("matrices over different fields")

    def __add__(self, other):
        self._check(other)
        return NFMatrix(self.field, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._check(other)
        return NFMatrix(self.field, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return NFMatrix(self.field, [[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, NFMatrix):
            self._check(other)
            cols = list(zip(*other.rows))
            out = []
            for r in self.rows:
                row = []
                for c in cols:
                    acc = self.field.zero
                    for a, b in zip(r, c):
                        if a and b:
                            acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return NFMatrix(self.field, out)
        s = self.field(other)
        return NFMatrix(self.field, [[a * s for a in r] for r in self.rows])

    def __rmul__(self, other):
        s = self.field(other)
        return NFMatrix(self.field, [[s * a for a in r] for r in self.rows])

    def __pow__(self, e: int) -> NFMatrix:
        if e < 0:
            return self.inverse() ** (-e)
        result = NFMatrix.identity(self.n, self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def is_identity(self) -> bool:
        one, zero = self.field.one, self.field.zero
        return all(x == (one if i == j else zero) for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.rows for x in r)

    def is_upper_triangular(self) -> bool:
        return all(self.rows[i][j].is_zero() for i in range(self.n) for j in range(i))

    def is_diagonal(self) -> bool:
        return all(self.rows[i][j].is_zero() for i in range(self.n) for j in range(self.n) if i != j)

    def transpose(self) -> NFMatrix:
        return NFMatrix(self.field, list(zip(*self.rows)))

    def diagonal(self) -> list[NFElem]:
        return [self.rows[i][i] for i in range(self.n)]

    def det(self) -> NFElem:
        """Fraction-free Bareiss elimination."""
        m = [list(r) for r in self.rows]
        n = self.n
        sign = 1
        prev = self.field.one
        for k in range(n - 1):
            if m[k][k].is_zero():
                swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
                if swap is None:
                    return self.field.zero
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
            prev = m[k][k]
        d = m[n - 1][n - 1] if n else self.field.one
        return d if sign == 1 else -d

    def inverse(self) -> NFMatrix:
        n = self.n
        one, zero = self.field.one, self.field.zero
        m = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(self.rows)]
        for c in range(n):
            piv = next((r for r in range(c, n) if not m[r][c].is_zero()), None)
            if piv is None:
                raise NotInvertible("matrix is singular")
            m[c], m[piv] = m[piv], m[c]
            inv = m[c][c].inverse()
            m[c] = [x * inv for x in m[c]]
            for r in range(n):
                if r != c and not m[r][c].is_zero():
                    f = m[r][c]
                    m[r] = [a - f * b for a, b in zip(m[r], m[c])]
        return NFMatrix(self.field, [row[n:] for row in m])

    def is_invertible(self) -> bool:
        return not self.det().is_zero()

    def to_json(self):
        return {"n": self.n, "entries": [[x.to_json() for x in r] for r in self.rows]}

    @classmethod
    def from_json(cls, data, field: NumberField) -> NFMatrix:
        rows = data["entries"] if isinstance(data, dict) else data
        m = cls(field, rows)
        if isinstance(data, dict) and "n" in data and data["n"] != m.n:
            raise DimensionMismatch("declared n does not match entries")
        return m


def rref_kernel(rows, field: NumberField) -> list[list[NFElem]]:
    """Basis of the right kernel, each vector scaled so its first nonzero entry is 1."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if not m[i][c].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        lead = next(x for x in v if not x.is_zero())
        inv = lead.inverse()
        basis.append([x * inv for x in v])
    return basis


def charpoly(g: NFMatrix) -> UPoly:
    """Characteristic polynomial ``det(t I - g)`` by Berkowitz's division-free recursion."""
    n = g.n
    field = g.field
    a = [list(r) for r in g.rows]
    # vector of coefficients, highest degree first, for the leading 1x1 block
    vect = [field.one, -a[0][0]] if n else [field.one]
    for k in range(1, n):
        r_row = a[k][:k]
        s_col = [a[i][k] for i in range(k)]
        sub = [row[:k] for row in a[:k]]
        # Toeplitz column: 1, -a_kk, -R S, -R A S, ..., -R A^{k-1} S
        col = [field.one, -a[k][k]]
        v = s_col
        for _ in range(k):
            dot = field.zero
            for x, y in zip(r_row, v):
                dot = dot + x * y
            col.append(-dot)
            v = [sum((sub[i][j] * v[j] for j in range(k)), field.zero) for i in range(k)]
        new = []
        for i in range(k + 2):
            acc = field.zero
            for j in range(min(i, len(vect) - 1) + 1):
                if i - j < len(col):
                    acc = acc + col[i - j] * vect[j]
            new.append(acc)
        vect = new
    return UPoly(list(reversed(vect)), field)


def poly_at_matrix(p: UPoly, g: NFMatrix) -> NFMatrix:
    ident = NFMatrix.identity(g.n, g.field)
    acc = None
    for c in reversed(p.coeffs):
        term = ident * c
        acc = term if acc is None else acc * g + term
    return acc if acc is not None else ident * 0


def minpoly(g: NFMatrix) -> UPoly:
    """Least-degree monic annihilator from the first dependence among I, g, g^2, ..."""
    field = g.field
    n = g.n
    reduced = []  # (vector, pivot, combination expressing it in powers)
    power = NFMatrix.identity(n, field)
    for k in range(n + 1):
        vec = [x for r in power.rows for x in r]
        combo = [field.zero] * (k + 1)
        combo[k] = field.one
        for rv, pc, rcombo in reduced:
            c = vec[pc]
            if not c.is_zero():
                vec = [a - c * b for a, b in zip(vec, rv)]
                combo = [a - c * (rcombo[i] if i < len(rcombo) else field.zero) for i, a in enumerate(combo)]
        piv = next((i for i, x in enumerate(vec) if not x.is_zero()), None)
        if piv is None:
            return UPoly(combo, field).monic()
        inv = vec[piv].inverse()
        reduced.append(([x * inv for x in vec], piv, [x * inv for x in combo]))
        power = power * g
    raise AssertionError("Cayley-Hamilton guarantees a dependence by degree n")


def is_semisimple(g: NFMatrix) -> bool:
    m = minpoly(g)
    return poly_gcd(m, m.derivative()).degree == 0


@dataclass(frozen=True)
class JordanPair:
    semisimple_part: NFMatrix
    unipotent_part: NFMatrix
    sigma_poly: UPoly  # semisimple_part == sigma_poly(original)


def jordan_chevalley(g: NFMatrix) -> JordanPair:
    """Multiplicative Jordan decomposition ``g = sigma * upsilon``.

    The additive semisimple part is found by Newton iteration on the
    squarefree part of the minimal polynomial, carried out in
    ``K[t]/(minpoly)`` so that sigma is an explicit polynomial in ``g``.
    """
    if g.det().is_zero():
        raise NotInvertible("Jordan-Chevalley decomposition needs an invertible matrix")
    field = g.field
    m = minpoly(g)
    p = squarefree_part(m)
    dp = p.derivative()
    s = UPoly.t(field)
    while True:
        val = p(s) % m
        if val.is_zero():
            break
        d, u, _ = poly_xgcd(dp(s) % m, m)
        assert d.degree == 0, "p'(s) must be a unit modulo the minimal polynomial"
        s = (s - val * u) % m
    sigma = poly_at_matrix(s, g)
    upsilon = sigma.inverse() * g
    return JordanPair(sigma, upsilon, s)


@dataclass(frozen=True)
class EigenData:
    eigenvalues: tuple
    diagonalizer: NFMatrix | None


def _deflate(f: UPoly, lam) -> tuple[UPoly, int]:
    mult = 0
    lin = UPoly([-lam, 1], f.ring)
    while True:
        q, r = divmod(f, lin)
        if not r.is_zero():
            return f, mult
        f, mult = q, mult + 1


def _rationalize(x: mpmath.mpf, max_den: int = 10**12) -> Fraction | None:
    try:
        q = Fraction(mpmath.nstr(x, 60, min_fixed=-10**6, max_fixed=10**6)).limit_denominator(max_den)
    except ValueError:
        return None
    return q


def _numeric_field_roots(f: UPoly, field: NumberField, limit: int = 4096) -> list[NFElem]:
    """Propose roots of ``f`` in ``field`` from complex embeddings, then verify exactly.

    A root ``a = sum c_k theta^k`` satisfies ``V c = (sigma_j(a))_j`` for the
    Vandermonde matrix of the conjugates of theta; each choice of one root of
    ``sigma_j(f)`` per embedding gives a candidate ``c``.
    """
    d = field.degree
    if f.degree < 1:
        return []
    if f.degree ** d > limit:
        return []
    found = []
    with mpmath.workprec(256):
        boxes = embeddings(field, 200)
        thetas = [b.approx() for b in boxes]
        per_embedding = []
        for b in boxes:
            coeffs = [b.evaluate(c) for c in reversed(f.coeffs)]
            try:
                per_embedding.append(mpmath.polyroots(coeffs, maxsteps=400, extraprec=400))
            except mpmath.libmp.NoConvergence:
                return []
        vinv = mpmath.inverse(mpmath.matrix([[th**k for k in range(d)] for th in thetas]))
        for choice in product(*per_embedding):
            c = vinv * mpmath.matrix(list(choice))
            if any(abs(mpmath.im(c[k])) > mpmath.mpf(10) ** -30 for k in range(d)):
                continue
            qs = [_rationalize(mpmath.re(c[k])) for k in range(d)]
            if any(q is None for q in qs):
                continue
            cand = field(qs)
            if cand not in found and f(cand).is_zero():
                found.append(cand)
    return found


def roots_in_field(f: UPoly, candidates=()) -> list[NFElem]:
    """Distinct roots of ``f`` found in its coefficient field, each verified exactly."""
    field = f.ring
    roots: list[NFElem] = []

    def take(lam):
        lam = field(lam)
        if lam not in roots and f(lam).is_zero():
            roots.append(lam)

    if f.is_rational():
        for q in rational_roots(f.to_rational()):
            take(q)
    for c in candidates:
        take(c)
    rest = squarefree_part(f)
    for lam in roots:
        rest, _ = _deflate(rest, lam)
    if rest.degree >= 1 and field.degree > 1:
        for lam in _numeric_field_roots(rest, field):
            take(lam)
    return roots


def eigenvalues_in_field(g: NFMatrix, candidates=()) -> EigenData:
    """Eigenvalues lying in the ambient field, plus a diagonalizer when one exists.

    Raises :class:`NotSplit` carrying the unsplit factor of the characteristic
    polynomial when some eigenvalue is not found in the field.
    """
    field = g.field
    f = charpoly(g)
    if g.is_upper_triangular():
        distinct = []
        for x in g.diagonal():
            if x not in distinct:
                distinct.append(x)
    else:
        distinct = roots_in_field(f, candidates)
    rest = f
    mults = []
    for lam in distinct:
        rest, k = _deflate(rest, lam)
        mults.append(k)
    if rest.degree > 0:
        raise NotSplit(f"characteristic polynomial does not split over the field; factor {rest}", factor=rest)
    eigen = [lam for lam, k in zip(distinct, mults) for _ in range(k)]
    diagonalizer = None
    if is_semisimple(g):
        cols = []
        ordered = []
        for lam, k in zip(distinct, mults):
            shifted = g - NFMatrix.identity(g.n, field) * lam
            basis = rref_kernel(shifted.rows, field)
            assert len(basis) == k, "semisimple matrix must have full eigenspaces"
            cols.extend(basis)
            ordered.extend([lam] * k)
        diagonalizer = NFMatrix(field, [list(r) for r in zip(*cols)])
        eigen = ordered
    return EigenData(tuple(eigen), diagonalizer)


def order_eigendata(data: EigenData, first: NFElem) -> EigenData:
    """Reorder so that ``first`` is the leading eigenvalue (columns follow)."""
    idx = data.eigenvalues.index(first)
    perm = [idx] + [i for i in range(len(data.eigenvalues)) if i != idx]
    eig = tuple(data.eigenvalues[i] for i in perm)
    g = data.diagonalizer
    if g is not None:
        g = NFMatrix(g.field, [[row[i] for i in perm] for row in g.rows])
    return EigenData(eig, g)


class PolyMatrix:
    """Square matrix of univariate polynomials in ``z``."""

    def __init__(self, entries):
        self.entries = tuple(tuple(e for e in row) for row in entries)
        self.n = len(self.entries)

    def __call__(self, m) -> NFMatrix:
        field = self.entries[0][0].ring
        return NFMatrix(field, [[e(field(m)) for e in row] for row in self.entries])

    def degree(self) -> int:
        return max(e.degree for row in self.entries for e in row)

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.entries == other.entries

    def __repr__(self):
        return "PolyMatrix(" + repr([list(r) for r in self.entries]) + ")"


def binomial_poly(k: int, field: NumberField) -> UPoly:
    """``z (z-1) ... (z-k+1) / k!`` with exact coefficients."""
    p = UPoly([1], field)
    for i in range(k):
        p = p * UPoly([-i, 1], field)
    return p * field(Fraction(1, factorial(k)))


def unipotent_power_matrix(u: NFMatrix) -> PolyMatrix:
    """``A(z) = sum_{k<n} C(z, k) (u - I)^k``, so that ``A(m) = u**m`` for all integers m."""
    field = u.field
    n = u.n
    ident = NFMatrix.identity(n, field)
    nu = u - ident
    if not (nu**n).is_zero():
        raise NotUnipotent("(u - I)^n is not zero")
    entries = [[UPoly([], field) for _ in range(n)] for _ in range(n)]
    power = ident
    for k in range(n):
        b = binomial_poly(k, field)
        for i in range(n):
            for j in range(n):
                if not power[i, j].is_zero():
                    entries[i][j] = entries[i][j] + b * power[i, j]
        power = power * nu
    a = PolyMatrix(entries)
    for m in range(-2, 3):
        assert a(m) == u**m, "A(m) must reproduce u^m"
    return a
