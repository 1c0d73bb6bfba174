"""Exact rational and number-field arithmetic.

Rationals are :class:`fractions.Fraction`.  A number field is ``Q[t]/(h)`` for
a monic squarefree ``h``; its elements are reduced coefficient vectors, so
equality is coefficient-wise.  :class:`UPoly` works over either ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import isqrt

import mpmath

from . import modp
from .errors import DivByZero, FieldMismatch, NotAField, ZeroPolynomial

Rat = Fraction


def rat(value) -> Fraction:
    """Parse ``"p/q"``, ints and Fractions into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, NFElem) and value.is_rational():
        return value.to_rational()
    raise TypeError(f"cannot interpret {value!r} as a rational")


def rat_str(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# univariate polynomials


class UPoly:
    """Dense univariate polynomial, constant term first.

    ``ring`` is ``None`` for rational coefficients or a :class:`NumberField`.
    """

    __slots__ = ("coeffs", "ring")

    def __init__(self, coeffs, ring: NumberField | None = None):
        if ring is None:
            cs = [c if isinstance(c, NFElem) else rat(c) for c in coeffs]
            if any(isinstance(c, NFElem) for c in cs):
                ring = next(c.field for c in cs if isinstance(c, NFElem))
        if ring is not None:
            cs = [ring(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.ring = ring

    # construction helpers
    def _new(self, coeffs):
        return UPoly(coeffs, self.ring)

    def _zero(self):
        return Fraction(0) if self.ring is None else self.ring.zero

    def _one(self):
        return Fraction(1) if self.ring is None else self.ring.one

    @classmethod
    def t(cls, ring=None):
        return cls([0, 1], ring)

    # basic properties
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        if not isinstance(other, UPoly):
            if self.degree <= 0:
                return (self.coeffs[0] if self.coeffs else 0) == other
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "UPoly(0)"
        terms = []
        for k, c in reversed(list(enumerate(self.coeffs))):
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            cs = str(c)
            terms.append(cs if not mono else (mono if c == 1 else f"({cs})*{mono}"))
        return "UPoly(" + " + ".join(terms) + ")"

    def _lift(self, other):
        if isinstance(other, UPoly):
            if self.ring is not None and other.ring is not None and self.ring != other.ring:
                raise FieldMismatch("polynomials over different fields")
            return other
        return self._new([other])

    def _unify_ring(self, other):
        return self.ring if self.ring is not None else other.ring

    def __add__(self, other):
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        ring = self._unify_ring(other)
        zero = Fraction(0) if ring is None else ring.zero
        return UPoly([(a[i] if i < len(a) else zero) + (b[i] if i < len(b) else zero) for i in range(n)], ring)

    __radd__ = __add__

    def __neg__(self):
        return self._new([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        ring = self._unify_ring(other)
        if not self.coeffs or not other.coeffs:
            return UPoly([], ring)
        zero = Fraction(0) if ring is None else ring.zero
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UPoly(out, ring)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        result = self._new([self._one()])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = self._lift(other)
        if other.is_zero():
            raise DivByZero("polynomial division by zero")
        ring = self._unify_ring(other)
        rem = list(self.coeffs)
        dg = other.degree
        inv_lc = 1 / other.lc if ring is None else other.lc.inverse()
        zero = Fraction(0) if ring is None else ring.zero
        quo = [zero] * max(len(rem) - dg, 0)
        while len(rem) - 1 >= dg and rem:
            shift = len(rem) - 1 - dg
            c = rem[-1] * inv_lc
            quo[shift] = c
            for i, b in enumerate(other.coeffs):
                rem[i + shift] = rem[i + shift] - c * b
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return UPoly(quo, ring), UPoly(rem, ring)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> UPoly:
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("division is not exact")
        return q

    def monic(self) -> UPoly:
        if self.is_zero():
            return self
        inv = 1 / self.lc if self.ring is None else self.lc.inverse()
        return self._new([c * inv for c in self.coeffs])

    def derivative(self) -> UPoly:
        return self._new([c * k for k, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation; ``x`` may be anything closed under + and *."""
        acc = UPoly([], x.ring or self.ring) if isinstance(x, UPoly) else None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        return self._zero() if acc is None else acc

    def map_coeffs(self, fn, ring=None) -> UPoly:
        return UPoly([fn(c) for c in self.coeffs], ring)

    def to_field(self, field: NumberField) -> UPoly:
        return UPoly([field(c) for c in self.coeffs], field)

    def is_rational(self) -> bool:
        return self.ring is None or all(c.is_rational() for c in self.coeffs)

    def to_rational(self) -> UPoly:
        if self.ring is None:
            return self
        return UPoly([c.to_rational() for c in self.coeffs])


def poly_gcd(f: UPoly, g: UPoly) -> UPoly:
    """Monic gcd by the Euclidean algorithm (gcd(0, 0) = 0)."""
    if f.ring is None and g.ring is not None:
        f = f.to_field(g.ring)
    elif g.ring is None and f.ring is not None:
        g = g.to_field(f.ring)
    a, b = f.monic(), g.monic()
    while not b.is_zero():
        a, b = b, (a % b).monic()
    return a.monic()


def poly_xgcd(f: UPoly, g: UPoly):
    """Return ``(d, u, v)`` with ``u*f + v*g = d`` and ``d`` monic."""
    r0, r1 = f, g
    s0, s1 = f._new([f._one()]), f._new([])
    t0, t1 = f._new([]), f._new([f._one()])
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = 1 / r0.lc if r0.ring is None else r0.lc.inverse()
    return r0 * inv, s0 * inv, t0 * inv


def squarefree_part(f: UPoly) -> UPoly:
    if f.is_zero():
        raise ZeroPolynomial("squarefree part of the zero polynomial")
    if f.degree == 0:
        return f.monic()
    return f.exact_div(poly_gcd(f, f.derivative())).monic()


def is_squarefree(f: UPoly) -> bool:
    return poly_gcd(f, f.derivative()).degree == 0


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(f: UPoly) -> list[Fraction]:
    """Distinct rational roots of a polynomial with rational coefficients, ascending."""
    f = f.to_rational()
    if f.is_zero():
        raise ZeroPolynomial("every rational is a root of the zero polynomial")
    roots = []
    cs = list(f.coeffs)
    if cs and cs[0] == 0:
        roots.append(Fraction(0))
        while cs and cs[0] == 0:
            cs.pop(0)
    if len(cs) <= 1:
        return roots
    den = 1
    for c in cs:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in cs]
    g = UPoly(cs)
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            if _gcd(p, q) != 1:
                continue
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if g(cand) == 0 and cand not in roots:
                    roots.append(cand)
    return sorted(roots)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _possible_factor_degrees(int_coeffs: list[int], n: int, trials: int = 25) -> set[int]:
    # Degrees of rational factors must be subset sums of the mod-p factor
    # degrees for every good prime; intersect over a few primes.
    possible = set(range(n + 1))
    used = 0
    for p in modp.primes():
        if used >= trials or possible == {0, n}:
            break
        if int_coeffs[-1] % p == 0:
            continue
        red = modp.reduce_mod(int_coeffs, p)
        if len(red) - 1 != n or not modp.is_squarefree_mod(red, p):
            continue
        used += 1
        sums = {0}
        for d in modp.distinct_degree_pattern(red, p):
            sums |= {s + d for s in sums}
        possible &= sums
        if p > 2000:
            break
    return possible


# ---------------------------------------------------------------------------
# number fields


class NumberField:
    """``Q[t]/(minpoly)`` with a monic squarefree minimal polynomial.

    Build with :func:`nf_new`; direct construction skips validation.
    """

    def __init__(self, minpoly: UPoly, irreducibility: str = "asserted"):
        self.minpoly = minpoly
        self.degree = minpoly.degree
        self.irreducibility = irreducibility
        self._h = minpoly.coeffs
        self._key = tuple(minpoly.coeffs)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self._key == other._key

    def __hash__(self):
        return hash(("NumberField", self._key))

    def __repr__(self):
        return f"NumberField({self.minpoly!r})"

    @cached_property
    def _reduction_table(self):
        # rows: t^k for k = d .. 2d-2 written in the power basis
        d = self.degree
        table = []
        cur = [-c for c in self._h[:d]]  # t^d
        for _ in range(d, 2 * d - 1):
            table.append(cur)
            top = cur[-1]
            nxt = [Fraction(0)] + cur[:-1]
            cur = [nxt[i] - top * self._h[i] for i in range(d)]
        return table

    def __call__(self, value) -> NFElem:
        if isinstance(value, NFElem):
            if value.field is not self and value.field != self:
                if value.is_rational():
                    return self.from_rational(value.to_rational())
                raise FieldMismatch("element belongs to a different field")
            return value
        if isinstance(value, (list, tuple)):
            cs = [rat(c) for c in value]
            if len(cs) > self.degree:
                return NFElem(self, self._reduce(cs))
            return NFElem(self, tuple(cs) + (Fraction(0),) * (self.degree - len(cs)))
        return self.from_rational(rat(value))

    def from_rational(self, q) -> NFElem:
        if self.degree == 1:
            return NFElem(self, (Fraction(q),))
        return NFElem(self, (Fraction(q),) + (Fraction(0),) * (self.degree - 1))

    @cached_property
    def zero(self) -> NFElem:
        return self.from_rational(0)

    @cached_property
    def one(self) -> NFElem:
        return self.from_rational(1)

    @cached_property
    def gen(self) -> NFElem:
        """The class of ``t``."""
        return self([0, 1])

    def _reduce(self, cs):
        d = self.degree
        cs = list(cs)
        if len(cs) <= d:
            return tuple(cs) + (Fraction(0),) * (d - len(cs))
        if d == 1:
            # t = -h0
            root = -self._h[0]
            acc = Fraction(0)
            for c in reversed(cs):
                acc = acc * root + c
            return (acc,)
        out = cs[:d]
        table = self._reduction_table
        for k in range(d, len(cs)):
            c = cs[k]
            if c:
                row = table[k - d]
                for i in range(d):
                    out[i] += c * row[i]
        return tuple(out)

    def to_json(self):
        return {"minpoly": [rat_str(c) for c in self.minpoly.coeffs]}


_RATIONALS = None


def rationals() -> NumberField:
    """The field Q, presented as ``Q[t]/(t - 1)``."""
    global _RATIONALS
    if _RATIONALS is None:
        _RATIONALS = NumberField(UPoly([-1, 1]), irreducibility="verified")
    return _RATIONALS


def nf_new(minpoly) -> NumberField:
    """Validate ``minpoly`` and return the field it defines.

    Squarefreeness and the absence of rational roots are checked.  Degree 2
    and 3 fields are then known irreducible; higher degrees get a mod-p
    factor-degree sieve and otherwise carry ``irreducibility="asserted"``.
    """
    if not isinstance(minpoly, UPoly):
        minpoly = UPoly(minpoly)
    if minpoly.ring is not None:
        if not minpoly.is_rational():
            raise NotAField("minimal polynomial must have rational coefficients")
        minpoly = minpoly.to_rational()
    if minpoly.degree < 1:
        raise NotAField("minimal polynomial must have degree >= 1")
    if minpoly.lc != 1:
        raise NotAField("minimal polynomial must be monic")
    if minpoly.coeffs == (Fraction(-1), Fraction(1)):
        return rationals()
    if not is_squarefree(minpoly):
        raise NotAField("minimal polynomial is not squarefree")
    status = "verified"
    if minpoly.degree >= 2:
        if rational_roots(minpoly):
            raise NotAField("minimal polynomial has a rational root")
        if minpoly.degree >= 4:
            ints, _ = modp.integral_monic(minpoly.coeffs)
            degs = _possible_factor_degrees(ints, minpoly.degree)
            status = "verified" if degs == {0, minpoly.degree} else "asserted"
    return NumberField(minpoly, irreducibility=status)


class NFElem:
    """Element of a number field as a reduced coefficient vector."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: NumberField, coeffs):
        self.field = field
        self.coeffs = tuple(coeffs)
        self._hash = None

    def _coerce(self, other):
        if isinstance(other, NFElem):
            if other.field is not self.field and other.field != self.field:
                if other.is_rational():
                    return self.field.from_rational(other.to_rational())
                if self.is_rational():
                    return None
                raise FieldMismatch("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field.from_rational(other)
        return None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def __eq__(self, other):
        if isinstance(other, NFElem):
            if other.field is self.field or other.field == self.field:
                return self.coeffs == other.coeffs
            return self.is_rational() and other.is_rational() and self.coeffs[0] == other.coeffs[0]
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs[0]) if self.is_rational() else hash(self.coeffs)
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        if self.is_rational():
            return rat_str(self.coeffs[0])
        parts = []
        for k, c in enumerate(self.coeffs):
            if c:
                mono = "" if k == 0 else ("θ" if k == 1 else f"θ^{k}")
                parts.append(rat_str(c) + (("*" + mono) if mono else ""))
        return "(" + " + ".join(parts) + ")"

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElem(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return NFElem(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElem(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.field.degree
        if d == 1:
            return NFElem(self.field, (self.coeffs[0] * o.coeffs[0],))
        if o.is_rational():
            c = o.coeffs[0]
            return NFElem(self.field, tuple(a * c for a in self.coeffs))
        if self.is_rational():
            c = self.coeffs[0]
            return NFElem(self.field, tuple(c * b for b in o.coeffs))
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        return NFElem(self.field, self.field._reduce(prod))

    __rmul__ = __mul__

    def inverse(self) -> NFElem:
        if self.is_zero():
            raise DivByZero("inverse of zero")
        if self.is_rational():
            return self.field.from_rational(1 / self.coeffs[0])
        g, u, _ = poly_xgcd(UPoly(self.coeffs), self.field.minpoly)
        if g.degree != 0:
            # only possible when the defining polynomial is reducible
            raise NotAField("element is a zero divisor; minimal polynomial is reducible")
        return self.field(list(u.coeffs))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def as_poly(self) -> UPoly:
        return UPoly(self.coeffs)

    def mult_matrix(self) -> list[list[Fraction]]:
        """Matrix of multiplication by ``self`` on the power basis (columns = images)."""
        d = self.field.degree
        cols = []
        basis = self.field.one
        for _ in range(d):
            cols.append((self * basis).coeffs)
            basis = basis * self.field.gen
        return [[cols[j][i] for j in range(d)] for i in range(d)]

    def norm(self) -> Fraction:
        return _det_fraction(self.mult_matrix())

    def trace(self) -> Fraction:
        m = self.mult_matrix()
        return sum((m[i][i] for i in range(len(m))), Fraction(0))

    def to_json(self):
        return [rat_str(c) for c in self.coeffs]


def _det_fraction(m):
    m = [list(row) for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] / m[c][c]
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return det


def nf_arith(a: NFElem, b: NFElem, op: str) -> NFElem:
    if a.field != b.field:
        raise FieldMismatch("operands lie in different fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise DivByZero("division by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# certified complex embeddings


@dataclass(frozen=True)
class EmbeddingBox:
    """Axis-aligned dyadic box holding exactly one complex root of the minpoly."""

    real_lo: Fraction
    real_hi: Fraction
    imag_lo: Fraction
    imag_hi: Fraction
    precision_bits: int

    @property
    def midpoint(self) -> tuple[Fraction, Fraction]:
        return ((self.real_lo + self.real_hi) / 2, (self.imag_lo + self.imag_hi) / 2)

    @property
    def is_real(self) -> bool:
        # Boxes symmetric about the real axis hold a self-conjugate root.
        return self.imag_lo == -self.imag_hi

    def contains(self, re, im) -> bool:
        return self.real_lo <= re <= self.real_hi and self.imag_lo <= im <= self.imag_hi

    def approx(self) -> mpmath.mpc:
        re, im = self.midpoint
        return mpmath.mpc(mpmath.mpf(re.numerator) / re.denominator, mpmath.mpf(im.numerator) / im.denominator)

    def evaluate(self, elem: NFElem) -> mpmath.mpc:
        """Approximate image of ``elem`` under this embedding."""
        z = self.approx()
        acc = mpmath.mpc(0)
        for c in reversed(elem.coeffs):
            acc = acc * z + mpmath.mpf(c.numerator) / c.denominator
        return acc

    def to_json(self):
        return {
            "real": [rat_str(self.real_lo), rat_str(self.real_hi)],
            "imag": [rat_str(self.imag_lo), rat_str(self.imag_hi)],
            "precision_bits": self.precision_bits,
        }


def _to_dyadic(x: mpmath.mpf, bits: int) -> Fraction:
    scaled = int(mpmath.nint(x * mpmath.mpf(2) ** bits))
    return Fraction(scaled, 2**bits)


def _cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _sqrt_upper(q: Fraction, bits: int) -> Fraction:
    """Dyadic upper bound for sqrt(q), accurate to about 2**-bits."""
    scale = 4**bits
    num = q.numerator * scale
    v = -(-num // q.denominator)
    r = isqrt(v)
    if r * r < v:
        r += 1
    return Fraction(r, 2**bits)


def _try_certify(coeffs, approx, bits):
    n = len(coeffs) - 1
    centers = []
    for z in approx:
        re = _to_dyadic(z.real, bits)
        im = _to_dyadic(z.imag, bits)
        if abs(z.imag) < mpmath.mpf(2) ** (-(bits // 2)):
            im = Fraction(0)
        centers.append((re, im))
    if len(set(centers)) != n:
        return None
    radii = []
    for i, zi in enumerate(centers):
        val = (Fraction(0), Fraction(0))
        for c in reversed(coeffs):
            val = _cmul(val, zi)
            val = (val[0] + c, val[1])
        den = (Fraction(1), Fraction(0))
        for j, zj in enumerate(centers):
            if j != i:
                den = _cmul(den, (zi[0] - zj[0], zi[1] - zj[1]))
        den_abs2 = den[0] ** 2 + den[1] ** 2
        if den_abs2 == 0:
            return None
        w_abs2 = (val[0] ** 2 + val[1] ** 2) / den_abs2
        radii.append(_sqrt_upper(n * n * w_abs2, bits + 8))
    boxes = []
    for (re, im), r in zip(centers, radii):
        boxes.append((re - r, re + r, im - r, im + r))
    for i in range(n):
        for j in range(i + 1, n):
            a, b = boxes[i], boxes[j]
            if not (a[1] < b[0] or b[1] < a[0] or a[3] < b[2] or b[3] < a[2]):
                return None
    return boxes


def embeddings(field: NumberField, precision_bits: int = 53) -> list[EmbeddingBox]:
    """Certified enclosures of every complex root of ``field.minpoly``.

    Approximations come from mpmath; each is certified by a Weierstrass
    inclusion disk computed in exact arithmetic.  Disjoint boxes around the
    disks isolate the roots one per box.
    """
    if precision_bits < 16:
        raise ValueError("precision_bits must be at least 16")
    coeffs = list(field.minpoly.coeffs)
    n = len(coeffs) - 1
    if n == 1:
        root = -coeffs[0]
        return [EmbeddingBox(root, root, Fraction(0), Fraction(0), precision_bits)]
    target = Fraction(1, 2 ** precision_bits)
    bits = precision_bits + 16
    while True:
        with mpmath.workprec(2 * bits + 64):
            approx = mpmath.polyroots(
                [mpmath.mpf(c.numerator) / c.denominator for c in reversed(coeffs)],
                maxsteps=200 + 4 * bits,
                extraprec=2 * bits,
            )
            approx = [mpmath.mpc(z) for z in approx]
            boxes = _try_certify(coeffs, approx, bits)
        if boxes is not None and all(b[1] - b[0] <= target and b[3] - b[2] <= target for b in boxes):
            break
        bits *= 2
    out = [EmbeddingBox(b[0], b[1], b[2], b[3], precision_bits) for b in boxes]
    out.sort(key=lambda b: b.midpoint)
    return out
