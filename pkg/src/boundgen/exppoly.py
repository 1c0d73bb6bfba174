"""Multivariate polynomials over a number field and the elimination constructions.

``build_case1_poly`` and ``build_case2_poly`` produce the polynomial giving one
entry of a conjugated product of diagonalizable factors (with an optional
unipotent factor ``A(z)``); ``resultant_z`` eliminates ``z`` with a
Sylvester determinant.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    BadTruncation,
    DegenerateResultant,
    DimensionMismatch,
    FieldMismatch,
    IndexOutOfRange,
    NotInvertible,
    VarMismatch,
)
from .nflinalg import NFMatrix, PolyMatrix
from .qarith import NFElem, NumberField, rat_str


def case_var(i: int, j: int) -> str:
    """Name of the indeterminate standing for eigenvalue j of factor i (1-based)."""
    return f"x{i}_{j}"


class MPoly:
    """Sparse polynomial: exponent tuple -> nonzero coefficient."""

    __slots__ = ("vars", "terms", "field")

    def __init__(self, variables, terms, field: NumberField):
        self.vars = tuple(variables)
        self.field = field
        clean = {}
        for exp, c in terms.items():
            c = field(c)
            if not c.is_zero():
                clean[tuple(exp)] = c
        self.terms = clean

    # constructors
    @classmethod
    def zero(cls, variables, field):
        return cls(variables, {}, field)

    @classmethod
    def const(cls, c, variables, field):
        return cls(variables, {(0,) * len(variables): c}, field)

    @classmethod
    def var(cls, name, variables, field):
        variables = tuple(variables)
        if name not in variables:
            raise VarMismatch(f"{name} is not among {variables}")
        exp = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exp: field.one}, field)

    # inspection
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> NFElem:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * len(self.vars), self.field.zero)

    def degree_in(self, name: str) -> int:
        if name not in self.vars:
            return 0 if self.terms else -1
        k = self.vars.index(name)
        return max((e[k] for e in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self):
        """Terms in graded lexicographic order, largest first."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            if self.vars != other.vars:
                a, b = _unify(self, other)
                return a.terms == b.terms
            return self.terms == other.terms
        if isinstance(other, (int, NFElem)) or hasattr(other, "denominator"):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, exp) if k)
            if not mono:
                parts.append(repr(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c!r}*{mono}")
        return " + ".join(parts)

    # arithmetic
    def _other(self, other):
        if isinstance(other, MPoly):
            if other.field != self.field:
                raise FieldMismatch("polynomials over different fields")
            if other.vars != self.vars:
                raise VarMismatch(f"variables {self.vars} vs {other.vars}")
            return other
        return MPoly.const(other, self.vars, self.field)

    def __add__(self, other):
        other = self._other(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return MPoly(self.vars, terms, self.field)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        other = self._other(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                terms[e] = terms[e] + c if e in terms else c
        return MPoly(self.vars, terms, self.field)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = MPoly.const(1, self.vars, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # substitution
    def eval(self, assignment) -> NFElem:
        """Evaluate with every variable assigned (dict name -> value, or sequence)."""
        values = self._values(assignment, require_all=True)
        total = self.field.zero
        for exp, c in self.terms.items():
            term = c
            for v, k in zip(values, exp):
                if k:
                    term = term * v**k
            total = total + term
        return total

    def _values(self, assignment, require_all):
        if isinstance(assignment, dict):
            missing = [v for v in self.vars if v not in assignment]
            if require_all and missing:
                raise VarMismatch(f"no value for {missing}")
            return [self.field(assignment[v]) if v in assignment else None for v in self.vars]
        values = list(assignment)
        if len(values) != len(self.vars):
            raise VarMismatch("assignment length does not match variables")
        return [self.field(v) for v in values]

    def subs(self, assignment: dict) -> MPoly:
        """Substitute values for some variables; those variables are removed."""
        keep = [i for i, v in enumerate(self.vars) if v not in assignment]
        values = self._values(assignment, require_all=False)
        new_vars = tuple(self.vars[i] for i in keep)
        terms = {}
        for exp, c in self.terms.items():
            coef = c
            for v, k in zip(values, exp):
                if v is not None and k:
                    coef = coef * v**k
            e = tuple(exp[i] for i in keep)
            terms[e] = terms[e] + coef if e in terms else coef
        return MPoly(new_vars, terms, self.field)

    def with_vars(self, variables) -> MPoly:
        """Re-embed into a variable list that contains every variable in use."""
        variables = tuple(variables)
        index = {v: i for i, v in enumerate(variables)}
        terms = {}
        for exp, c in self.terms.items():
            e = [0] * len(variables)
            for v, k in zip(self.vars, exp):
                if k:
                    if v not in index:
                        raise VarMismatch(f"variable {v} missing from {variables}")
                    e[index[v]] = k
            terms[tuple(e)] = c
        return MPoly(variables, terms, self.field)

    def coefficients_in(self, name: str) -> list[MPoly]:
        """Coefficients of name^0, name^1, ... as polynomials in the other variables."""
        k = self.vars.index(name)
        rest = self.vars[:k] + self.vars[k + 1:]
        deg = self.degree_in(name)
        buckets = [dict() for _ in range(max(deg, 0) + 1)]
        for exp, c in self.terms.items():
            buckets[exp[k]][exp[:k] + exp[k + 1:]] = c
        return [MPoly(rest, b, self.field) for b in buckets]

    def to_json(self):
        return {
            "vars": list(self.vars),
            "terms": [{"exp": list(e), "coef": c.to_json()} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data, field: NumberField) -> MPoly:
        terms = {}
        for t in data["terms"]:
            coef = t["coef"]
            c = field(coef) if isinstance(coef, list) else field(str(coef))
            e = tuple(t["exp"])
            terms[e] = terms[e] + c if e in terms else c
        return cls(data["vars"], terms, field)


def _merge_vars(*lists):
    out = []
    for vs in lists:
        for v in vs:
            if v not in out:
                out.append(v)
    return tuple(out)


def _unify(a: MPoly, b: MPoly):
    vs = _merge_vars(a.vars, b.vars)
    return a.with_vars(vs), b.with_vars(vs)


def mpoly_arith(a: MPoly, b, op: str):
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "sub":
        return a - b
    if op == "eval":
        return a.eval(b)
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# the conjugated-product constructions


def _symbolic_conjugate_diag(gi: NFMatrix, names, variables, field) -> list[list[MPoly]]:
    inv = gi.inverse()
    n = gi.n
    xs = [MPoly.var(nm, variables, field) for nm in names]
    out = []
    for a in range(n):
        row = []
        for b in range(n):
            acc = MPoly.zero(variables, field)
            for j in range(n):
                c = gi[a, j] * inv[j, b]
                if not c.is_zero():
                    acc = acc + xs[j] * c
            row.append(acc)
        out.append(row)
    return out


def _sym_matmul(a, b, variables, field):
    n = len(a)
    return [
        [sum((a[i][k] * b[k][j] for k in range(n)), MPoly.zero(variables, field)) for j in range(n)]
        for i in range(n)
    ]


def _conjugated_entry(g: NFMatrix, factors, entry, variables, field) -> MPoly:
    n = g.n
    alpha, beta = entry
    if not (1 <= alpha <= n and 1 <= beta <= n):
        raise IndexOutOfRange(f"entry {entry} outside a {n}x{n} matrix")
    prod = factors[0]
    for f in factors[1:]:
        prod = _sym_matmul(prod, f, variables, field)
    ginv = g.inverse()
    a, b = alpha - 1, beta - 1
    acc = MPoly.zero(variables, field)
    for i in range(n):
        if ginv[a, i].is_zero():
            continue
        for j in range(n):
            if not g[j, b].is_zero():
                acc = acc + prod[i][j] * (ginv[a, i] * g[j, b])
    return acc


def _check_mats(mats):
    n, field = mats[0].n, mats[0].field
    for m in mats:
        if m.n != n:
            raise DimensionMismatch("all matrices must share one dimension")
        if m.field != field:
            raise FieldMismatch("all matrices must share one field")
        if m.det().is_zero():
            raise NotInvertible("conjugating matrices must be invertible")
    return n, field


def build_case1_poly(g: NFMatrix, g_list, entry=(1, 1)) -> MPoly:
    """Entry ``entry`` of ``g^-1 [prod_i g_i diag(x_i1..x_in) g_i^-1] g`` as a polynomial."""
    g_list = list(g_list)
    n, field = _check_mats([g] + g_list)
    variables = tuple(case_var(i + 1, j + 1) for i in range(len(g_list)) for j in range(n))
    factors = [
        _symbolic_conjugate_diag(gi, [case_var(i + 1, j + 1) for j in range(n)], variables, field)
        for i, gi in enumerate(g_list)
    ]
    return _conjugated_entry(g, factors, entry, variables, field)


def build_case2_poly(g: NFMatrix, g_list, A: PolyMatrix, s: int, entry=(1, 1)) -> MPoly:
    """As :func:`build_case1_poly`, with ``A(z)`` as the ``s``-th factor.

    ``g_list`` has either ``r`` entries (entry ``s`` ignored, may be None) or
    ``r - 1`` entries for the semisimple factors only.
    """
    g_list = list(g_list)
    if any(x is None for x in g_list):
        full = g_list
    else:
        full = g_list[: s - 1] + [None] + g_list[s - 1:]
    r = len(full)
    if not (1 <= s <= r):
        raise IndexOutOfRange(f"s = {s} outside 1..{r}")
    others = [m for i, m in enumerate(full) if i != s - 1]
    n, field = _check_mats([g] + [m for m in others if m is not None])
    if A.n != n:
        raise DimensionMismatch("A(z) has the wrong size")
    variables = tuple(case_var(i + 1, j + 1) for i in range(r) if i != s - 1 for j in range(n)) + ("z",)
    factors = []
    for i, gi in enumerate(full):
        if i == s - 1:
            factors.append([[_upoly_to_mpoly(e, variables, field) for e in row] for row in A.entries])
        else:
            names = [case_var(i + 1, j + 1) for j in range(n)]
            factors.append(_symbolic_conjugate_diag(gi, names, variables, field))
    return _conjugated_entry(g, factors, entry, variables, field)


def _upoly_to_mpoly(p, variables, field) -> MPoly:
    k = variables.index("z")
    terms = {}
    for deg, c in enumerate(p.coeffs):
        e = [0] * len(variables)
        e[k] = deg
        terms[tuple(e)] = c
    return MPoly(variables, terms, field)


def z_coefficients(p: MPoly, name: str = "z") -> list[MPoly]:
    """``[psi_0, ..., psi_T]`` with ``p = sum psi_k z^k``."""
    if name not in p.vars:
        raise VarMismatch(f"{name} is not a variable of the polynomial")
    return p.coefficients_in(name)


def truncate_z(p: MPoly, t: int, name: str = "z") -> MPoly:
    deg = p.degree_in(name)
    if not (0 <= t <= deg):
        raise BadTruncation(f"truncation degree {t} outside 0..{deg}")
    k = p.vars.index(name)
    return MPoly(p.vars, {e: c for e, c in p.terms.items() if e[k] <= t}, p.field)


def _det_laplace(mat, zero):
    """Determinant by cofactor expansion along rows, memoized on column subsets."""
    size = len(mat)

    @lru_cache(maxsize=None)
    def minor(row, cols):
        if row == size:
            return None  # empty product marker
        total = zero
        free = [c for c in range(size) if cols >> c & 1 == 0]
        for pos, c in enumerate(free):
            entry = mat[row][c]
            if entry.is_zero():
                continue
            sub = minor(row + 1, cols | (1 << c))
            term = entry if sub is None else entry * sub
            if term.is_zero():
                continue
            total = total + term if pos % 2 == 0 else total - term
        return total

    if size == 0:
        return zero + 1
    return minor(0, 0)


def sylvester_matrix(q: MPoly, p: MPoly, name: str = "z"):
    a = q.coefficients_in(name)
    b = p.coefficients_in(name)
    e, t = len(a) - 1, len(b) - 1
    size = e + t
    zero = MPoly.zero(a[0].vars, q.field)
    rows = []
    for i in range(t):
        row = [zero] * size
        for k, c in enumerate(reversed(a)):
            row[i + k] = c
        rows.append(row)
    for i in range(e):
        row = [zero] * size
        for k, c in enumerate(reversed(b)):
            row[i + k] = c
        rows.append(row)
    return rows


def resultant_z(q: MPoly, p_tilde: MPoly, name: str = "z") -> MPoly:
    """Resultant of ``q`` and ``p_tilde`` with respect to ``z`` (Sylvester determinant).

    When ``q = x - phi(z)`` with ``x`` absent from ``p_tilde``, the result has
    x-degree ``t = deg_z p_tilde`` and leading x-coefficient
    ``+-psi_t^e`` with ``e = deg_z q``; both facts are asserted.
    """
    if q.field != p_tilde.field:
        raise FieldMismatch("polynomials over different fields")
    variables = _merge_vars(q.vars, p_tilde.vars)
    if name not in variables:
        raise DegenerateResultant(f"{name} does not occur")
    q, p_tilde = q.with_vars(variables), p_tilde.with_vars(variables)
    e, t = q.degree_in(name), p_tilde.degree_in(name)
    if e < 1 or t < 1:
        raise DegenerateResultant(f"z-degrees must be positive (got {e} and {t})")
    rows = sylvester_matrix(q, p_tilde, name)
    zero = rows[0][0] * 0
    f = _det_laplace(rows, zero)
    assert f is not None

    x = "x"
    if x in variables and q.degree_in(x) == 1 and p_tilde.degree_in(x) <= 0:
        qc = q.coefficients_in(name)
        if all(c.degree_in(x) <= 0 for c in qc[1:]):
            psi_t = p_tilde.coefficients_in(name)[t]
            assert f.degree_in(x) == t, "x-degree of the resultant must equal t"
            lead = f.coefficients_in(x)[t]
            target = psi_t**e
            assert lead == target or lead == -target, "leading x-coefficient must be +-psi_t^e"
    return f


@dataclass(frozen=True)
class TruncationChoice:
    alpha: int
    beta: int
    t: int
    tallies: dict  # (alpha, beta) -> {k: number of observations with psi_k != 0}

    def to_json(self):
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "t": self.t,
            "tallies": [
                {"entry": [a, b], "nonzero_counts": {str(k): v for k, v in sorted(ks.items())}}
                for (a, b), ks in sorted(self.tallies.items())
            ],
        }


def mpoly_summary(p: MPoly) -> dict:
    return {
        "vars": list(p.vars),
        "num_terms": len(p.terms),
        "total_degree": p.total_degree(),
        "degrees": {v: p.degree_in(v) for v in p.vars},
    }


__all__ = [
    "MPoly",
    "TruncationChoice",
    "build_case1_poly",
    "build_case2_poly",
    "case_var",
    "mpoly_arith",
    "mpoly_summary",
    "rat_str",
    "resultant_z",
    "sylvester_matrix",
    "truncate_z",
    "z_coefficients",
]
