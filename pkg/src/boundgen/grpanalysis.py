"""Group-level experiments: derived-series witnesses, specialization of
function-field matrix groups, Galois genericity heuristics and a hunt for
elements with independent eigenvalues.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product

import sympy
from sympy.polys.fields import field as sympy_field

from .errors import (
    DimensionMismatch,
    NoPointFound,
    NotRegular,
    NotSplit,
    VarMismatch,
    ZeroWitness,
)
from .modp import distinct_degree_pattern, integral_monic, is_squarefree_mod, primes
from .multrel import (
    IndependenceVerdict,
    MultGroup,
    eigenvalue_group,
    group_independent,
    torsion_free_nontrivial,
)
from .nflinalg import NFMatrix, charpoly, eigenvalues_in_field, is_semisimple
from .qarith import UPoly, is_squarefree, rationals


# ---------------------------------------------------------------------------
# words


class GroupWord:
    """Freely reduced word in generators; letters are ``(index, +1 or -1)``."""

    __slots__ = ("letters",)

    def __init__(self, letters=()):
        out = []
        for idx, e in letters:
            if e not in (1, -1):
                raise ValueError("letter exponents must be +1 or -1")
            if out and out[-1][0] == idx and out[-1][1] == -e:
                out.pop()
            else:
                out.append((int(idx), e))
        self.letters = tuple(out)

    def __mul__(self, other: GroupWord) -> GroupWord:
        return GroupWord(self.letters + other.letters)

    def inverse(self) -> GroupWord:
        return GroupWord((i, -e) for i, e in reversed(self.letters))

    def __pow__(self, k: int) -> GroupWord:
        base = self if k >= 0 else self.inverse()
        return GroupWord(base.letters * abs(k))

    def __eq__(self, other):
        return isinstance(other, GroupWord) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __len__(self):
        return len(self.letters)

    def __repr__(self):
        if not self.letters:
            return "e"
        return "".join(f"g{i}" + ("" if e == 1 else "^-1") for i, e in self.letters)

    def evaluate(self, gens) -> NFMatrix:
        gens = list(gens)
        inv = {}
        out = NFMatrix.identity(gens[0].n, gens[0].field)
        for i, e in self.letters:
            if e == 1:
                out = out * gens[i]
            else:
                if i not in inv:
                    inv[i] = gens[i].inverse()
                out = out * inv[i]
        return out

    def to_json(self):
        return [list(x) for x in self.letters]

    @classmethod
    def from_json(cls, data) -> GroupWord:
        return cls(tuple(x) for x in data)


def commutator(a: GroupWord, b: GroupWord) -> GroupWord:
    """``a^-1 b^-1 a b``."""
    return a.inverse() * b.inverse() * a * b


def random_word(rng: random.Random, num_gens: int, min_len: int = 1, max_len: int = 3) -> GroupWord:
    length = rng.randint(min_len, max_len)
    return GroupWord((rng.randrange(num_gens), rng.choice((1, -1))) for _ in range(length))


# ---------------------------------------------------------------------------
# derived series


@dataclass
class SolvabilityWitness:
    word: GroupWord
    depth: int
    ell: int
    element: NFMatrix
    tree: dict
    seed: int

    def replay(self, gens) -> NFMatrix:
        return _eval_tree(self.tree, list(gens))

    def to_json(self):
        return {
            "word": self.word.to_json(),
            "depth": self.depth,
            "ell": self.ell,
            "seed": self.seed,
            "tree": self.tree,
            "element": self.element.to_json(),
        }


def _eval_tree(tree, gens) -> NFMatrix:
    if "leaf" in tree:
        return GroupWord.from_json(tree["leaf"]).evaluate(gens) ** tree["power"]
    a = _eval_tree(tree["comm"][0], gens)
    b = _eval_tree(tree["comm"][1], gens)
    return a.inverse() * b.inverse() * a * b


def _tree_word(tree) -> GroupWord:
    if "leaf" in tree:
        return GroupWord.from_json(tree["leaf"]) ** tree["power"]
    return commutator(_tree_word(tree["comm"][0]), _tree_word(tree["comm"][1]))


def derived_depth_witness(gens, ell: int, depth: int, budget: int, seed: int) -> SolvabilityWitness | None:
    """Search for a nontrivial element of ``D^depth`` of the group generated by ell-th powers.

    Leaves are random words of length 1..3 raised to the ell-th power; each
    internal node is the commutator of its two children.  A returned witness
    is sound for any ell; ``None`` proves nothing.
    """
    gens = list(gens)
    if ell < 1 or depth < 1:
        raise ValueError("ell and depth must be >= 1")
    rng = random.Random(seed)
    ident = NFMatrix.identity(gens[0].n, gens[0].field)
    leaf_cache = {}

    def build(level):
        if level == 0:
            w = random_word(rng, len(gens))
            if w not in leaf_cache:
                leaf_cache[w] = w.evaluate(gens) ** ell
            return {"leaf": w.to_json(), "power": ell}, leaf_cache[w]
        ta, a = build(level - 1)
        tb, b = build(level - 1)
        return {"comm": [ta, tb]}, a.inverse() * b.inverse() * a * b

    for _ in range(budget):
        tree, mat = build(depth)
        if mat != ident:
            return SolvabilityWitness(_tree_word(tree), depth, ell, mat, tree, seed)
    return None


# ---------------------------------------------------------------------------
# rational function matrices


class RatFuncMatrix:
    """Square matrix over ``Q(variables)``; entries are reduced sympy fractions."""

    def __init__(self, variables, rows):
        self.variables = tuple(variables)
        if not self.variables:
            raise VarMismatch("at least one variable is required")
        self.K, *self.gens = sympy_field(",".join(self.variables), sympy.QQ)
        self.rows = [[self.coerce(x) for x in row] for row in rows]
        self.n = len(self.rows)
        if any(len(r) != self.n for r in self.rows):
            raise DimensionMismatch("matrix must be square")

    def coerce(self, x):
        if hasattr(x, "field") and getattr(x, "field", None) == self.K:
            return x
        if isinstance(x, Fraction):
            return self.K(x.numerator) / self.K(x.denominator)
        if isinstance(x, int):
            return self.K(x)
        expr = sympy.sympify(x, locals={v: sympy.Symbol(v) for v in self.variables})
        return self.K.from_expr(expr)

    def entries(self):
        return [x for row in self.rows for x in row]

    def at(self, point) -> NFMatrix:
        return NFMatrix(rationals(), [[eval_frac(x, point) for x in row] for row in self.rows])

    def to_json(self):
        return {
            "variables": list(self.variables),
            "n": self.n,
            "entries": [[frac_json(x) for x in row] for row in self.rows],
        }


def _to_fraction(v) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


def eval_poly(p, point) -> Fraction:
    if p.ring.ngens == 1:
        return _to_fraction(p(point[0]))
    return _to_fraction(p(*point))


def eval_frac(f, point) -> Fraction:
    den = eval_poly(f.denom, point)
    if den == 0:
        raise ZeroDivisionError("denominator vanishes at the point")
    return eval_poly(f.numer, point) / den


def frac_json(f):
    def terms(p):
        return [{"exp": list(m), "coef": str(_to_fraction(c))} for m, c in sorted(p.terms())]

    return {"num": terms(f.numer), "den": terms(f.denom)}


def _solve_combination(columns, rhs):
    """Coefficients c with sum c_j columns[j] == rhs over a field, or None."""
    k = len(columns)
    rows = [[col[i] for col in columns] + [rhs[i]] for i in range(len(rhs))]
    piv_cols = []
    r = 0
    for c in range(k + 1):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        if c == k:
            return None
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    sol = [0] * k
    for i, c in enumerate(piv_cols):
        sol[c] = rows[i][k]
    return sol


def function_field_minpoly(m: RatFuncMatrix) -> list:
    """Monic minimal polynomial over the function field, low degree first."""
    n = m.n
    K = m.K

    def mul(a, b):
        return [[sum((a[i][k] * b[k][j] for k in range(n)), K.zero) for j in range(n)] for i in range(n)]

    power = [[K.one if i == j else K.zero for j in range(n)] for i in range(n)]
    vecs = []
    while True:
        v = [x for row in power for x in row]
        sol = _solve_combination(vecs, v) if vecs else (None if any(x != 0 for x in v) else [])
        if sol is not None:
            return [-c for c in sol] + [K.one]
        vecs.append(v)
        power = mul(power, m.rows)


def _det_field(mat, K):
    a = [list(r) for r in mat]
    n = len(a)
    det = K.one
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return K.zero
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det = det * a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def discriminant(coeffs, K):
    """Resultant of a monic polynomial and its derivative (the discriminant up to sign)."""
    f = list(coeffs)
    n = len(f) - 1
    if n <= 1:
        return K.one
    df = [k * f[k] for k in range(1, n + 1)]
    size = 2 * n - 1
    rows = []
    hi_f = list(reversed(f))
    hi_df = list(reversed(df))
    for i in range(n - 1):
        rows.append([K.zero] * i + hi_f + [K.zero] * (size - i - len(hi_f)))
    for i in range(n):
        rows.append([K.zero] * i + hi_df + [K.zero] * (size - i - len(hi_df)))
    return _det_field(rows, K)


@dataclass
class SpecializationRecord:
    point: list
    avoided: list
    image_matrices: list
    checks: dict
    tries: int = 0

    def to_json(self):
        return {
            "point": [str(p) for p in self.point],
            "avoided": self.avoided,
            "image_matrices": [m.to_json() for m in self.image_matrices],
            "checks": self.checks,
            "tries": self.tries,
        }


def _height_shell(h: int):
    """Rationals p/q in lowest terms with max(|p|, q) == h."""
    out = set()
    if h == 1:
        return [Fraction(0), Fraction(1), Fraction(-1)]
    for q in range(1, h + 1):
        for p in range(-h, h + 1):
            if max(abs(p), q) == h and Fraction(p, q).denominator == q:
                out.add(Fraction(p, q))
    return sorted(out)


def rational_points(k: int, seed: int):
    """Points of Q^k by increasing height, shuffled within each shell."""
    rng = random.Random(seed)
    seen_by_height = []
    h = 0
    while True:
        h += 1
        seen_by_height.extend(_height_shell(h))
        shell = [p for p in product(seen_by_height, repeat=k)
                 if max(max(abs(x.numerator), x.denominator) for x in p) == h]
        rng.shuffle(shell)
        yield from shell


def specialize(mats, witness_entry, seed: int = 0, max_tries: int = 1000,
               witness_matrix: RatFuncMatrix | None = None) -> SpecializationRecord:
    """Evaluate function-field matrices at a rational point that keeps the relevant elements invertible.

    Avoided: numerator and denominator of ``witness_entry``, the discriminant
    of each semisimple source's minimal polynomial, and every entry
    denominator.
    """
    mats = list(mats)
    if not mats:
        raise ValueError("at least one matrix is required")
    variables = mats[0].variables
    if any(m.variables != variables for m in mats):
        raise VarMismatch("all matrices must share the variable list")
    K = mats[0].K
    mats = [m if m.K == K else RatFuncMatrix(variables, m.rows) for m in mats]
    a = mats[0].coerce(witness_entry)
    if a == 0:
        raise ZeroWitness("the witness entry is zero")

    sources_semisimple = []
    discs = []
    for m in mats:
        mp = function_field_minpoly(m)
        d = discriminant(mp, K)
        semisimple = d != 0
        sources_semisimple.append(semisimple)
        if semisimple:
            discs.append(d)

    must_be_nonzero = [a.numer, a.denom]
    for d in discs:
        must_be_nonzero.extend([d.numer, d.denom])
    for m in mats:
        must_be_nonzero.extend(x.denom for x in m.entries())
    avoided_labels = [str(a.as_expr())] + [str(d.as_expr()) for d in discs]

    tries = 0
    for point in rational_points(len(variables), seed):
        if tries >= max_tries:
            break
        tries += 1
        if any(eval_poly(p, point) == 0 for p in must_be_nonzero):
            continue
        images = [m.at(point) for m in mats]
        preserved = all(is_semisimple(img) for img, ok in zip(images, sources_semisimple) if ok)
        if witness_matrix is not None:
            w = witness_matrix.at(point)
            survives = w != NFMatrix.identity(w.n)
        else:
            survives = eval_frac(a, point) != 0
        checks = {
            "a_nonzero": eval_frac(a, point) != 0,
            "all_discriminants_nonzero": all(eval_frac(d, point) != 0 for d in discs),
            "semisimplicity_preserved": preserved,
            "witness_survives": survives,
        }
        return SpecializationRecord(list(point), avoided_labels, images, checks, tries)
    raise NoPointFound(f"no admissible rational point within {max_tries} tries")


# ---------------------------------------------------------------------------
# genericity (type A)


@dataclass
class GenericityReport:
    charpoly: UPoly
    primes_used: list
    cycle_types: list
    verdict: str  # "weyl-contained-confirmed" or "unknown"

    def to_json(self):
        return {
            "charpoly": [str(c.to_rational()) for c in self.charpoly.coeffs],
            "primes_used": self.primes_used,
            "cycle_types": [list(c) for c in self.cycle_types],
            "verdict": self.verdict,
        }


def _perm_mul(a, b):
    """Apply b first, then a."""
    return tuple(a[i] for i in b)


def cycle_type(perm) -> tuple:
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if not seen[i]:
            k = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                k += 1
            out.append(k)
    return tuple(sorted(out, reverse=True))


def _closure(gens, n):
    ident = tuple(range(n))
    group = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = _perm_mul(s, g)
                if h not in group:
                    group.add(h)
                    nxt.append(h)
        frontier = nxt
    return frozenset(group)


@lru_cache(maxsize=None)
def _subgroup_type_sets(n: int):
    """Cycle-type sets of all subgroups of S_n (n <= 5), up to conjugacy.

    Every subgroup of S_n for n <= 5 is generated by two elements, and up to
    conjugacy the first can be taken as a fixed representative of its class.
    """
    elems = list(permutations(range(n)))
    reps = {}
    for p in elems:
        reps.setdefault(cycle_type(p), p)
    out = set()
    for rep in reps.values():
        for b in elems:
            grp = _closure([rep, b], n)
            out.add((len(grp), frozenset(cycle_type(g) for g in grp)))
    return out


def types_force_symmetric(types, n: int) -> bool:
    """True when no proper subgroup of S_n contains elements of every given cycle type."""
    types = {tuple(t) for t in types}
    if n == 1:
        return True
    if n <= 5:
        full = 1
        for k in range(2, n + 1):
            full *= k
        return all(size == full for size, ts in _subgroup_type_sets(n) if types <= ts)
    # transitive (n-cycle), doubly transitive ((n-1)-cycle), plus a transposition
    return (n,) in types and (n - 1, 1) in types and (2,) + (1,) * (n - 2) in types


def genericity_heuristic(gamma: NFMatrix, primes_budget=10) -> GenericityReport:
    """Collect factorization patterns of the characteristic polynomial modulo primes.

    ``primes_budget`` is either a count (first that many good primes) or an
    explicit list of primes; bad primes are skipped.
    """
    if gamma.field.degree != 1:
        raise ValueError("genericity is implemented for rational matrices only")
    cp = charpoly(gamma)
    if not is_squarefree(cp):
        raise NotRegular("characteristic polynomial is not squarefree")
    coeffs = [c.to_rational() for c in cp.coeffs]
    ints, _ = integral_monic(coeffs)
    n = len(ints) - 1
    if isinstance(primes_budget, int):
        source = primes()
        limit = primes_budget
    else:
        source = iter(primes_budget)
        limit = None
    used, types = [], []
    for p in source:
        if limit is not None and len(used) >= limit:
            break
        if not is_squarefree_mod(ints, p):
            continue
        used.append(p)
        types.append(tuple(distinct_degree_pattern(ints, p)))
    verdict = "weyl-contained-confirmed" if types and types_force_symmetric(types, n) else "unknown"
    if n == 1:
        verdict = "weyl-contained-confirmed"
    return GenericityReport(cp, used, types, verdict)


# ---------------------------------------------------------------------------
# generic element hunt


def generic_hunt(gens, opponents, word_budget: int, seed: int, box: int = 4, stats: dict | None = None,
                 max_len: int = 4):
    """Look for a word whose eigenvalue group is torsion-free, nontrivial and independent of the opponents.

    Returns ``(word, matrix, verdict)`` or None.  If ``stats`` is given it
    receives counts of tried, non-regular and non-split candidates.
    """
    gens = list(gens)
    rng = random.Random(seed)
    counts = {"tried": 0, "not_regular": 0, "not_split": 0, "torsion": 0, "dependent": 0}
    opp = eigenvalue_group(opponents) if opponents else MultGroup(gens[0].field, ())
    seen = set()
    result = None
    # single generators first, then random words
    candidates = [GroupWord([(i, 1)]) for i in range(len(gens))]
    for k in range(word_budget):
        w = candidates[k] if k < len(candidates) else random_word(rng, len(gens), 1, max_len)
        if not w.letters or w in seen:
            continue
        seen.add(w)
        counts["tried"] += 1
        mat = w.evaluate(gens)
        if not is_squarefree(charpoly(mat)):
            counts["not_regular"] += 1
            continue
        try:
            eig = eigenvalues_in_field(mat).eigenvalues
        except NotSplit:
            counts["not_split"] += 1
            continue
        lam_group = MultGroup(mat.field, tuple(eig))
        if not torsion_free_nontrivial(lam_group):
            counts["torsion"] += 1
            continue
        verdict, rel = group_independent(lam_group.canonical().generators, opp, box)
        if verdict != "yes":
            counts["dependent"] += 1
            continue
        result = (w, mat, IndependenceVerdict("yes", None, proof="box"))
        break
    if stats is not None:
        stats.update(counts)
    return result
