"""Multiplicative relations among nonzero elements of a number field.

Relations are proposed by LLL on archimedean log-absolute-values and norm
valuations, then checked by exact arithmetic; an exhaustive sweep of the
exponent box catches anything the reduction missed.  Every relation in a
returned lattice has been verified exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product

import mpmath

from .errors import ZeroElement
from .lattice import hnf, in_lattice, lll_reduce
from .nflinalg import eigenvalues_in_field
from .qarith import NFElem, NumberField, embeddings


@dataclass(frozen=True)
class MultGroup:
    field: NumberField
    generators: tuple

    def __post_init__(self):
        if any(g.is_zero() for g in self.generators):
            raise ZeroElement("multiplicative group generators must be nonzero")

    @classmethod
    def of(cls, elems, field: NumberField | None = None) -> MultGroup:
        elems = list(elems)
        if field is None:
            if not elems:
                raise ValueError("field required for an empty generator list")
            field = elems[0].field
        return cls(field, tuple(field(e) for e in elems))

    def canonical(self) -> MultGroup:
        """Drop identity generators and exact duplicates, keeping first occurrences."""
        seen = []
        for g in self.generators:
            if g != 1 and g not in seen:
                seen.append(g)
        return MultGroup(self.field, tuple(seen))

    def __len__(self):
        return len(self.generators)


@dataclass(frozen=True)
class RelationLattice:
    num_generators: int
    basis: tuple
    search_box: int
    status: str  # "verified-within-box" or "lll-proposed-and-verified"
    complete_within_box: bool = True

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, vec) -> bool:
        return in_lattice(vec, [list(b) for b in self.basis])

    def to_json(self):
        return {"basis": [list(b) for b in self.basis], "box": self.search_box, "status": self.status}


@dataclass(frozen=True)
class IndependenceVerdict:
    independent: str  # "yes", "no", "unknown-within-box"
    witness: tuple | None = None
    proof: str | None = None  # "valuation" or "box" when independent == "yes"
    lattice: RelationLattice | None = dc_field(default=None, compare=False)

    def to_json(self):
        out = {"independent": self.independent, "witness": list(self.witness) if self.witness else None}
        if self.proof:
            out["proof"] = self.proof
        return out


def power_product(gens, exps, field: NumberField) -> NFElem:
    num = field.one
    den = field.one
    for g, e in zip(gens, exps):
        if e > 0:
            num = num * g**e
        elif e < 0:
            den = den * g ** (-e)
    return num / den


def is_relation(gens, exps, field: NumberField) -> bool:
    num = field.one
    den = field.one
    for g, e in zip(gens, exps):
        if e > 0:
            num = num * g**e
        elif e < 0:
            den = den * g ** (-e)
    return num == den


def eigenvalue_group(matrices, candidates=()) -> MultGroup:
    """Group generated by all eigenvalues of the given matrices, canonicalized."""
    matrices = list(matrices)
    if not matrices:
        raise ValueError("at least one matrix is required")
    field = matrices[0].field
    eig = []
    for m in matrices:
        eig.extend(eigenvalues_in_field(m, candidates).eigenvalues)
    return MultGroup(field, tuple(eig)).canonical()


def _phi(m: int) -> int:
    result, k, x = m, 2, m
    while k * k <= x:
        if x % k == 0:
            while x % k == 0:
                x //= k
            result -= result // k
        k += 1
    if x > 1:
        result -= result // x
    return result


def is_root_of_unity(lam: NFElem) -> int | None:
    """Order of ``lam`` as a root of unity, or None.

    A root of unity of order m in a degree-d field has phi(m) <= d, and
    phi(m) >= sqrt(m/2), so every candidate m is at most 2 d^2.
    """
    if lam.is_zero():
        raise ZeroElement("zero is not a unit")
    d = lam.field.degree
    power = lam.field.one
    for m in range(1, 2 * d * d + 3):
        power = power * lam
        if _phi(m) <= d and power == 1:
            return m
    return None


def _norm_valuations(gens) -> list[list[int]]:
    from sympy import factorint

    norms = [g.norm() for g in gens]
    primes = set()
    for q in norms:
        primes |= set(factorint(abs(q.numerator))) | set(factorint(q.denominator))
    primes = sorted(primes)
    rows = []
    for q in norms:
        row = []
        for p in primes:
            v = 0
            num, den = abs(q.numerator), q.denominator
            while num % p == 0:
                num //= p
                v += 1
            while den % p == 0:
                den //= p
                v -= 1
            row.append(v)
        rows.append(row)
    return rows


def _log_vectors(gens, precision_bits: int) -> list[list[mpmath.mpf]]:
    field = gens[0].field
    with mpmath.workprec(precision_bits + 64):
        boxes = embeddings(field, precision_bits + 32)
        return [[mpmath.log(abs(b.evaluate(g))) for b in boxes] for g in gens]


def _lll_proposals(gens, precision_bits: int):
    """Candidate exponent vectors whose products have absolute value 1 everywhere."""
    k = len(gens)
    logs = _log_vectors(gens, precision_bits)
    vals = _norm_valuations(gens)
    scale = mpmath.mpf(2) ** precision_bits
    weight = 2 ** (precision_bits + 8)
    rows = []
    for i in range(k):
        ident = [1 if j == i else 0 for j in range(k)]
        logpart = [int(mpmath.nint(x * scale)) for x in logs[i]]
        valpart = [v * weight for v in vals[i]]
        rows.append(ident + logpart + valpart)
    reduced = lll_reduce(rows)
    bound = 2 ** (precision_bits // 2)
    out = []
    for row in reduced:
        e = row[:k]
        tail = row[k:]
        if all(abs(x) <= bound for x in tail) and any(e):
            out.append(tuple(e))
    return out


def _box_relations(gens, field, box: int, max_products: int):
    """Generators of the lattice spanned by every relation in the exponent box.

    Meet-in-the-middle: products of the left half are hashed, right-half
    inverses are probed.  Returns (relations, complete).
    """
    k = len(gens)
    h = (k + 1) // 2
    rng = range(-box, box + 1)
    if (2 * box + 1) ** max(h, k - h) > max_products:
        return [], False
    powers = [{a: g**a for a in rng} for g in gens]

    def table(idx):
        out = {}
        for exps in product(rng, repeat=len(idx)):
            val = field.one
            for i, a in zip(idx, exps):
                if a:
                    val = val * powers[i][a]
            out.setdefault(val, []).append(exps)
        return out

    left = table(range(h))
    right = table(range(h, k))
    rels = []
    zero_l = (0,) * h
    zero_r = (0,) * (k - h)
    for vecs in left.values():
        base = vecs[0]
        for v in vecs[1:]:
            rels.append(tuple(a - b for a, b in zip(v, base)) + zero_r)
    for val, vecs in right.items():
        base = vecs[0]
        for v in vecs[1:]:
            rels.append(zero_l + tuple(a - b for a, b in zip(v, base)))
        inv = val.inverse()
        if inv in left:
            rels.append(tuple(left[inv][0]) + tuple(base))
    return [r for r in rels if any(r)], True


def relation_lattice(group: MultGroup, search_box: int = 4, precision_bits: int = 64,
                     max_products: int = 2_000_000) -> RelationLattice:
    """Lattice of integer exponent vectors e with prod g_i^e_i = 1.

    The result contains every relation with ``max|e_i| <= search_box`` plus
    any relation proposed by lattice reduction; all basis vectors are
    verified exactly.  Status is ``lll-proposed-and-verified`` when the
    reduction step contributed relations beyond the box lattice.
    """
    if search_box < 1:
        raise ValueError("search_box must be >= 1")
    gens = list(group.generators)
    k = len(gens)
    field = group.field
    if k == 0:
        return RelationLattice(0, (), search_box, "verified-within-box")

    box_rels, complete = _box_relations(gens, field, search_box, max_products)
    for r in box_rels:
        assert is_relation(gens, r, field)
    box_basis = hnf(box_rels, k) if box_rels else []

    extra = []
    for e in _lll_proposals(gens, precision_bits):
        if max(abs(x) for x in e) > 1 << 16:
            continue
        val = power_product(gens, e, field)
        if val != 1:
            order = is_root_of_unity(val)
            if order is None:
                continue
            e = tuple(order * x for x in e)
        if is_relation(gens, e, field):
            extra.append(e)

    basis = hnf(list(box_basis) + extra, k) if (box_basis or extra) else []
    status = "verified-within-box"
    if any(not in_lattice(e, box_basis) for e in extra):
        status = "lll-proposed-and-verified"
    for b in basis:
        assert is_relation(gens, b, field), "every lattice vector must be an exact relation"
    return RelationLattice(k, tuple(tuple(b) for b in basis), search_box, status, complete)


def _in_rational_span(vec, rows) -> bool:
    # Gaussian elimination over Q
    mat = [[Fraction(x) for x in r] for r in rows if any(r)]
    target = [Fraction(x) for x in vec]
    pivots = []
    reduced = []
    for r in mat:
        for pc, pr in zip(pivots, reduced):
            if r[pc]:
                f = r[pc] / pr[pc]
                r = [a - f * b for a, b in zip(r, pr)]
        pc = next((i for i, x in enumerate(r) if x), None)
        if pc is not None:
            pivots.append(pc)
            reduced.append(r)
    for pc, pr in zip(pivots, reduced):
        if target[pc]:
            f = target[pc] / pr[pc]
            target = [a - f * b for a, b in zip(target, pr)]
    return not any(target)


def _valuation_certifies(lam: NFElem, mus) -> bool:
    """True when norm valuations alone rule out lam^k in <mus> for k != 0."""
    vals = _norm_valuations([lam] + list(mus))
    if not any(vals[0]):
        return False
    return not _in_rational_span(vals[0], vals[1:])


def is_multiplicatively_independent(lam: NFElem, group: MultGroup, search_box: int = 4,
                                    precision_bits: int = 64) -> IndependenceVerdict:
    """Decide whether <lam> meets the group only in 1, within the exponent box.

    A root of unity is never independent: ``lam^order = 1`` is a witness.
    """
    if lam.is_zero():
        raise ZeroElement("lambda must be nonzero")
    field = group.field
    lam = field(lam)
    mus = list(group.generators)
    d = len(mus)
    order = is_root_of_unity(lam)
    if order is not None:
        return IndependenceVerdict("no", (order,) + (0,) * d)
    lat = relation_lattice(MultGroup(field, (lam,) + tuple(mus)), search_box, precision_bits)
    dependent = [b for b in lat.basis if b[0] != 0]
    if dependent:
        # the witness is the relation vector itself: lam^k * prod mu^e = 1
        b = dependent[0]
        witness = tuple(b) if b[0] > 0 else tuple(-x for x in b)
        return IndependenceVerdict("no", witness, lattice=lat)
    if _valuation_certifies(lam, mus):
        return IndependenceVerdict("yes", None, proof="valuation", lattice=lat)
    if lat.complete_within_box:
        return IndependenceVerdict("yes", None, proof="box", lattice=lat)
    return IndependenceVerdict("unknown-within-box", None, lattice=lat)


def check_witness(lam: NFElem, mus, witness) -> bool:
    """``lam^k * prod mu_i^e_i == 1`` for a witness ``(k, e_1, ..., e_d)`` with k != 0."""
    k = witness[0]
    return k != 0 and is_relation([lam] + list(mus), witness, lam.field)


def group_independent(lams, group: MultGroup, search_box: int = 4, precision_bits: int = 64):
    """Whether <lams> meets the group only in 1; returns (verdict string, offending relation)."""
    field = group.field
    lams = [field(x) for x in lams]
    mus = list(group.generators)
    a = len(lams)
    lat = relation_lattice(MultGroup(field, tuple(lams) + tuple(mus)), search_box, precision_bits)
    for b in lat.basis:
        if power_product(lams, b[:a], field) != 1:
            return "no", b
    if not lat.complete_within_box:
        return "unknown-within-box", None
    return "yes", None


def torsion_free_nontrivial(group: MultGroup, search_box: int = 2, precision_bits: int = 64) -> bool:
    """Nontrivial and torsion-free, as far as generators, LLL proposals and box products show."""
    gens = list(group.generators)
    field = group.field
    if not gens or all(g == 1 for g in gens):
        return False
    if any(g != 1 and is_root_of_unity(g) is not None for g in gens):
        return False
    canon = list(group.canonical().generators)
    if len(canon) >= 2:
        for e in _lll_proposals(canon, precision_bits):
            if max(abs(x) for x in e) > 1 << 16:
                continue
            val = power_product(canon, e, field)
            if val != 1 and is_root_of_unity(val) is not None:
                return False
    k = len(canon)
    if (2 * search_box + 1) ** k <= 200_000:
        for e in product(range(-search_box, search_box + 1), repeat=k):
            val = power_product(canon, e, field)
            if val != 1 and is_root_of_unity(val) is not None:
                return False
    return True
