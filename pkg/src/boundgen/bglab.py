"""Bounded scans of the membership set J and the Laurent set M, and the
end-to-end finiteness pipeline for ``<gamma> ∩ <gamma_1>...<gamma_r>``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from itertools import product

from .errors import (
    DimensionMismatch,
    FieldMismatch,
    LemmaViolation,
    NoSuitableEigenvalue,
    TooManyExceptions,
    VarMismatch,
)
from .exppoly import (
    MPoly,
    TruncationChoice,
    build_case1_poly,
    build_case2_poly,
    case_var,
    mpoly_summary,
    resultant_z,
    truncate_z,
    z_coefficients,
)
from .multrel import (
    IndependenceVerdict,
    MultGroup,
    eigenvalue_group,
    is_multiplicatively_independent,
    is_root_of_unity,
)
from .nflinalg import (
    NFMatrix,
    eigenvalues_in_field,
    is_semisimple,
    jordan_chevalley,
    order_eigendata,
    unipotent_power_matrix,
)
from .qarith import NFElem


@dataclass(frozen=True)
class MembershipWitness:
    m: int
    exponents: tuple

    def verify(self, gamma: NFMatrix, gens) -> bool:
        return gamma**self.m == word_product(gens, self.exponents)

    def to_json(self):
        return {"m": self.m, "exponents": list(self.exponents)}


@dataclass(frozen=True)
class JReport:
    m_range: int
    exponent_box: int
    witnesses: tuple
    complete_within_budget: bool

    @property
    def ms(self) -> list[int]:
        return [w.m for w in self.witnesses]

    def to_json(self):
        return {
            "m_range": self.m_range,
            "exponent_box": self.exponent_box,
            "witnesses": [w.to_json() for w in self.witnesses],
            "complete_within_budget": self.complete_within_budget,
        }


def word_product(gens, exponents) -> NFMatrix:
    out = NFMatrix.identity(gens[0].n, gens[0].field)
    for g, a in zip(gens, exponents):
        if a:
            out = out * g**a
    return out


def _check_compatible(gamma, gens):
    for g in gens:
        if g.n != gamma.n:
            raise DimensionMismatch("generators must match the dimension of gamma")
        if g.field != gamma.field:
            raise FieldMismatch("generators must lie over the field of gamma")


def compute_J(gamma: NFMatrix, gens, m_range: int, box: int, threads: int = 1,
              max_products: int | None = None) -> JReport:
    """Scan ``|m| <= m_range`` for ``gamma^m = gens[0]^a_1 ... gens[r-1]^a_r`` with ``|a_i| <= box``.

    Meet in the middle: the first ``ceil(r/2)`` factors are tabulated by
    matrix key, the remaining factors are probed.  The witness kept for each
    m is the lexicographically least exponent tuple.
    """
    gens = list(gens)
    if m_range < 1 or box < 1:
        raise ValueError("m_range and box must be >= 1")
    if not gens:
        raise ValueError("at least one generator is required")
    _check_compatible(gamma, gens)
    r = len(gens)
    h = (r + 1) // 2
    rng = range(-box, box + 1)
    complete = True
    if max_products is not None and (2 * box + 1) ** max(h, r - h) > max_products:
        complete = False
        box_eff = 0
        while (2 * (box_eff + 1) + 1) ** max(h, r - h) <= max_products:
            box_eff += 1
        rng = range(-box_eff, box_eff + 1)
    powers = [{a: g**a for a in rng} for g in gens]
    ident = NFMatrix.identity(gamma.n, gamma.field)

    left = {}
    for tup in product(rng, repeat=h):
        mat = ident
        for i, a in enumerate(tup):
            if a:
                mat = mat * powers[i][a]
        left.setdefault(mat.key, tup)

    right = []
    for tup in product(rng, repeat=r - h):
        mat = ident
        for i, a in enumerate(tup):
            if a:
                mat = mat * powers[h + i][a]
        right.append((tup, mat.inverse()))

    gamma_inv = gamma.inverse()

    def scan(ms):
        found = []
        for m in ms:
            target = gamma**m if m >= 0 else gamma_inv ** (-m)
            best = None
            for tup, rinv in right:
                key = (target * rinv).key
                if key in left:
                    cand = left[key] + tup
                    if best is None or cand < best:
                        best = cand
            if best is not None:
                found.append(MembershipWitness(m, best))
        return found

    ms = list(range(-m_range, m_range + 1))
    if threads > 1:
        chunks = [ms[i::threads] for i in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(scan, chunks))
        witnesses = sorted((w for part in parts for w in part), key=lambda w: w.m)
    else:
        witnesses = scan(ms)
    return JReport(m_range, box, tuple(witnesses), complete)


# ---------------------------------------------------------------------------
# Laurent set


@dataclass(frozen=True)
class MReport:
    m_range: int
    exponent_box: int
    solutions: tuple  # (m, exponent tuple)
    difference_analysis: tuple

    @property
    def ms(self) -> list[int]:
        return [m for m, _ in self.solutions]

    def to_json(self):
        return {
            "m_range": self.m_range,
            "exponent_box": self.exponent_box,
            "solutions": [{"m": m, "exponents": list(a)} for m, a in self.solutions],
            "difference_analysis": [list(d) for d in self.difference_analysis],
        }


def laurent_enumerate(f: MPoly, mu: NFElem, mu_list, m_range: int, box: int) -> MReport:
    """Integers m with ``f(mu^m, mu_1^a_1, ..., mu_d^a_d) = 0`` and ``f(x, mu_i^a_i)`` non-constant in x.

    The first variable of ``f`` plays the role of x.  For every exponent tuple
    in the box the univariate specialization is formed once and tested
    against all powers of mu.  One tuple (lexicographically least) is kept
    per m; consecutive solutions are differenced.
    """
    mu_list = list(mu_list)
    if len(f.vars) != 1 + len(mu_list):
        raise VarMismatch(f"f has {len(f.vars)} variables, expected 1 + {len(mu_list)}")
    field = f.field
    mu = field(mu)
    mu_list = [field(v) for v in mu_list]
    xname = f.vars[0]
    rest = f.vars[1:]
    rng = range(-box, box + 1)
    mu_pows = {m: mu**m for m in range(-m_range, m_range + 1)}
    pow_tables = [{a: v**a for a in rng} for v in mu_list]
    best = {}
    for tup in product(rng, repeat=len(mu_list)):
        assign = {name: pow_tables[i][a] for i, (name, a) in enumerate(zip(rest, tup))}
        g = f.subs(assign)
        if g.degree_in(xname) < 1:
            continue
        for m, val in mu_pows.items():
            if m in best:
                continue
            if g.eval({xname: val}).is_zero():
                best[m] = tup
    solutions = tuple(sorted(best.items()))
    diffs = []
    for (m1, a1), (m2, a2) in zip(solutions, solutions[1:]):
        diffs.append((m2 - m1,) + tuple(b - a for a, b in zip(a1, a2)))
    return MReport(m_range, box, solutions, tuple(diffs))


# ---------------------------------------------------------------------------
# truncation choice


def select_truncation(p_map: dict, observed) -> TruncationChoice:
    """Pick ``(alpha, beta, t)`` from the z-coefficients of off-diagonal entries.

    For each off-diagonal entry, ``t`` is the largest k >= 1 whose psi_k is
    nonzero at some observation, so every higher psi_k vanishes at all of
    them.  The entry whose psi_t is nonzero most often wins, then larger t,
    then the lexicographically smallest index pair.
    """
    observed = list(observed)
    if not observed:
        raise ValueError("at least one observation is required")
    tallies = {}
    best = None
    for (a, b), p in sorted(p_map.items()):
        if a == b or "z" not in p.vars or p.degree_in("z") < 1:
            continue
        psis = z_coefficients(p)
        counts = {}
        for k in range(1, len(psis)):
            psi = psis[k]
            n_nonzero = 0
            for obs in observed:
                val = psi.eval({v: obs[v] for v in psi.vars})
                if not val.is_zero():
                    n_nonzero += 1
            counts[k] = n_nonzero
        tallies[(a, b)] = counts
        live = [k for k, c in counts.items() if c > 0]
        if not live:
            continue
        t = max(live)
        key = (-counts[t], -t, (a, b))
        if best is None or key < best[0]:
            best = (key, a, b, t)
    if best is None:
        raise LemmaViolation(
            "every psi_k with k >= 1 vanishes at every observation for every off-diagonal entry; "
            "the unipotent factor is not a nontrivial unipotent"
        )
    _, a, b, t = best
    return TruncationChoice(a, b, t, tallies)


# ---------------------------------------------------------------------------
# the pipeline


@dataclass
class ObstructionCertificate:
    case: str
    lam: NFElem
    independence: IndependenceVerdict
    torsion: int | None
    constructed_f: dict
    J_scan: JReport
    conclusion: str
    factors: list = dc_field(default_factory=list)
    unipotent_index: int | None = None
    truncation: TruncationChoice | None = None
    f: MPoly | None = None
    mu_list: list = dc_field(default_factory=list)
    f_vanishes_on_witnesses: bool | None = None
    relation_box: int | None = None

    def to_json(self):
        return {
            "case": self.case,
            "lambda": self.lam.to_json(),
            "independence": self.independence.to_json(),
            "lattice": self.independence.lattice.to_json() if self.independence.lattice else None,
            "torsion": self.torsion,
            "constructed_f": self.constructed_f,
            "f": self.f.to_json() if self.f is not None else None,
            "mu_list": [m.to_json() for m in self.mu_list],
            "truncation": self.truncation.to_json() if self.truncation else None,
            "factors": [m.to_json() for m in self.factors],
            "unipotent_index": self.unipotent_index,
            "relation_box": self.relation_box,
            "f_vanishes_on_witnesses": self.f_vanishes_on_witnesses,
            "J_scan": self.J_scan.to_json(),
            "conclusion": self.conclusion,
        }


def _split_factors(gens):
    """Replace the non-semisimple generator (if any) by its Jordan pair."""
    bad = [i for i, g in enumerate(gens) if not is_semisimple(g)]
    if len(bad) > 1:
        raise TooManyExceptions(f"{len(bad)} generators are not semisimple; at most one is allowed")
    if not bad:
        return "all-semisimple", list(gens), None, None
    s = bad[0]
    pair = jordan_chevalley(gens[s])
    sigma, upsilon = pair.semisimple_part, pair.unipotent_part
    if sigma.is_identity():
        factors = list(gens)
        return "one-unipotent", factors, s, [1 if i == s else 0 for i in range(len(gens))]
    factors = gens[:s] + [sigma, upsilon] + gens[s + 1:]
    # original exponent a_s drives both sigma and upsilon
    return "reduced-via-jordan", factors, s + 1, [1 if i == s else 0 for i in range(len(gens))]


def _expand_exponents(case, exps, s_orig):
    if case != "reduced-via-jordan":
        return list(exps)
    exps = list(exps)
    return exps[:s_orig] + [exps[s_orig], exps[s_orig]] + exps[s_orig + 1:]


def theorem41_pipeline(gamma: NFMatrix, gens, lambda_hint: NFElem | None = None, m_range: int = 15,
                       box: int = 40, relation_box: int | None = None, candidates=(),
                       threads: int = 1) -> ObstructionCertificate:
    """Check the finiteness hypotheses for ``<gamma> ∩ <gens[0]>...<gens[-1]>`` and build the certificate polynomial.

    ``relation_box`` bounds the exponent sweep of the independence test and
    defaults to ``box``.
    """
    gens = list(gens)
    _check_compatible(gamma, gens)
    field = gamma.field
    if relation_box is None:
        relation_box = box

    gdata = eigenvalues_in_field(gamma, candidates)
    if gdata.diagonalizer is None:
        raise ValueError("gamma must be semisimple")
    if lambda_hint is not None:
        lam = field(lambda_hint)
        if lam not in gdata.eigenvalues:
            raise NoSuitableEigenvalue(f"{lam!r} is not an eigenvalue of gamma")
    else:
        lam = next((x for x in gdata.eigenvalues if is_root_of_unity(x) is None), None)
        if lam is None:
            raise NoSuitableEigenvalue("every eigenvalue of gamma is a root of unity")
    gdata = order_eigendata(gdata, lam)

    case, factors, s, _ = _split_factors(gens)
    s_orig = None
    if case == "reduced-via-jordan":
        s_orig = s - 1

    semisimple_factors = [m for i, m in enumerate(factors) if i != s]
    torsion = is_root_of_unity(lam)
    if semisimple_factors:
        group = eigenvalue_group(semisimple_factors, candidates)
    else:
        group = MultGroup(field, ())
    independence = is_multiplicatively_independent(lam, group, relation_box)

    j_scan = compute_J(gamma, gens, m_range, box, threads=threads)

    # diagonalize the semisimple factors
    diag = {}
    for i, m in enumerate(factors):
        if i != s:
            diag[i] = eigenvalues_in_field(m, candidates)
    g = gdata.diagonalizer
    n = gamma.n
    mu_list = [diag[i].eigenvalues[j] for i in range(len(factors)) if i != s for j in range(n)]

    def observation(w):
        exps = _expand_exponents(case, w.exponents, s_orig)
        obs = {}
        for i, a in enumerate(exps):
            if i == s:
                obs["z"] = field(a)
            else:
                for j in range(n):
                    obs[case_var(i + 1, j + 1)] = diag[i].eigenvalues[j] ** a
        obs["x"] = lam**w.m
        return obs

    observations = [observation(w) for w in j_scan.witnesses]
    truncation = None
    if s is None:
        p = build_case1_poly(g, [diag[i].diagonalizer for i in range(len(factors))], (1, 1))
        variables = ("x",) + p.vars
        f = MPoly.var("x", variables, field) - p.with_vars(variables)
    else:
        A = unipotent_power_matrix(factors[s])
        g_list = [None if i == s else diag[i].diagonalizer for i in range(len(factors))]
        p_map = {
            (a, b): build_case2_poly(g, g_list, A, s + 1, (a, b))
            for a in range(1, n + 1)
            for b in range(1, n + 1)
        }
        p11 = p_map[(1, 1)]
        variables = ("x",) + p11.vars
        q = MPoly.var("x", variables, field) - p11.with_vars(variables)
        truncation = select_truncation(p_map, observations)
        p_tilde = truncate_z(p_map[(truncation.alpha, truncation.beta)], truncation.t)
        if q.degree_in("z") >= 1:
            f = resultant_z(q, p_tilde)
        else:
            # Sylvester matrix with e = 0 is diagonal in q: the resultant is q^t
            f = q.subs({"z": 0}) ** truncation.t

    f_vars_obs = [{v: o[v] for v in f.vars} for o in observations]
    vanishes = all(f.eval(o).is_zero() for o in f_vars_obs)

    if torsion is not None or independence.independent == "no":
        conclusion = "hypothesis-violated"
    elif independence.independent != "yes":
        conclusion = "inconclusive"
    elif j_scan.complete_within_budget and all(abs(w.m) < m_range for w in j_scan.witnesses):
        conclusion = "consistent-with-finiteness"
    else:
        conclusion = "inconclusive"

    return ObstructionCertificate(
        case=case,
        lam=lam,
        independence=independence,
        torsion=torsion,
        constructed_f=mpoly_summary(f),
        J_scan=j_scan,
        conclusion=conclusion,
        factors=factors,
        unipotent_index=s,
        truncation=truncation,
        f=f,
        mu_list=mu_list,
        f_vanishes_on_witnesses=vanishes,
        relation_box=relation_box,
    )
