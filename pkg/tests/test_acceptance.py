"""Acceptance criteria, one test each, with exact checks and wall-clock limits.

Run as ``pytest tests/test_acceptance.py -s`` or ``python tests/test_acceptance.py``;
a PASS/FAIL line per criterion is printed and repeated in the terminal summary.
"""

import random
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from math import gcd

import mpmath
import pytest
import sympy

from boundgen.bglab import compute_J, laurent_enumerate, theorem41_pipeline
from boundgen.exppoly import MPoly, build_case1_poly, build_case2_poly, case_var, resultant_z, truncate_z, z_coefficients
from boundgen.grpanalysis import RatFuncMatrix, derived_depth_witness, genericity_heuristic, specialize
from boundgen.multrel import MultGroup, check_witness, is_relation, is_root_of_unity, relation_lattice
from boundgen.nflinalg import NFMatrix, is_semisimple, jordan_chevalley
from boundgen.qarith import embeddings, nf_new, rationals

from _oracles import box_lattice, mpoly_to_sympy, naive_J, random_case2_instance, random_invertible

Q = rationals()
RESULTS = {}


@contextmanager
def criterion(num, title, limit):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        status = "PASS" if ok and elapsed < limit else "FAIL"
        line = f"ACCEPTANCE {num:2d} {title}: {status} ({elapsed:.2f}s, limit {limit}s)"
        RESULTS[num] = line
        print(line)
    assert elapsed < limit, f"criterion {num} took {elapsed:.2f}s (limit {limit}s)"


def D(*vals):
    return NFMatrix.diag([Fraction(v) for v in vals], Q)


def test_acceptance_01_jordan_chevalley():
    rng = random.Random(101)
    with criterion(1, "Jordan-Chevalley suite", 30):
        ident = NFMatrix.identity(3)
        done = 0
        while done < 200:
            tri = done % 2 == 0
            rows = [[rng.randint(-5, 5) if (j >= i or not tri) else 0 for j in range(3)] for i in range(3)]
            g = NFMatrix.from_rows(rows)
            if g.det().is_zero():
                continue
            pair = jordan_chevalley(g)
            s, u = pair.semisimple_part, pair.unipotent_part
            assert is_semisimple(s)
            assert ((u - ident) ** 3).is_zero()
            assert s * u == g and u * s == g
            done += 1


def test_acceptance_02_relation_lattice_oracle():
    rng = random.Random(202)
    with criterion(2, "Relation-lattice oracle equivalence", 60):
        mismatches = []
        for _ in range(50):
            k = rng.randint(1, 3)
            values = [Fraction(rng.choice((1, -1)) * rng.randint(1, 30), rng.randint(1, 30)) for _ in range(k)]
            lat = relation_lattice(MultGroup.of([Q(v) for v in values], Q), 4)
            for b in lat.basis:
                assert is_relation([Q(v) for v in values], b, Q)
            if list(lat.basis) != box_lattice(values, 4):
                mismatches.append((values, lat.basis, lat.status))
        assert not mismatches, mismatches


def _numeric_torsion_free(x):
    with mpmath.workprec(80):
        return any(abs(abs(b.evaluate(x)) - 1) > mpmath.mpf(10) ** -10 for b in embeddings(x.field, 64))


def test_acceptance_03_roots_of_unity():
    K = nf_new([1, 0, -1, 0, 1])
    rng = random.Random(303)
    with criterion(3, "Root-of-unity completeness in Q(zeta12)", 10):
        z = K.gen
        assert len({z**k for k in range(12)}) == 12
        for k in range(12):
            assert is_root_of_unity(z**k) == 12 // gcd(k, 12)
        found = 0
        while found < 20:
            x = K([rng.randint(-3, 3) for _ in range(4)])
            if x.is_zero() or not _numeric_torsion_free(x):
                continue
            assert is_root_of_unity(x) is None
            found += 1


def test_acceptance_04_resultant_structure():
    rng = random.Random(404)
    with criterion(4, "Case-2 resultant degree and leading coefficient", 60):
        done = 0
        while done < 20:
            g, gl, A, s, n = random_case2_instance(rng, Q)
            p11 = build_case2_poly(g, gl, A, s, (1, 1))
            variables = ("x",) + p11.vars
            q = MPoly.var("x", variables, Q) - p11.with_vars(variables)
            e = q.degree_in("z")
            if e < 1:
                continue
            entries = [(a, b) for a in range(1, n + 1) for b in range(1, n + 1) if a != b]
            rng.shuffle(entries)
            picked = None
            for ab in entries:
                p = build_case2_poly(g, gl, A, s, ab)
                if "z" in p.vars and p.degree_in("z") >= 1:
                    picked = p
                    break
            if picked is None:
                continue
            psis = z_coefficients(picked)
            t = rng.choice([k for k in range(1, len(psis)) if not psis[k].is_zero()])
            f = resultant_z(q, truncate_z(picked, t))
            assert f.degree_in("x") == t
            lead = mpoly_to_sympy(f.coefficients_in("x")[t])
            want = sympy.expand(mpoly_to_sympy(psis[t]) ** e)
            assert sympy.expand(lead - want) == 0 or sympy.expand(lead + want) == 0
            done += 1


def test_acceptance_05_case1_evaluation():
    rng = random.Random(505)
    with criterion(5, "Case-1 evaluation identity", 30):
        for _ in range(30):
            n, r = rng.choice([2, 3]), rng.choice([1, 2, 3])
            g = random_invertible(rng, n, Q)
            gl = [random_invertible(rng, n, Q) for _ in range(r)]
            lams = [[Fraction(rng.choice((1, -1)) * rng.randint(1, 5), rng.randint(1, 4)) for _ in range(n)]
                    for _ in range(r)]
            exps = [rng.randint(-3, 3) for _ in range(r)]
            entry = (rng.randint(1, n), rng.randint(1, n))
            p = build_case1_poly(g, gl, entry)
            point = {case_var(i + 1, j + 1): Q(lams[i][j] ** exps[i]) for i in range(r) for j in range(n)}
            prod = NFMatrix.identity(n)
            for gi, lam, a in zip(gl, lams, exps):
                prod = prod * (gi * D(*lam) * gi.inverse()) ** a
            want = (g.inverse() * prod * g).rows[entry[0] - 1][entry[1] - 1]
            assert p.eval(point) == want


def test_acceptance_06_case2_desk_check():
    gamma = D(5, Fraction(1, 5))
    gens = [NFMatrix.from_rows([[1, 1], [0, 1]]), D(2, Fraction(1, 2))]
    with criterion(6, "Case-2 desk check", 120):
        cert = theorem41_pipeline(gamma, gens, m_range=15, box=40)
        assert cert.independence.independent == "yes"
        assert cert.J_scan.ms == [0]
        assert cert.conclusion == "consistent-with-finiteness"
        assert set(naive_J(gamma, gens, 15, 40)) == {0}


def test_acceptance_07_negative_control():
    gamma = D(4, Fraction(1, 4))
    with criterion(7, "Dependent-eigenvalue negative control", 30):
        cert = theorem41_pipeline(gamma, [D(2, Fraction(1, 2))], m_range=10, box=40)
        assert cert.conclusion == "hypothesis-violated"
        assert cert.independence.independent == "no"
        assert check_witness(cert.lam, [Q(2), Q(Fraction(1, 2))], cert.independence.witness)
        assert cert.J_scan.ms == list(range(-10, 11))
        rep = compute_J(gamma, [D(2, Fraction(1, 2))], 10, 40)
        assert all(w.verify(gamma, [D(2, Fraction(1, 2))]) for w in rep.witnesses)


def test_acceptance_08_laurent():
    names = ("x", "x1")
    f = MPoly.var("x", names, Q) - MPoly.var("x1", names, Q)
    with criterion(8, "Laurent enumeration", 30):
        assert laurent_enumerate(f, Q(2), [Q(3)], 50, 50).solutions == ((0, (0,)),)
        rep = laurent_enumerate(f, Q(2), [Q(4)], 50, 50)
        assert rep.solutions == tuple((2 * k, (k,)) for k in range(-25, 26))


def test_acceptance_09_specialization():
    a = RatFuncMatrix(["y"], [[1, "y"], [0, 1]])
    b = RatFuncMatrix(["y"], [[1, 0], ["y", 1]])
    with criterion(9, "Specialization suite", 60):
        rec = specialize([a, b], "y", seed=0)
        assert all(rec.checks.values())
        (c,) = rec.point
        assert c != 0
        assert rec.image_matrices == [NFMatrix.from_rows([[1, c], [0, 1]]), NFMatrix.from_rows([[1, 0], [c, 1]])]
        w = derived_depth_witness(rec.image_matrices, 2, 3, 500, seed=0)
        assert w is not None
        assert w.replay(rec.image_matrices) == w.element and not w.element.is_identity()


def test_acceptance_10_solvable_negative_control():
    rng = random.Random(1010)
    with criterion(10, "Solvable negative control", 60):
        for k in range(20):
            gens = []
            while len(gens) < 3:
                m = NFMatrix.from_rows([[rng.randint(-3, 3) if j >= i else 0 for j in range(3)] for i in range(3)])
                if not m.det().is_zero():
                    gens.append(m)
            assert derived_depth_witness(gens, 2, 4, 50, seed=k) is None


def test_acceptance_11_genericity():
    with criterion(11, "Genericity heuristic", 10):
        cubic = NFMatrix.from_rows([[0, 0, 1], [1, 0, 1], [0, 1, 0]])  # companion of t^3 - t - 1
        rep = genericity_heuristic(cubic, [2, 5])
        assert rep.verdict == "weyl-contained-confirmed"
        assert set(rep.cycle_types) == {(3,), (2, 1)}
        assert genericity_heuristic(D(1, 2, 3), 10).verdict == "unknown"


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
