import random
from fractions import Fraction
from math import gcd

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from boundgen.errors import ZeroElement
from boundgen.multrel import (
    MultGroup,
    check_witness,
    eigenvalue_group,
    is_multiplicatively_independent,
    is_relation,
    is_root_of_unity,
    relation_lattice,
    torsion_free_nontrivial,
)
from boundgen.nflinalg import NFMatrix
from boundgen.qarith import embeddings, nf_new, rationals

from _oracles import box_lattice

Q = rationals()
ZETA12 = nf_new([1, 0, -1, 0, 1])


def G(*vals, field=Q):
    return MultGroup.of([field(Fraction(v)) for v in vals], field)


def D(*vals):
    return NFMatrix.diag([Fraction(v) for v in vals], Q)


def test_eigenvalue_group_examples():
    assert len(eigenvalue_group([NFMatrix.identity(3)])) == 0
    assert eigenvalue_group([D(2, 3)]).generators == (Q(2), Q(3))
    grp = eigenvalue_group([D(2, Fraction(1, 2)), NFMatrix.from_rows([[1, 1], [0, 1]])])
    assert grp.generators == (Q(2), Q(Fraction(1, 2)))


def test_is_root_of_unity_examples():
    assert is_root_of_unity(Q(-1)) == 2
    assert is_root_of_unity(Q(2)) is None
    assert is_root_of_unity(Q(1)) == 1
    K = nf_new([1, -1, 1])
    assert is_root_of_unity(K.gen) == 6
    with pytest.raises(ZeroElement):
        is_root_of_unity(Q(0))


def test_relation_lattice_examples():
    assert relation_lattice(G(2, 3), 4).basis == ()
    lat = relation_lattice(G(2, 3, 12), 4)
    assert lat.basis == ((2, 1, -1),)
    assert relation_lattice(G(1), 4).basis == ((1,),)
    assert lat.to_json() == {"basis": [[2, 1, -1]], "box": 4, "status": "verified-within-box"}


def test_relation_lattice_torsion_and_number_field():
    assert relation_lattice(G(-1, 2), 3).basis == ((2, 0),)
    z = ZETA12.gen
    lat = relation_lattice(MultGroup.of([z, z**3]), 4)
    assert lat.contains((3, -1)) and lat.contains((12, 0))
    for b in lat.basis:
        assert is_relation([z, z**3], b, ZETA12)


def test_lll_finds_relation_outside_box():
    lat = relation_lattice(G(Fraction(16, 27), Fraction(3, 8), 2), 2)
    assert lat.contains((1, 3, 5))
    assert lat.status == "lll-proposed-and-verified"
    assert box_lattice([Fraction(16, 27), Fraction(3, 8), 2], 2) == []


fractions_30 = st.builds(
    lambda s, n, d: Fraction(s * n, d), st.sampled_from([1, -1]), st.integers(1, 30), st.integers(1, 30)
)


@settings(max_examples=60, deadline=None)
@given(st.lists(fractions_30, min_size=1, max_size=3))
def test_relation_lattice_vs_box_oracle(values):
    lat = relation_lattice(G(*values), 3)
    oracle = box_lattice(values, 3)
    for b in lat.basis:
        assert is_relation([Q(v) for v in values], b, Q)
    if lat.status == "verified-within-box":
        assert list(lat.basis) == oracle
    else:
        assert all(lat.contains(v) for v in oracle)


def test_independence_examples():
    v = is_multiplicatively_independent(Q(5), G(2, 3), 4)
    assert v.independent == "yes"
    v = is_multiplicatively_independent(Q(6), G(2, 3), 4)
    assert v.independent == "no" and v.witness == (1, -1, -1)
    assert check_witness(Q(6), [Q(2), Q(3)], v.witness)
    v = is_multiplicatively_independent(Q(1), G(7), 4)
    assert v.independent == "no" and v.witness == (1, 0)


def test_independence_witness_is_exact():
    K = nf_new([-2, 0, 1])
    r = K.gen
    lam = 3 + 2 * r  # (1 + r)^2
    v = is_multiplicatively_independent(lam, MultGroup.of([1 + r, K(3)]), 4)
    assert v.independent == "no"
    assert check_witness(lam, [1 + r, K(3)], v.witness)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 12), st.lists(st.integers(2, 12), min_size=1, max_size=3), st.randoms())
def test_independence_stable_under_permutation_and_inversion(lam, mus, rnd):
    base = is_multiplicatively_independent(Q(lam), G(*mus), 4).independent
    perm = list(mus)
    rnd.shuffle(perm)
    assert is_multiplicatively_independent(Q(lam), G(*perm), 4).independent == base
    flipped = [Fraction(1, m) if i == 0 else m for i, m in enumerate(perm)]
    v = is_multiplicatively_independent(Q(lam), G(*flipped), 4)
    assert v.independent == base
    if v.witness:
        assert check_witness(Q(lam), [Q(x) for x in flipped], v.witness)


def test_torsion_free_examples():
    assert torsion_free_nontrivial(G(2, 3))
    assert not torsion_free_nontrivial(G(-1))
    assert not torsion_free_nontrivial(G(1))
    assert not torsion_free_nontrivial(G(2, -2))


def _numeric_torsion_free(x):
    """Non-torsion if some embedding has absolute value away from 1."""
    with mpmath.workprec(80):
        return any(abs(abs(b.evaluate(x)) - 1) > mpmath.mpf(10) ** -10 for b in embeddings(x.field, 64))


def test_roots_of_unity_in_zeta12():
    z = ZETA12.gen
    for k in range(12):
        assert is_root_of_unity(z**k) == 12 // gcd(k, 12)
    rng = random.Random(7)
    found = 0
    while found < 20:
        x = ZETA12([rng.randint(-3, 3) for _ in range(4)])
        if x.is_zero() or not _numeric_torsion_free(x):
            continue
        assert is_root_of_unity(x) is None
        found += 1
