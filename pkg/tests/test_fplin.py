import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from pgrouplab import fplin as fp
from pgrouplab.fplin import SmallField
from pgrouplab.qcombin import galois_number


def random_matrix(rng, m, p):
    return tuple(tuple(rng.randrange(p) for _ in range(m)) for _ in range(m))


@given(
    p=st.sampled_from([2, 3, 5]),
    rows=st.lists(st.lists(st.integers(0, 6), min_size=3, max_size=3), min_size=1, max_size=4),
)
def test_rref_idempotent_and_canonical(p, rows):
    red = fp.rref(rows, p)
    assert fp.rref(red, p) == red
    # scaling rows by units does not change the canonical form
    scaled = [[(2 * x) % p for x in r] for r in rows] if p > 2 else rows
    assert fp.rref(scaled + list(rows), p) == red


def test_mat_inverse_roundtrip():
    rng = random.Random(7)
    for p in (2, 3, 5):
        for _ in range(20):
            m = random_matrix(rng, 3, p)
            if not fp.is_invertible(m, p):
                continue
            assert fp.mat_mul(m, fp.mat_inverse(m, p), p) == fp.mat_identity(3)


def test_mat_inverse_rejects_singular():
    with pytest.raises(ValueError):
        fp.mat_inverse(((1, 1), (1, 1)), 2)


@pytest.mark.parametrize("m,p,want", [(2, 2, 5), (3, 3, 28), (1, 5, 2)])
def test_enumerate_subspaces_counts(m, p, want):
    subs = list(fp.enumerate_subspaces(m, p))
    assert len(subs) == want
    assert len({s.rows for s in subs}) == want
    assert want == galois_number(m, p)


def test_enumerate_subspaces_guard():
    with pytest.raises(ValueError):
        list(fp.enumerate_subspaces(10, 5))


@pytest.mark.parametrize("d,p,want", [(2, 2, 6), (1, 3, 2), (2, 3, 48)])
def test_gl_enumerate_counts(d, p, want):
    mats = fp.gl_enumerate(d, p)
    assert len(mats) == want
    assert len(set(mats)) == want
    assert all(fp.is_invertible(g, p) for g in mats)


def test_gl_enumerate_guard():
    with pytest.raises(ValueError):
        fp.gl_enumerate(3, 5)


def test_invariant_subspace_count_examples():
    assert fp.invariant_subspace_count(fp.mat_identity(2), 2) == 5
    assert fp.invariant_subspace_count(((1, 1), (0, 1)), 2) == 3
    assert fp.invariant_subspace_count(fp.companion_matrix((1, 1, 1), 2), 2) == 2


def test_invariant_subspace_count_rejects_singular():
    with pytest.raises(ValueError):
        fp.invariant_subspace_count(((1, 0), (0, 0)), 2)


def test_invariant_count_is_conjugation_invariant():
    rng = random.Random(11)
    gl = fp.gl_enumerate(3, 2)
    for _ in range(15):
        g = rng.choice(gl)
        h = rng.choice(gl)
        conj = fp.mat_mul(fp.mat_mul(h, g, 2), fp.mat_inverse(h, 2), 2)
        assert fp.invariant_subspace_count(g, 2) == fp.invariant_subspace_count(conj, 2)


# ---------------------------------------------------------------------------
# wedge module


def test_wedge_d2_is_determinant_block():
    for p in (3, 5):
        for g in fp.gl_enumerate(2, p):
            w = fp.wedge_matrix(g, p)
            det = (g[0][0] * g[1][1] - g[0][1] * g[1][0]) % p
            assert w[2][2] == det
            assert w[2][0] == w[2][1] == w[0][2] == w[1][2] == 0


def test_wedge_frozen_example():
    assert fp.wedge_matrix(((1, 0), (0, 2)), 3) == ((1, 0, 0), (0, 2, 0), (0, 0, 2))
    ident = fp.mat_identity(3)
    assert fp.wedge_matrix(ident, 5) == fp.mat_identity(6)


def test_wedge_is_multiplicative():
    rng = random.Random(3)
    gl = fp.gl_enumerate(3, 3)
    for _ in range(25):
        g, h = rng.choice(gl), rng.choice(gl)
        lhs = fp.wedge_matrix(fp.mat_mul(g, h, 3), 3)
        rhs = fp.mat_mul(fp.wedge_matrix(g, 3), fp.wedge_matrix(h, 3), 3)
        assert lhs == rhs


@pytest.mark.parametrize("d,p", [(2, 2), (2, 3), (2, 5), (3, 2), (3, 3)])
def test_only_identity_acts_as_scalar_on_wedge(d, p):
    ident = fp.mat_identity(d)
    for g in fp.gl_enumerate(d, p):
        if g == ident:
            continue
        w = fp.wedge_matrix(g, p)
        m = len(w)
        c = w[0][0]
        assert any(w[i][j] != (c if i == j else 0) for i in range(m) for j in range(m))


def test_only_identity_acts_as_scalar_on_wedge_3_5_class_reps():
    # scalar action is a conjugation invariant, so class representatives
    # cover all of GL(3,5)
    ident = fp.mat_identity(3)
    for g in fp.gl_class_reps(3, 5):
        if g == ident:
            continue
        w = fp.wedge_matrix(g, 5)
        c = w[0][0]
        assert any(
            w[i][j] != (c if i == j else 0) for i in range(len(w)) for j in range(len(w))
        )


# ---------------------------------------------------------------------------
# orbit counting


def test_trivial_action_orbits():
    act = fp.LinearAction((fp.mat_identity(2),), 2, 2, name="trivial")
    count, fixed = fp.cauchy_frobenius(act)
    assert count == 5 and fixed == [5]
    census = fp.regular_orbits(act)
    assert census.orbit_count == 5
    assert census.regular_count == 5  # stabilizers are the whole trivial group


def test_gl23_natural_orbits():
    act = fp.natural_action(2, 3)
    count, _ = fp.cauchy_frobenius(act)
    census = fp.regular_orbits(act)
    assert count == census.orbit_count == 3
    assert census.regular_count == 0
    assert sum(size for size, _ in census.orbits) == galois_number(2, 3)
    for size, stab in census.orbits:
        assert size * stab == len(act)


@pytest.mark.parametrize("p", [3, 5])
def test_wedge_orbit_consistency(p):
    act = fp.wedge_module(2, p)
    count, _ = fp.cauchy_frobenius(act)
    census = fp.regular_orbits(act)
    assert count == census.orbit_count
    assert census.regular_count <= census.orbit_count
    assert sum(size for size, _ in census.orbits) == galois_number(3, p)


def test_action_closure_is_verified():
    # over F_3 the transvection has order 3, so {I, t} is not closed
    bad = (fp.mat_identity(2), ((1, 1), (0, 1)))
    with pytest.raises(ValueError):
        fp.LinearAction(bad, 3, 2)


def test_wedge_p2_carries_split_note():
    act = fp.wedge_module(2, 2)
    assert act.notes and "split" in act.notes[0]


# ---------------------------------------------------------------------------
# polynomial helpers


@given(
    p=st.sampled_from([2, 3, 5]),
    a=st.lists(st.integers(0, 4), min_size=1, max_size=6),
    b=st.lists(st.integers(0, 4), min_size=1, max_size=4),
)
@settings(max_examples=60)
def test_poly_divmod_roundtrip(p, a, b):
    if not fp.poly_trim([x % p for x in b]):
        return
    q, r = fp.poly_divmod(a, b, p)
    recon = fp.poly_trim(
        tuple(
            (x + y) % p
            for x, y in itertools.zip_longest(fp.poly_mul(q, b, p), r, fillvalue=0)
        )
    )
    assert recon == fp.poly_trim(tuple(x % p for x in a))


def test_monic_irreducibles_counts_match_necklace_formula():
    from pgrouplab.freelie import witt_dim

    for p in (2, 3, 5):
        irr = fp.monic_irreducibles(p, 4)
        for deg in (1, 2, 3, 4):
            got = sum(1 for f in irr if len(f) - 1 == deg)
            assert got == witt_dim(p, deg)


def test_companion_matrix_shape():
    c = fp.companion_matrix((1, 1, 1), 2)
    assert c == ((0, 1), (1, 1))


def test_gl_class_reps_counts():
    # the number of conjugacy classes of GL(n, q) is known in closed form
    assert len(fp.gl_class_reps(2, 2)) == 2**2 - 1
    assert len(fp.gl_class_reps(2, 3)) == 3**2 - 1
    assert len(fp.gl_class_reps(2, 5)) == 5**2 - 1
    assert len(fp.gl_class_reps(3, 2)) == 2**3 - 2
    assert len(fp.gl_class_reps(3, 3)) == 3**3 - 3
    assert len(fp.gl_class_reps(3, 5)) == 5**3 - 5
    for g in fp.gl_class_reps(3, 3):
        assert fp.is_invertible(g, 3)


# ---------------------------------------------------------------------------
# small fields


@pytest.mark.parametrize("q", [4, 8, 9])
def test_small_field_axioms(q):
    f = SmallField(q)
    rng = random.Random(q)
    triples = [(rng.randrange(q), rng.randrange(q), rng.randrange(q)) for _ in range(200)]
    for a, b, c in triples:
        assert f.mul[a][f.mul[b][c]] == f.mul[f.mul[a][b]][c]
        assert f.mul[a][f.add[b][c]] == f.add[f.mul[a][b]][f.mul[a][c]]
    for a in range(1, q):
        assert f.mul[a][f.inv[a]] == 1
    assert all(f.add[a][f.neg[a]] == 0 for a in range(q))


def test_small_field_rejects_non_prime_power():
    with pytest.raises(ValueError):
        SmallField(6)
