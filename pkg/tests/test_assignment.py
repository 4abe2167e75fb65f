import random

import pytest
from hypothesis import given, settings

from instances import by_label, random_instances, sigmas
from sigmadae import oracle
from sigmadae.assignment import canonical_offsets, check_offsets, d_from_c, normalise, solve_hvt
from sigmadae.errors import StructurallyIllPosed
from sigmadae.sigma_core import OffsetPair, Permutation, SignatureMatrix, Transversal, transversal_value

BULLET = Transversal.from_cols([0, 2, 1])  # (A,x) (B,lam) (C,y)
CIRCLE = Transversal.from_cols([2, 1, 0])  # (A,lam) (B,y) (C,x)


def test_hvt_pendulum(pend):
    t, val = solve_hvt(pend)
    assert val == 2
    assert t in (BULLET, CIRCLE)


def test_hvt_two_pendula(two):
    t, val = solve_hvt(two)
    assert val == 5
    assert transversal_value(two, t) == 5


def test_hvt_diagonal():
    sigma = SignatureMatrix(3, {(i, i): 0 for i in range(3)})
    t, val = solve_hvt(sigma)
    assert val == 0 and t == Transversal.from_cols([0, 1, 2])


def test_hvt_ill_posed():
    with pytest.raises(StructurallyIllPosed):
        solve_hvt(SignatureMatrix(2, {(0, 0): 1, (0, 1): 0}))
    with pytest.raises(StructurallyIllPosed):
        solve_hvt(SignatureMatrix(3, {(0, 0): 1, (1, 0): 0, (2, 1): 0, (2, 2): 0}))


def test_canonical_offsets(pend, mod, two):
    assert canonical_offsets(pend) == OffsetPair((0, 0, 2), (2, 2, 0))
    assert canonical_offsets(mod) == OffsetPair((0, 0, 1), (2, 2, 0))
    assert canonical_offsets(two) == OffsetPair((4, 4, 6, 0, 0, 2), (6, 6, 4, 2, 3, 0))


def test_canonical_offsets_independent_of_hvt(pend):
    assert canonical_offsets(pend, BULLET) == canonical_offsets(pend, CIRCLE)


def test_check_offsets(pend):
    ok = check_offsets(pend, OffsetPair((0, 0, 2), (2, 2, 0)))
    assert (ok.is_general, ok.is_valid, ok.is_normalised) == (True, True, True)
    assert ok.witness_hvt in (BULLET, CIRCLE)
    shifted = check_offsets(pend, OffsetPair((1, 1, 3), (3, 3, 1)))
    assert (shifted.is_general, shifted.is_valid, shifted.is_normalised) == (True, True, False)
    assert shifted.describe() == "general valid"
    bad = check_offsets(pend, OffsetPair((0, 0, 0), (2, 2, 0)))
    assert not bad.is_general and bad.describe() == "not a general offset vector"
    neg = check_offsets(pend, OffsetPair((-1, -1, 1), (1, 1, -1)))
    assert neg.is_general and not neg.is_valid


def test_d_from_c(pend, two):
    assert d_from_c(pend, BULLET, (0, 0, 2)) == (2, 2, 0)
    rows, cols = "EDFACB", ["v", "mu", "u", "x", "y", "lam"]
    # diagonal HVT of the permuted matrix, expressed on original indices
    t = Transversal.from_cols([0, 2, 1, 5, 4, 3])
    c = [0] * 6
    for lab, val in zip(rows, (0, 0, 2, 4, 6, 4)):
        c["ABCDEF".index(lab)] = val
    d = d_from_c(two, t, c)
    assert by_label(two, d, cols) == (3, 0, 2, 6, 6, 4)
    assert d_from_c(SignatureMatrix(1, {(0, 0): 5}), Transversal.from_cols([0]), (0,)) == (5,)


def test_normalise(pend):
    assert normalise(OffsetPair((1, 1, 3), (3, 3, 1))) == OffsetPair((0, 0, 2), (2, 2, 0))
    canon = OffsetPair((0, 0, 2), (2, 2, 0))
    assert normalise(canon) == canon
    assert normalise(OffsetPair((5,), (5,))) == OffsetPair((0,), (0,))


@settings(max_examples=150, deadline=None)
@given(sigmas(n_max=6))
def test_hvt_matches_oracle(sigma):
    t, val = solve_hvt(sigma)
    assert val == oracle.hvt_value(sigma)
    assert t in oracle.all_hvts(sigma)


@settings(max_examples=150, deadline=None)
@given(sigmas(n_max=6))
def test_dual_properties(sigma):
    off = canonical_offsets(sigma)
    _, val = solve_hvt(sigma)
    assert check_offsets(sigma, off).is_normalised
    assert sum(off.d) - sum(off.c) == val
    for t in oracle.all_hvts(sigma):
        assert all(off.d[j] - off.c[i] == sigma.entry(i, j) for i, j in t.positions)


def test_val_independent_of_ordering():
    rng = random.Random(11)
    for sigma in random_instances(60, seed=3):
        n = sigma.n
        rho, kappa = list(range(n)), list(range(n))
        rng.shuffle(rho)
        rng.shuffle(kappa)
        other = sigma.permuted(Permutation(tuple(rho)), Permutation(tuple(kappa)))
        assert solve_hvt(other)[1] == solve_hvt(sigma)[1]


def test_canonical_is_smallest_on_random():
    for sigma in random_instances(40, seed=5, n_max=5):
        canon = canonical_offsets(sigma)
        if max(canon.c) > 8:
            continue
        pairs = oracle.normalized_offsets_bruteforce(sigma, max(canon.c))
        assert canon in pairs
        for p in pairs:
            assert all(a <= b for a, b in zip(canon.c, p.c))
            assert all(a <= b for a, b in zip(canon.d, p.d))
