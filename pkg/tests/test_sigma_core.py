import pytest
from hypothesis import given

from instances import labelled, patterns, sigmas
from sigmadae.errors import InfinitePosition, InvalidOffsets
from sigmadae.sigma_core import (
    BlockForm,
    Emblem,
    OffsetPair,
    Permutation,
    SignatureMatrix,
    SparsityPattern,
    Transversal,
    emblem_of,
    emblems_equal,
    is_structurally_well_posed,
    is_transversal,
    jacobian_pattern,
    pattern_of,
    permute_pattern,
    permute_sigma,
    transversal_value,
)


def pos1(*pairs):
    return frozenset((i - 1, j - 1) for i, j in pairs)


def test_pattern_of_pendulum(pend):
    assert pattern_of(pend).positions == pos1((1, 1), (1, 3), (2, 2), (2, 3), (3, 1), (3, 2))


def test_pattern_of_empty():
    assert len(pattern_of(SignatureMatrix(2, {}))) == 0


def test_pattern_of_two_pendula(two):
    s = pattern_of(two)
    # the printed matrix has 14 finite entries
    assert len(s) == 14
    assert (5, 2) in s and (5, 4) in s


def test_is_transversal(pend):
    s = pattern_of(pend)
    assert is_transversal(s, Transversal.from_cols([0, 2, 1]))
    assert not is_transversal(s, Transversal.from_cols([1, 2, 0]))
    full = SparsityPattern(2, frozenset({(0, 0), (0, 1), (1, 0), (1, 1)}))
    assert is_transversal(full, Transversal.from_cols([0, 1]))
    assert is_transversal(full, Transversal.from_cols([1, 0]))


def test_transversal_value(pend, two):
    assert transversal_value(pend, Transversal.from_cols([0, 2, 1])) == 2
    # diagonal HVT of the permuted two-pendula matrix: (E,v)(D,mu)(F,u)(A,x)(C,y)(B,lam)
    t = Transversal.from_cols([0, 2, 1, 5, 4, 3])
    assert transversal_value(two, t) == 5
    assert transversal_value(SignatureMatrix(1, {(0, 0): 7}), Transversal.from_cols([0])) == 7
    with pytest.raises(InfinitePosition):
        transversal_value(pend, Transversal.from_cols([1, 2, 0]))


def test_well_posed(pend, two):
    assert is_structurally_well_posed(pend)
    assert is_structurally_well_posed(two)
    assert not is_structurally_well_posed(SignatureMatrix(2, {(0, 0): 1, (0, 1): 0}))


def test_jacobian_pattern(pend, mod, two):
    assert jacobian_pattern(pend, OffsetPair((0, 0, 2), (2, 2, 0))) == pattern_of(pend)
    s0 = jacobian_pattern(mod, OffsetPair((0, 0, 1), (2, 2, 0)))
    assert s0.positions == pattern_of(mod).positions - {(2, 1)}
    s0 = jacobian_pattern(two, OffsetPair((4, 4, 6, 0, 0, 2), (6, 6, 4, 2, 3, 0)))
    # only (B,x) and (F,v) miss equality
    assert len(s0) == 12
    assert labelled(two, pattern_of(two).positions - s0.positions) == {("B", "x"), ("F", "v")}


def test_jacobian_pattern_rejects_bad_offsets(pend):
    with pytest.raises(InvalidOffsets):
        jacobian_pattern(pend, OffsetPair((0, 0, 0), (2, 2, 0)))
    with pytest.raises(InvalidOffsets):
        jacobian_pattern(pend, OffsetPair((0, 0, 1), (2, 2, 0)))
    with pytest.raises(InvalidOffsets):
        jacobian_pattern(pend, OffsetPair((-1, -1, 1), (1, 1, -1)))


def test_permute_pattern_pendulum(pend):
    # rows C,A,B and columns y,lam,x
    rho, kappa = Permutation((2, 0, 1)), Permutation((1, 2, 0))
    got = permute_pattern(pattern_of(pend), rho, kappa)
    assert got.positions == pos1((1, 1), (1, 3), (2, 2), (2, 3), (3, 1), (3, 2))
    tilde = permute_sigma(pend, rho, kappa)
    assert tilde.row_labels == ("C", "A", "B") and tilde.col_labels == ("y", "lam", "x")
    assert pattern_of(tilde) == got


def test_permute_pattern_trivial():
    a = SparsityPattern(2, frozenset({(0, 1)}))
    assert permute_pattern(a, Permutation.identity(2), Permutation.identity(2)) == a
    assert permute_pattern(a, Permutation((1, 0)), Permutation.identity(2)).positions == {(1, 1)}


@given(patterns())
def test_permute_inverse_roundtrip(a):
    n = a.n
    rho = Permutation(tuple(reversed(range(n))))
    kappa = Permutation(tuple(range(1, n)) + (0,))
    back = permute_pattern(permute_pattern(a, rho, kappa), rho.inverse(), kappa.inverse())
    assert back == a


ROWS, COLS = "fghk", "wxyz"


def form(rows, cols, sizes):
    return BlockForm(
        Permutation(tuple(ROWS.index(r) for r in rows)),
        Permutation(tuple(COLS.index(c) for c in cols)),
        sizes,
    )


def test_emblems_of_example_forms():
    e1 = emblem_of(ROWS, COLS, form("fghk", "wxyz", (1, 1, 2)))
    e2 = emblem_of(ROWS, COLS, form("gfkh", "xwyz", (1, 1, 2)))
    e3 = emblem_of(ROWS, COLS, form("fgkh", "xwyz", (1, 1, 2)))
    e4 = emblem_of(ROWS, COLS, form("hkfg", "zywx", (2, 2)))
    expect = Emblem(frozenset({(("f",), ("w",)), (("g",), ("x",)), (("h", "k"), ("y", "z"))}))
    assert emblems_equal(e1, e2) and emblems_equal(e1, expect)
    assert not emblems_equal(e1, e3)
    assert not emblems_equal(e1, e4) and not emblems_equal(e3, e4)
    assert e4.sizes() == [2, 2]


def test_emblem_single_block():
    a = emblem_of(ROWS, COLS, form("fghk", "wxyz", (4,)))
    b = emblem_of(ROWS, COLS, form("kghf", "wxyz", (4,)))
    assert emblems_equal(a, b)


def test_emblem_rejects_overlap():
    with pytest.raises(ValueError):
        Emblem(frozenset({((0,), (0,)), ((0,), (1,))}))


def test_signature_matrix_validation():
    with pytest.raises(ValueError):
        SignatureMatrix(2, [(0, 0, 1), (0, 0, 2)])
    with pytest.raises(TypeError):
        SignatureMatrix(1, {(0, 0): 1.5})
    with pytest.raises(ValueError):
        SignatureMatrix(1, {(0, 1): 0})
    with pytest.raises(ValueError):
        SignatureMatrix(2, {}, ["a", "a"])
    s = SignatureMatrix(2, {(1, 0): 3})
    assert s.row_labels == ("f1", "f2") and s.col_labels == ("x1", "x2")
    assert s.entry(1, 0) == 3 and s.entry(0, 0) is None
    assert SignatureMatrix.from_rows(s.to_rows()) == s


@given(sigmas())
def test_submatrix_identity(sigma):
    n = sigma.n
    assert sigma.submatrix(range(n), range(n)) == sigma
    assert hash(sigma.permuted(Permutation.identity(n), Permutation.identity(n))) == hash(sigma)
