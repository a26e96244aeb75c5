"""Matroids: matrix ranks, axioms, the two seven-point builds, conversion."""

import itertools
import random

import pytest

from icbound.errors import InputError, ResourceCapError
from icbound.groundset import GroundSet, popcount
from icbound.matroid import (Matroid, fano, nonfano, rank_from_matrix,
                             to_index_coding, uniform_matroid)

from oracles import fp_rank, graphic_rank

FANO_COLS = [[int(c) for c in lab] for lab in
             ("100", "010", "001", "110", "101", "011", "111")]


def column_submatrix(cols, mask):
    return [list(row) for row in zip(*(c for i, c in enumerate(cols)
                                       if mask >> i & 1))] if mask else []


@pytest.mark.parametrize("p,builder", [(2, fano), (3, nonfano)])
def test_matrix_ranks_match_elimination_oracle(p, builder):
    m = builder()
    for mask in range(1 << 7):
        sub = column_submatrix(FANO_COLS, mask)
        assert m.rank(mask) == fp_rank(sub, p)


def test_characteristic_splits_the_triangle():
    tri = fano().gs.mask_of(["110", "101", "011"])
    assert fano().rank(tri) == 2
    assert nonfano().rank(tri) == 3
    # and over any odd prime the ranks agree with GF(3)
    m5 = rank_from_matrix(nonfano().gs.labels, FANO_COLS, 5)
    assert m5.ranks == nonfano().ranks


def test_identity_matrix_is_free():
    cols = [[1 if i == j else 0 for i in range(4)] for j in range(4)]
    m = rank_from_matrix(["a", "b", "c", "d"], cols, 2)
    assert all(m.rank(s) == popcount(s) for s in range(16))


def test_rank_invariant_under_row_operations():
    # add row 0 into row 1 and scale row 2: the matroid cannot notice
    cols = [[c[0], (c[1] + c[0]) % 3, (2 * c[2]) % 3] for c in FANO_COLS]
    assert rank_from_matrix(nonfano().gs.labels, cols, 3) == nonfano()


def test_axioms_reject_bad_vectors():
    gs = GroundSet(["a", "b"])
    with pytest.raises(InputError):
        Matroid(gs, [1, 1, 1, 2]).check_axioms()  # r(empty) != 0
    with pytest.raises(InputError):
        Matroid(gs, [0, 2, 1, 2]).check_axioms()  # rank jump of 2
    with pytest.raises(InputError):
        # steps are all 0 or 1, yet two loops cannot span anything
        Matroid(gs, [0, 0, 0, 1]).check_axioms()


def test_from_rank_function_checks_axioms():
    gs = GroundSet(["a", "b", "c"])
    m = Matroid.from_rank_function(gs, lambda s: min(popcount(s), 2))
    assert m.ranks == uniform_matroid(2, 3).ranks
    with pytest.raises(InputError):
        Matroid.from_rank_function(gs, lambda s: popcount(s) % 2)


def test_graphic_rank_functions_are_matroids():
    rng = random.Random(5)
    for _ in range(10):
        nv = rng.randint(2, 5)
        edges = [(u, v) for u in range(nv) for v in range(u + 1, nv)
                 if rng.random() < 0.6]
        if not edges:
            continue
        gs = GroundSet([f"{u}-{v}" for u, v in edges])
        m = Matroid.from_rank_function(
            gs, lambda s: graphic_rank(nv, edges, s))
        assert m.full_rank <= nv - 1


def test_closure_operator():
    m = fano()
    gs = m.gs
    pair = gs.mask_of(["100", "010"])
    assert m.closure(pair) == gs.mask_of(["100", "010", "110"])
    assert m.closure(0) == 0  # no loops here
    line = gs.mask_of(["110", "101"])
    assert m.closure(line) == gs.mask_of(["110", "101", "011"])
    for s in range(0, 1 << 7, 5):
        cl = m.closure(s)
        assert cl & s == s
        assert m.rank(cl) == m.rank(s)


def test_adjoin_zero():
    m = fano().adjoin_zero("e")
    assert m.n == 8
    assert m.gs.labels[-1] == "e"
    e_bit = 1 << 7
    for s in range(1 << 7):
        assert m.rank(s | e_bit) == fano().rank(s)
    assert m.closure(0) == e_bit  # the new element is a loop
    with pytest.raises(InputError):
        fano().adjoin_zero("111")  # label collision


def test_basis_intersection_empty():
    assert fano().basis_intersection_empty()
    assert nonfano().basis_intersection_empty()
    assert uniform_matroid(2, 4).basis_intersection_empty()
    assert not uniform_matroid(3, 3).basis_intersection_empty()  # all coloops
    # one bridge in an otherwise parallel pair
    gs = GroundSet(["a", "b"])
    bridge = Matroid(gs, [0, 1, 1, 2])
    assert not bridge.basis_intersection_empty()


def test_to_index_coding_receiver_structure():
    inst = to_index_coding(fano())
    assert len(inst.receivers) == 49
    assert len(to_index_coding(nonfano()).receivers) == 62
    # every receiver decodes: the wanted element sits in the closure
    m = fano()
    for want, knows in inst.receivers:
        assert m.rank(knows | 1 << want) == m.rank(knows)
        # minimality: dropping any known element breaks the span
        for i in range(7):
            bit = 1 << i
            if knows & bit:
                smaller = knows & ~bit
                assert m.rank(smaller | 1 << want) > m.rank(smaller)
    full = to_index_coding(fano(), minimal=False)
    assert len(full.receivers) > 49
    for s in range(0, 1 << 7, 3):
        assert inst.closure(s) == full.closure(s)


def test_dense_cap():
    with pytest.raises(ResourceCapError):
        uniform_matroid(2, 13)


def test_rank_from_matrix_validation():
    with pytest.raises(InputError):
        rank_from_matrix(["a"], [[1, 0]], 4)  # not prime
    with pytest.raises(InputError):
        rank_from_matrix(["a", "b"], [[1, 0]], 2)  # column count mismatch
    with pytest.raises(InputError):
        rank_from_matrix(["a", "b"], [[1, 0], [1]], 2)  # ragged heights
