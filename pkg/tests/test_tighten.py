"""The tightening transformation, its transpose, and subspace-tuple validity."""

import random

import pytest

from icbound.errors import InputError
from icbound.groundset import GroundSet, SetVector
from icbound.matroid import fano, nonfano
from icbound.rational import ZERO, rat
from icbound.tighten import (SubspaceTuple, b0_apply, b0_transpose_apply,
                             bk_apply, bk_transpose_apply, dimension_vector,
                             fano_alpha, fano_groundset, lambda_even,
                             lambda_odd, project_tuple, quotient_tuple,
                             random_subspace_tuple, tighten_apply,
                             tighten_transpose_apply)

from oracles import dense_b0, dense_bk, dense_tighten, matvec, mat_tvec

GS3E = GroundSet(["a", "b", "e"])


def rand_vector(rng, gs, density=0.5):
    data = {}
    for s in range(1 << gs.n):
        if rng.random() < density:
            data[s] = rat(rng.randint(-9, 9))
    return SetVector(gs, data)


def ones(gs):
    return SetVector(gs, {s: rat(1) for s in range(1 << gs.n)})


def indicator(gs, j):
    return SetVector(gs, {s: rat(1) for s in range(1 << gs.n) if s >> j & 1})


def test_lambda_dot_products():
    r_f = fano().rank_vector()
    r_n = nonfano().rank_vector()
    assert lambda_odd().dot(r_f) == rat(-1)
    assert lambda_even().dot(r_n) == rat(-1)
    assert lambda_odd().dot(r_n) == ZERO
    assert lambda_even().dot(r_f) == ZERO


def test_tighten_kills_ones_and_indicators():
    gs_j = fano_groundset().append("e")
    assert tighten_apply(ones(gs_j)) == SetVector.zero(fano_groundset())
    for j in range(gs_j.n):
        assert tighten_apply(indicator(gs_j, j)) == SetVector.zero(fano_groundset())


def test_tighten_maps_extended_ranks_back():
    for m in (fano(), nonfano()):
        extended = m.adjoin_zero("e").rank_vector()
        assert tighten_apply(extended) == m.rank_vector()


def test_alpha_cuts_the_matching_rank_vector():
    assert fano_alpha("odd").dot(fano().adjoin_zero("e").rank_vector()) == rat(-1)
    assert fano_alpha("even").dot(nonfano().adjoin_zero("e").rank_vector()) == rat(-1)
    assert fano_alpha("odd").dot(nonfano().adjoin_zero("e").rank_vector()) == ZERO
    assert fano_alpha("even").dot(fano().adjoin_zero("e").rank_vector()) == ZERO


def test_quotient_and_projection_steps_match_dense_oracle():
    rng = random.Random(17)
    for m in (2, 3):
        gs_j = GroundSet([str(i) for i in range(m - 1)] + ["e"])
        gs_i = GroundSet([str(i) for i in range(m - 1)])
        d0 = dense_b0(m)
        for _ in range(12):
            u = rand_vector(rng, gs_j)
            got = b0_apply(u)
            want = matvec(d0, [u.get(s) for s in range(1 << m)])
            assert [got.get(s) for s in range(1 << (m - 1))] == want
            w = rand_vector(rng, gs_i)
            gott = b0_transpose_apply(w, gs_j)
            wantt = mat_tvec(d0, [w.get(s) for s in range(1 << (m - 1))])
            assert [gott.get(s) for s in range(1 << m)] == wantt
        for k in range(m - 1):
            dk = dense_bk(m - 1, k)
            for _ in range(8):
                v = rand_vector(rng, gs_i)
                got = bk_apply(v, str(k))
                want = matvec(dk, [v.get(s) for s in range(1 << (m - 1))])
                assert [got.get(s) for s in range(1 << (m - 1))] == want
                w = rand_vector(rng, gs_i)
                gott = bk_transpose_apply(w, str(k))
                wantt = mat_tvec(dk, [w.get(s) for s in range(1 << (m - 1))])
                assert [gott.get(s) for s in range(1 << (m - 1))] == wantt


def test_full_tighten_matches_dense_composition():
    rng = random.Random(23)
    for m in (2, 3, 4):
        gs_j = GroundSet([str(i) for i in range(m - 1)] + ["e"])
        dense = dense_tighten(m)
        for _ in range(10):
            u = rand_vector(rng, gs_j)
            got = tighten_apply(u)
            want = matvec(dense, [u.get(s) for s in range(1 << m)])
            assert [got.get(s) for s in range(1 << (m - 1))] == want


def test_transpose_is_the_adjoint():
    rng = random.Random(29)
    gs_j = GroundSet(["a", "b", "c", "e"])
    gs_i = GroundSet(["a", "b", "c"])
    for _ in range(20):
        u = rand_vector(rng, gs_j)
        w = rand_vector(rng, gs_i)
        assert tighten_apply(u).dot(w) == u.dot(tighten_transpose_apply(w))
        assert b0_apply(u).dot(w) == u.dot(b0_transpose_apply(w, gs_j))
        wb = rand_vector(rng, gs_i)
        vb = rand_vector(rng, gs_i)
        assert bk_apply(vb, "b").dot(wb) == vb.dot(bk_transpose_apply(wb, "b"))


def test_lambda_validity_sampled():
    for parity, primes, lam in (("even", (2,), lambda_even()),
                                ("odd", (3, 5), lambda_odd())):
        for p in primes:
            for seed in range(60):
                tup = random_subspace_tuple(p, 4, 7, seed=seed)
                d = dimension_vector(tup, fano_groundset())
                assert lam.dot(d) >= ZERO, (parity, p, seed)


def test_alpha_validity_on_extended_tuples():
    gs_j = fano_groundset().append("e")
    for parity, p in (("even", 2), ("odd", 3)):
        alpha = fano_alpha(parity)
        for seed in range(40):
            tup = random_subspace_tuple(p, 4, 8, seed=1000 + seed)
            d = dimension_vector(tup, gs_j)
            assert alpha.dot(d) >= ZERO, (parity, seed)


def test_quotient_tuple_realizes_b0():
    rng = random.Random(31)
    for p in (2, 3):
        for trial in range(25):
            count = rng.randint(2, 4)
            tup = random_subspace_tuple(p, 4, count, seed=rng.randrange(10 ** 6))
            gs_j = GroundSet([str(i) for i in range(count - 1)] + ["e"])
            gs_i = GroundSet([str(i) for i in range(count - 1)])
            d_before = dimension_vector(tup, gs_j)
            d_after = dimension_vector(quotient_tuple(tup, count - 1), gs_i)
            assert b0_apply(d_before) == d_after


def test_project_tuple_realizes_bk():
    rng = random.Random(37)
    for p in (2, 3):
        for trial in range(25):
            count = rng.randint(2, 4)
            tup = random_subspace_tuple(p, 4, count, seed=rng.randrange(10 ** 6))
            k = rng.randrange(count)
            gs = GroundSet([str(i) for i in range(count)])
            d_before = dimension_vector(tup, gs)
            d_after = dimension_vector(project_tuple(tup, k), gs)
            assert bk_apply(d_before, str(k)) == d_after


def test_full_tighten_realized_by_tuple_surgery():
    rng = random.Random(41)
    for p in (2, 3):
        for trial in range(10):
            tup = random_subspace_tuple(p, 4, 4, seed=rng.randrange(10 ** 6))
            gs_j = GroundSet(["0", "1", "2", "e"])
            gs_i = GroundSet(["0", "1", "2"])
            d = dimension_vector(tup, gs_j)
            cooked = quotient_tuple(tup, 3)
            for k in range(3):
                cooked = project_tuple(cooked, k)
            assert tighten_apply(d) == dimension_vector(cooked, gs_i)


def test_input_validation():
    with pytest.raises(InputError):
        b0_apply(SetVector.zero(GS3E), "a")  # dropped element must come last
    with pytest.raises(InputError):
        b0_transpose_apply(SetVector.zero(GS3E), GS3E)  # wrong domain
    with pytest.raises(InputError):
        SubspaceTuple(2, 3, ((( 1, 0, 1), (1, 0, 1)),))  # dependent rows
    with pytest.raises(InputError):
        fano_alpha("middling")
    with pytest.raises(InputError):
        dimension_vector(random_subspace_tuple(2, 3, 2), GS3E)  # size clash
