"""Scalar linear codes: validity, minimum-length search, matroid duality,
entropy vectors, and table-code concatenation."""

import random
from fractions import Fraction

import pytest

from icbound.errors import InputError, ResourceCapError
from icbound.gf import rank
from icbound.groundset import GroundSet
from icbound.instance import IndexCodingInstance, cycle_instance, from_graph
from icbound.lincode import (ScalarLinearCode, TableCode, code_entropy_vector,
                             code_to_underrep, concatenate_codes,
                             identity_code, is_valid_code,
                             is_valid_table_code, min_scalar_linear_rate,
                             table_entropy_vector, underrep_check,
                             underrep_to_code)
from icbound.matroid import (_FANO_LABELS, Matroid, fano, nonfano,
                             to_index_coding)
from icbound.rational import rat
from icbound.tighten import fano_schema

import oracles

C5 = cycle_instance(5)
K2 = from_graph([1, 2], [(1, 2)])
P3 = from_graph([1, 2, 3], [(1, 2), (2, 3)])

# rows of the representing matrix: coordinate i of every label
FANO_ROWS = tuple(
    tuple(int(lab[i]) for lab in _FANO_LABELS) for i in range(3)
)

# partition {1,2} {3,4} {5}: each part broadcast as one sum
C5_CODE = ScalarLinearCode(
    2,
    (
        (1, 1, 0, 0, 0),
        (0, 0, 1, 1, 0),
        (0, 0, 0, 0, 1),
    ),
)


def to_fraction(v):
    return Fraction(int(v.numerator), int(v.denominator))


def test_code_constructor_guards():
    with pytest.raises(InputError):
        ScalarLinearCode(4, ((1, 0),))
    with pytest.raises(InputError):
        ScalarLinearCode(2, ((1, 0), (1,)))
    with pytest.raises(InputError):
        ScalarLinearCode(3, ((0, 4),))
    eye = identity_code(3, 4)
    assert eye.length == 4 and eye.n == 4 and eye.row_rank() == 4
    empty = ScalarLinearCode(2, ())
    assert empty.length == 0 and empty.n == 0


def test_validity_matches_brute_force_decoding():
    rng = random.Random(7)
    for trial in range(60):
        nv = rng.randint(2, 4)
        verts = list(range(1, nv + 1))
        edges = [e for e in
                 [(a, b) for a in verts for b in verts if a < b]
                 if rng.random() < 0.6]
        inst = from_graph(verts, edges)
        p = rng.choice((2, 3))
        length = rng.randint(0, nv)
        rows = tuple(
            tuple(rng.randrange(p) for _ in range(nv)) for _ in range(length)
        )
        code = ScalarLinearCode(p, rows)
        assert is_valid_code(inst, code) == oracles.brute_decodes(
            inst.n, list(inst.receivers), p, [list(r) for r in rows]
        )


def test_c5_partition_code_is_optimal():
    assert is_valid_code(C5, C5_CODE)
    assert min_scalar_linear_rate(C5, 2) == 3
    assert min_scalar_linear_rate(C5, 2, l_max=2) is None


def test_search_values_small_graphs():
    assert min_scalar_linear_rate(from_graph([1], []), 2) == 1
    triangle = from_graph([1, 2, 3], [(1, 2), (2, 3), (1, 3)])
    assert min_scalar_linear_rate(triangle, 2) == 1
    assert min_scalar_linear_rate(triangle, 3) == 1
    lonely = from_graph([1, 2, 3], [])
    assert min_scalar_linear_rate(lonely, 2) == 3


def test_search_caps():
    with pytest.raises(ResourceCapError) as err:
        min_scalar_linear_rate(to_index_coding(fano()), 2)
    assert str(err.value) == (
        "exhaustive search supports only n <= 5 over GF(2), n <= 4 over GF(3); "
        "got n = 7 over GF(2)"
    )
    with pytest.raises(ResourceCapError):
        min_scalar_linear_rate(C5, 3)  # n = 5 over GF(3) is past the cap
    with pytest.raises(ResourceCapError):
        min_scalar_linear_rate(K2, 5)  # no cap entry at all for GF(5)


def test_rate_equals_matroid_duality_complement():
    """Minimum code length is n minus the largest under-representation."""
    for n in range(1, 5):
        gs = GroundSet([str(i) for i in range(n)])
        for ranks in oracles.all_rank_functions(n):
            m = Matroid.from_rank_function(gs, lambda s: ranks[s])
            inst = to_index_coding(m)
            lam = min_scalar_linear_rate(inst, 2)
            d_max = max(
                d
                for d in range(n + 1)
                if any(underrep_check(m, rows, 2)
                       for rows in oracles.rref_spaces(2, d, n))
            )
            assert lam == n - d_max, (n, ranks)


def test_fano_underrep_roundtrip():
    assert underrep_check(fano(), FANO_ROWS, 2)
    code = underrep_to_code(fano(), FANO_ROWS, 2)
    assert code.length == 4 and code.n == 7 and code.p == 2
    assert is_valid_code(to_index_coding(fano()), code)
    back = code_to_underrep(fano(), code)
    # same row space as the matrix we started from
    stacked = [list(r) for r in FANO_ROWS] + [list(r) for r in back]
    assert len(back) == 3 and rank(stacked, 2) == 3

    assert underrep_check(nonfano(), FANO_ROWS, 3)
    code3 = underrep_to_code(nonfano(), FANO_ROWS, 3)
    assert code3.length == 4 and code3.p == 3
    assert is_valid_code(to_index_coding(nonfano()), code3)


def test_underrep_rejects_mismatched_characteristic():
    # the three-point line {110,101,011} is dependent in the fano matroid
    # but its columns are independent mod 3, and vice versa for the nonfano
    assert not underrep_check(fano(), FANO_ROWS, 3)
    assert not underrep_check(nonfano(), FANO_ROWS, 2)


def test_code_to_underrep_guards():
    with pytest.raises(InputError):
        code_to_underrep(fano(), ScalarLinearCode(2, ((1, 0, 0),)))
    dup = ScalarLinearCode(2, (FANO_ROWS[0], FANO_ROWS[0]))
    with pytest.raises(InputError):
        code_to_underrep(fano(), dup)
    short = ScalarLinearCode(2, tuple(identity_code(2, 7).matrix[:6]))
    with pytest.raises(InputError):
        code_to_underrep(fano(), short)
    with pytest.raises(InputError):
        underrep_check(fano(), ((1, 0, 0),), 2)


def test_every_valid_c5_code_entropy_is_lp_feasible():
    receivers = list(C5.receivers)
    shortest = None
    checked = 0
    for d in range(6):
        for rows in oracles.rref_spaces(2, d, 5):
            code = ScalarLinearCode(2, tuple(tuple(r) for r in rows))
            if not is_valid_code(C5, code):
                continue
            if shortest is None:
                shortest = d
            z = code_entropy_vector(C5, code)
            assert z.get(0) == rat(d)
            assert z.get(C5.messages.full_mask) == rat(5)
            dense = [to_fraction(z.get(s)) for s in range(32)]
            assert oracles.entropy_feasible(5, receivers, dense)
            checked += 1
    assert shortest == 3
    assert checked > 30


def extend_with_unit(code, column):
    """Add a zero column at the end plus one unit row selecting it."""
    width = code.n + 1
    rows = [r + (0,) for r in code.matrix]
    unit = tuple(1 if j == column else 0 for j in range(width))
    return ScalarLinearCode(code.p, tuple(rows) + (unit,))


def test_characteristic_schema_rows_on_code_entropy():
    rng = random.Random(11)
    for matroid, parity, p in ((fano(), "even", 2), (nonfano(), "odd", 3)):
        inst = to_index_coding(matroid.adjoin_zero("e"))
        gs = inst.messages
        schema = fano_schema(parity)
        schema_rows = list(schema.rows(gs))
        # identity embedding; the adjoined element collapses to the empty set
        assert len(schema_rows) == 1
        vec = schema.row_vector(schema_rows[0], gs)

        codes = [identity_code(p, 8),
                 extend_with_unit(underrep_to_code(matroid, FANO_ROWS, p), 7)]
        while len(codes) < 8:
            rows = tuple(
                tuple(rng.randrange(p) for _ in range(8)) for _ in range(6)
            )
            candidate = ScalarLinearCode(p, rows)
            if is_valid_code(inst, candidate):
                codes.append(candidate)
        for code in codes:
            z = code_entropy_vector(inst, code)
            assert vec.dot(z) >= rat(0), (parity, code.matrix)


def test_table_code_basics():
    xor = TableCode(2, 2, (0, 1, 1, 0))
    assert xor.digits(2) == (0, 1)
    assert is_valid_table_code(K2, xor)
    assert not is_valid_table_code(from_graph([1, 2], []), xor)
    h = table_entropy_vector(K2, xor)
    assert h[0] == pytest.approx(1.0)
    assert h[1] == pytest.approx(2.0)
    assert h[2] == pytest.approx(2.0)
    assert h[3] == pytest.approx(2.0)
    with pytest.raises(InputError):
        TableCode(2, 2, (0, 1, 1))
    with pytest.raises(ResourceCapError):
        TableCode(2, 21, ())
    with pytest.raises(InputError):
        is_valid_table_code(C5, xor)


def test_concatenation_on_cycle_times_edge():
    table = concatenate_codes(C5, K2, C5_CODE, ScalarLinearCode(2, ((1, 1),)))
    assert table.sigma == 2 and table.n == 10
    assert len(table.table) == 1 << 10
    # three outer symbols carry one inner symbol each
    assert all(len(word) == 3 for word in table.table)


def test_concatenation_entropies_small_product():
    p3_code = ScalarLinearCode(2, ((1, 1, 0), (0, 1, 1)))
    assert is_valid_code(P3, p3_code)
    table = concatenate_codes(P3, K2, p3_code, ScalarLinearCode(2, ((1, 1),)))
    product = P3.lex_product(K2)
    h = table_entropy_vector(product, table)
    assert h[0] <= 2.0 + 1e-9
    assert h[product.messages.full_mask] == pytest.approx(6.0)
    for want, knows in product.receivers:
        assert h[knows | 1 << want] == pytest.approx(h[knows])


def test_concatenation_guards():
    one = ScalarLinearCode(2, ((1, 1),))
    with pytest.raises(ResourceCapError):
        concatenate_codes(C5, C5, C5_CODE, C5_CODE)  # 2^25 table entries
    with pytest.raises(InputError):
        concatenate_codes(C5, K2, C5_CODE, ScalarLinearCode(2, ((1, 0, 0),)))
    broken = ScalarLinearCode(2, ((1, 0),))  # K2 receivers cannot decode
    with pytest.raises(InputError):
        concatenate_codes(C5, K2, C5_CODE, broken)


def test_entropy_vector_free_instance():
    inst = from_graph([1, 2], [(1, 2)])
    code = ScalarLinearCode(2, ((1, 1),))
    z = code_entropy_vector(inst, code)
    assert z.get(0) == rat(1)
    assert z.get(3) == rat(2)
    with pytest.raises(InputError):
        code_entropy_vector(C5, code)
