import random

import pytest

from invlat.decomposition import (
    analyze_operator,
    build_k_structure,
    jordan_chevalley,
    primary_decomposition,
    segre_characteristic,
)
from invlat.errors import InseparableFactorError
from invlat.fields import QQ, ExtensionField, FiniteField
from invlat.matrix import Matrix, block_diag, companion, mat_vec, poly_at_matrix
from invlat.poly import factor, parse_poly
from invlat.subspace import span

from fixtures import (
    GOLD_4_A,
    GOLD_4_N,
    GOLD_4_S,
    GOLD_8_A,
    GOLD_8_N,
    GOLD_8_S,
    GOLD_RAT_A,
    GOLD_RAT_N,
    GOLD_RAT_S,
    e_rows,
    F2,
    F3,
)


def test_jordan_chevalley_rational_golden_exact():
    p = parse_poly("x^2+1", QQ)
    dec = jordan_chevalley(GOLD_RAT_A, p, 2)
    assert dec.S == GOLD_RAT_S
    assert dec.N == GOLD_RAT_N
    assert poly_at_matrix(dec.certificate, GOLD_RAT_A) == dec.S


def test_jordan_chevalley_gf2_8x8_golden_exact():
    p = parse_poly("x^2+x+1", F2)
    dec = jordan_chevalley(GOLD_8_A, p, 3)
    assert dec.S == GOLD_8_S
    assert dec.N == GOLD_8_N


def test_jordan_chevalley_gf2_4x4_golden_exact():
    p = parse_poly("x+1", F2)
    dec = jordan_chevalley(GOLD_4_A, p, 3)
    assert dec.S == GOLD_4_S
    assert dec.N == GOLD_4_N


def test_jordan_chevalley_nilpotent_input():
    N = Matrix(F2, [[0, 0], [1, 0]])
    dec = jordan_chevalley(N, parse_poly("x", F2), 2)
    assert dec.S.is_zero
    assert dec.N == N


def test_jordan_chevalley_uniqueness_probe():
    for A, p, r in (
        (GOLD_RAT_A, parse_poly("x^2+1", QQ), 2),
        (GOLD_8_A, parse_poly("x^2+x+1", F2), 3),
        (GOLD_4_A, parse_poly("x+1", F2), 3),
    ):
        base = jordan_chevalley(A, p, r)
        alt_start = A + poly_at_matrix(p, A)
        alt = jordan_chevalley(A, p, r, start=alt_start)
        assert alt.S == base.S and alt.N == base.N


def test_jordan_chevalley_rejects_inseparable():
    # over GF(2), p = x^2 is not separable (p' = 0); feed a matrix with p(A)^1 = 0
    A = Matrix(F2, [[0, 0], [1, 0]])
    with pytest.raises(InseparableFactorError, match="inseparable"):
        jordan_chevalley(A, parse_poly("x^2", F2), 1)


def test_jordan_chevalley_rejects_wrong_contract():
    with pytest.raises(ValueError, match="contract"):
        jordan_chevalley(GOLD_4_A, parse_poly("x+1", F2), 1)


def test_primary_decomposition_single_component():
    fact = factor(parse_poly("x^2+x+1", F2) ** 3)
    comps = primary_decomposition(GOLD_8_A, fact)
    assert len(comps) == 1 and comps[0].dim == 8
    fact4 = factor(parse_poly("x+1", F2) ** 3)
    comps4 = primary_decomposition(GOLD_4_A, fact4)
    assert len(comps4) == 1 and comps4[0].dim == 4


def test_primary_decomposition_two_components():
    A = block_diag(F2, [companion(parse_poly("x+1", F2)), companion(parse_poly("x", F2))])
    fact = factor(parse_poly("x^2+x", F2))
    comps = primary_decomposition(A, fact)
    assert [c.dim for c in comps] == [1, 1]
    assert {repr(c.factor) for c in comps} == {"x", "x+1"}


def test_k_structure_rational_golden():
    p = parse_poly("x^2+1", QQ)
    dec = jordan_chevalley(GOLD_RAT_A, p, 2)
    ks = build_k_structure(dec.S, dec.N, p)
    assert ks.s == 2
    assert isinstance(ks.field_k, ExtensionField)
    assert ks.k_dim == 2
    assert ks.segre == (2,)
    # chain e1 -> e3 over K; K*e1 = span_F{e1, e2}
    assert ks.generators == (tuple(e_rows(4, [1], QQ))[0], tuple(e_rows(4, [3], QQ))[0])
    chain = ks.chains[0]
    assert ks.to_f(chain[0]) == e_rows(4, [1], QQ)[0]
    assert ks.to_f(chain[1]) == e_rows(4, [3], QQ)[0]
    k_line = span([chain[0]], ks.field_k, 2)
    assert ks.k_subspace_to_f(k_line) == span(e_rows(4, [1, 2], QQ), QQ, 4)


def test_k_structure_8x8_golden():
    p = parse_poly("x^2+x+1", F2)
    dec = jordan_chevalley(GOLD_8_A, p, 3)
    ks = build_k_structure(dec.S, dec.N, p)
    assert ks.s == 2
    assert isinstance(ks.field_k, FiniteField)
    assert ks.field_k.order == 4  # K isomorphic to GF(4)
    assert ks.k_dim == 4
    assert ks.segre == (3, 1)
    # F-chains pair up: K-basis generators are e1, e3, e5, e7
    assert ks.generators == tuple(e_rows(8, [1, 3, 5, 7], F2))


def test_k_structure_4x4_golden():
    p = parse_poly("x+1", F2)
    dec = jordan_chevalley(GOLD_4_A, p, 3)
    ks = build_k_structure(dec.S, dec.N, p)
    assert ks.s == 1
    assert ks.field_k == F2
    assert ks.segre == (3, 1)


def test_f_segre_is_k_segre_repeated_s_times():
    p = parse_poly("x^2+x+1", F2)
    dec = jordan_chevalley(GOLD_8_A, p, 3)
    ks = build_k_structure(dec.S, dec.N, p)
    f_segre = segre_characteristic(dec.N)
    assert f_segre == (3, 3, 1, 1)
    expected = tuple(sorted([part for part in ks.segre for _ in range(ks.s)], reverse=True))
    assert f_segre == expected


def test_k_linearity_of_nilpotent_part():
    rng = random.Random(17)
    p = parse_poly("x^2+x+1", F2)
    dec = jordan_chevalley(GOLD_8_A, p, 3)
    ks = build_k_structure(dec.S, dec.N, p)
    K = ks.field_k
    for _ in range(50):
        lam = K.element_from_index(rng.randrange(K.order))
        v = tuple(K.element_from_index(rng.randrange(K.order)) for _ in range(4))
        left = mat_vec(ks.nk, tuple(lam * c for c in v))
        right = tuple(lam * c for c in mat_vec(ks.nk, v))
        assert left == right


def test_segre_consistency_invariants():
    cases = [
        (GOLD_RAT_A, parse_poly("x^2+1", QQ), 2),
        (GOLD_8_A, parse_poly("x^2+x+1", F2), 3),
        (GOLD_4_A, parse_poly("x+1", F2), 3),
    ]
    for A, p, r in cases:
        dec = jordan_chevalley(A, p, r)
        ks = build_k_structure(dec.S, dec.N, p)
        assert ks.s * sum(ks.segre) == A.nrows
        assert ks.segre[0] == r


def test_analyze_operator_multi_component_global_parts():
    # (x+1)-primary 2x2 block plus x-primary 1x1 block
    J = Matrix(F2, [[1, 0], [1, 1]])
    A = block_diag(F2, [J, Matrix(F2, [[0]])])
    ana = analyze_operator(A)
    assert len(ana.components) == 2
    assert ana.S + ana.N == A
    assert ana.S @ ana.N == ana.N @ ana.S
    assert (ana.N ** 3).is_zero
    assert ana.min_poly == parse_poly("x^2+x", F2) * parse_poly("x+1", F2)


def test_analyze_operator_rational_golden():
    ana = analyze_operator(GOLD_RAT_A)
    assert ana.S == GOLD_RAT_S and ana.N == GOLD_RAT_N
    assert ana.single_component


def test_segre_characteristic_basics():
    Z = Matrix.zeros(F2, 3)
    assert segre_characteristic(Z) == (1, 1, 1)
    J3 = Matrix(F2, [[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    assert segre_characteristic(J3) == (3,)
    with pytest.raises(ValueError, match="not nilpotent"):
        segre_characteristic(Matrix.identity(F2, 2))
