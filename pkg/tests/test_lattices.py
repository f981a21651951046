import pytest

from invlat.fields import QQ, gf_build
from invlat.lattices import (
    characteristic_dispatch,
    chinv_lattice,
    direct_sum_lattices,
    hinv_lattice,
    inv_lattice,
    shoda_witness,
)
from invlat.matrix import Matrix, block_diag, companion
from invlat.poly import parse_poly
from invlat.subspace import full_space, span, zero_subspace

from fixtures import GOLD_4_A, GOLD_8_A, GOLD_RAT_A, e_rows, F2, F3


def members_of(report):
    return set(report.members)


def test_inv_lattice_rational_golden():
    rep = inv_lattice(GOLD_RAT_A)
    assert rep.finite is True and rep.complete
    assert members_of(rep) == {
        zero_subspace(QQ, 4),
        span(e_rows(4, [3, 4], QQ), QQ, 4),
        full_space(QQ, 4),
    }


def test_hinv_lattice_rational_golden():
    rep = hinv_lattice(GOLD_RAT_A)
    assert members_of(rep) == {
        zero_subspace(QQ, 4),
        span(e_rows(4, [3, 4], QQ), QQ, 4),
        full_space(QQ, 4),
    }


def test_inv_lattice_single_jordan_block_chain():
    J3 = Matrix(F2, [[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    rep = inv_lattice(J3)
    assert rep.finite is True
    assert len(rep.members) == 4  # chain 0 < ker N < ker N^2 < V
    dims = sorted(w.dim for w in rep.members)
    assert dims == [0, 1, 2, 3]


def test_inv_lattice_infinite_case_two_blocks_over_extension():
    # A = diag(C, C) with C the rotation companion of x^2+1 over Q:
    # m_A = x^2+1 (r = 1), K = Q[t]/(x^2+1), N_K = 0 on K^2
    C = companion(parse_poly("x^2+1", QQ))
    A = block_diag(QQ, [C, C])
    rep = inv_lattice(A)
    assert rep.finite is False and not rep.complete
    assert members_of(rep) == {zero_subspace(QQ, 4), full_space(QQ, 4)}
    # two visibly distinct invariant lines witness the infinite family
    w1 = span([(1, 0, 0, 0), (0, 1, 0, 0)], QQ, 4)
    w2 = span([(0, 0, 1, 0), (0, 0, 0, 1)], QQ, 4)
    assert rep.member_predicate(w1) and rep.member_predicate(w2)


HINV_8 = None


def expected_hinv_8():
    n = 8
    return {
        zero_subspace(F2, n),
        span(e_rows(n, [5, 6], F2), F2, n),
        span(e_rows(n, [3, 4, 5, 6], F2), F2, n),
        span(e_rows(n, [5, 6, 7, 8], F2), F2, n),
        span(e_rows(n, [3, 4, 5, 6, 7, 8], F2), F2, n),
        full_space(F2, n),
    }


def expected_hinv_4():
    n = 4
    return {
        zero_subspace(F2, n),
        span(e_rows(n, [3], F2), F2, n),
        span(e_rows(n, [2, 3], F2), F2, n),
        span(e_rows(n, [3, 4], F2), F2, n),
        span(e_rows(n, [2, 3, 4], F2), F2, n),
        full_space(F2, n),
    }


def test_hinv_lattice_8x8_golden_exact():
    rep = hinv_lattice(GOLD_8_A)
    assert members_of(rep) == expected_hinv_8()


def test_hinv_lattice_4x4_golden_exact():
    rep = hinv_lattice(GOLD_4_A)
    assert members_of(rep) == expected_hinv_4()


def test_hinv_lattice_zero_matrix():
    rep = hinv_lattice(Matrix.zeros(F2, 3))
    assert members_of(rep) == {zero_subspace(F2, 3), full_space(F2, 3)}


def test_shoda_witness_cases():
    w = shoda_witness((3, 1))
    assert (w.big, w.small) == (3, 1)
    assert shoda_witness((3, 3, 1, 1)) is None
    assert shoda_witness((2, 1)) is None  # gap must be >= 2
    assert shoda_witness((4, 1)) is not None
    assert shoda_witness((5,)) is None
    w2 = shoda_witness((5, 3, 1))
    assert (w2.big, w2.small) == (5, 3)


def test_characteristic_dispatch():
    d = characteristic_dispatch(F2, (3, 1))
    assert d["possible"]
    assert not characteristic_dispatch(F3, (3, 1))["possible"]
    assert not characteristic_dispatch(gf_build(2, 2), (3, 1))["possible"]
    assert not characteristic_dispatch(F2, (3, 3))["possible"]


def test_chinv_lattice_8x8_equals_hinv():
    rep = chinv_lattice(GOLD_8_A)
    assert members_of(rep) == expected_hinv_8()
    assert all(f == "hyperinvariant" for f in rep.lattice.flags)


def test_chinv_lattice_4x4_has_exactly_one_extra():
    rep = chinv_lattice(GOLD_4_A)
    extra = members_of(rep) - expected_hinv_4()
    assert extra == {span([(0, 1, 0, 1), (0, 0, 1, 0)], F2, 4)}
    flagged = {
        rep.lattice.members[i]
        for i, f in enumerate(rep.lattice.flags)
        if f == "characteristic-only"
    }
    assert flagged == extra


def test_chinv_lattice_gf3_nilpotent_equals_hinv():
    N3 = block_diag(
        F3,
        [
            Matrix(F3, [[0, 0, 0], [1, 0, 0], [0, 1, 0]]),
            Matrix(F3, [[0]]),
        ],
    )
    rep = chinv_lattice(N3)
    hrep = hinv_lattice(N3)
    assert members_of(rep) == members_of(hrep)
    assert any("more than two elements" in p for p in rep.provenance)


def test_direct_sum_lattices_product_counts():
    # invariant lattices: J2 gives a 3-chain, the 1x1 identity gives {0, V}
    J2 = Matrix(F2, [[0, 0], [1, 0]])
    one = Matrix(F2, [[1]])
    lat1 = inv_lattice(J2).lattice
    lat2 = inv_lattice(one).lattice
    prod = direct_sum_lattices([lat1, lat2], matrices=[J2, one])
    assert len(prod) == 6
    # and it matches the engine on the block-diagonal matrix
    rep = inv_lattice(block_diag(F2, [J2, one]))
    assert set(prod.members) == members_of(rep)


def test_direct_sum_lattices_single_component_identity():
    lat = inv_lattice(GOLD_4_A).lattice
    again = direct_sum_lattices([lat])
    assert set(again.members) == set(lat.members)


def test_direct_sum_rejects_non_coprime():
    J2 = Matrix(F2, [[0, 0], [1, 0]])
    lat = inv_lattice(J2).lattice
    with pytest.raises(ValueError, match="non-coprime"):
        direct_sum_lattices([lat, lat], matrices=[J2, J2])


def test_multi_component_chinv_direct_sum():
    # 4x4 golden block (factor (x+1)^3, Shoda witness) plus a 1x1 zero
    # block (factor x): characteristic members multiply out
    A = block_diag(F2, [GOLD_4_A, Matrix(F2, [[0]])])
    rep = chinv_lattice(A)
    assert rep.complete
    assert len(rep.members) == 14  # 7 characteristic members x 2
    flags = dict(zip(rep.lattice.members, rep.lattice.flags))
    extra = [s for s, f in flags.items() if f == "characteristic-only"]
    assert len(extra) == 2


def test_inv_lattice_members_all_invariant_by_construction():
    rep = inv_lattice(GOLD_8_A)
    assert rep.finite is True
    # spot totals: every member passes the predicate (engine asserts too)
    assert all(rep.member_predicate(w) for w in rep.members)
