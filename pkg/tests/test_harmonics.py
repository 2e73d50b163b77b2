"""Harmonic spaces and Fischer decompositions.

Dimension oracles used here were computed independently before the module
existed: binomial counts for fermionic harmonics, dim P_k - dim P_{k-2} for
regular signatures, and a hand-checked table of kernel dimensions at (2|6).
"""

import math

import pytest

from superharm.exactla import operator_matrix, rank
from superharm.harmonics import (
    exceptional_indices,
    fischer_decomposition,
    fischer_index_sets,
    generalized_harmonic_space,
    harmonic_basis,
    harmonic_space,
    rsquare_power,
    socle_space,
    verify_theorem_A,
)
from superharm.operators import laplacian, rsquare_op
from superharm.superpoly import SuperSignature, space_dimension

REGULAR = [SuperSignature(1, 1), SuperSignature(3, 2), SuperSignature(3, 0)]
S23 = SuperSignature(2, 3)


def test_exceptional_indices():
    assert sorted(exceptional_indices(-4)) == [4, 5, 6]
    assert sorted(exceptional_indices(-2)) == [3, 4]
    assert sorted(exceptional_indices(0)) == [2]
    assert exceptional_indices(3) == frozenset()
    assert exceptional_indices(-3) == frozenset()
    assert exceptional_indices(2) == frozenset()


def test_exceptional_indices_size():
    # |I_M| = 1 - M/2 for even M <= 0
    for M in (0, -2, -4, -6, -8):
        assert len(exceptional_indices(M)) == 1 - M // 2


@pytest.mark.parametrize("sig", REGULAR)
def test_regular_harmonic_dimension_formula(sig):
    for k in range(7):
        expected = space_dimension(sig, k) - space_dimension(sig, k - 2)
        assert harmonic_space(sig, k).dim == max(expected, 0)


def test_pure_polynomial_harmonics_match_classical_count():
    # m = 3, n = 0: dim H_k = 2k + 1
    sig = SuperSignature(3, 0)
    for k in range(6):
        assert harmonic_space(sig, k).dim == 2 * k + 1


def test_small_mixed_dims():
    sig = SuperSignature(1, 1)
    assert [harmonic_space(sig, k).dim for k in range(5)] == [1, 3, 3, 1, 0]


def test_mixed_dim_table_at_2_6():
    dims = [harmonic_space(S23, k).dim for k in range(9)]
    assert dims == [1, 8, 29, 64, 99, 120, 127, 128, 128]


def test_generalized_defect_at_2_6():
    diffs = [
        generalized_harmonic_space(S23, k).dim - harmonic_space(S23, k).dim
        for k in range(9)
    ]
    assert diffs == [0, 0, 0, 0, 29, 8, 1, 0, 0]
    # defect at k equals dim H_{2 - M - k}, M = -4
    for k in (4, 5, 6):
        assert diffs[k] == harmonic_space(S23, 6 - k).dim


def test_fermionic_harmonic_dims_binomial():
    for n in (1, 2, 3):
        sig = SuperSignature(0, n)
        for k in range(n + 1):
            lower = math.comb(2 * n, k - 2) if k >= 2 else 0
            expected = math.comb(2 * n, k) - lower
            assert harmonic_space(sig, k).dim == expected


def test_harmonic_basis_is_annihilated():
    for sig in (SuperSignature(2, 1), SuperSignature(0, 2)):
        for k in range(4):
            for h in harmonic_basis(sig, k):
                assert laplacian(h).is_zero()


def test_socle_trivial_below_degree_two():
    assert socle_space(S23, 0).dim == 0
    assert socle_space(S23, 1).dim == 0


def test_socle_inside_both_spaces():
    H0 = socle_space(S23, 4)
    assert harmonic_space(S23, 4).contains_subspace(H0)
    img_rank = rank(operator_matrix(rsquare_op(S23), 2))
    assert H0.dim <= img_rank


def test_rsquare_power_cached_values():
    sig = SuperSignature(0, 1)
    assert rsquare_power(sig, 0).is_zero() is False
    # r2 = -t1 t2 here, so (r2)^2 = 0
    assert rsquare_power(sig, 2).is_zero()
    with pytest.raises(ValueError):
        rsquare_power(sig, -1)


def test_index_sets_regular_signature():
    sets = fischer_index_sets(SuperSignature(3, 0), 5)
    assert sets.degrees == (5, 3, 1)
    assert sets.exceptional == ()
    assert sets.suppressed == ()
    assert sets.ordinary == (5, 3, 1)


def test_index_sets_exceptional_pattern():
    # M = -4: columns worked out by hand from the index-set definitions
    expectations = {
        4: ((4,), (2,), (0,)),
        5: ((5,), (1,), (3,)),
        6: ((6, 4), (2, 0), ()),
        7: ((5,), (1,), (7, 3)),
        8: ((6, 4), (2, 0), (8,)),
    }
    for k, (exc, supp, ordi) in expectations.items():
        sets = fischer_index_sets(S23, k)
        assert sets.exceptional == exc
        assert sets.suppressed == supp
        assert sets.ordinary == ordi


@pytest.mark.parametrize("sig", REGULAR)
def test_regular_decomposition_verifies(sig):
    for k in range(7):
        rep = fischer_decomposition(sig, k)
        assert rep.verified, rep.failure_witness
        assert rep.suppressed == ()
        assert all(s.kind == "H" for s in rep.summands)
        assert rep.total_dim == rep.space_dim


def test_decomposition_pattern_at_2_6():
    expected = {
        0: (["H_0"], ()),
        1: (["H_1"], ()),
        2: (["r^2*H_0", "H_2"], ()),
        3: (["r^2*H_1", "H_3"], ()),
        4: (["r^4*H_0", "Ht_4"], (2,)),
        5: (["r^2*H_3", "Ht_5"], (1,)),
        6: (["r^2*Ht_4", "Ht_6"], (0, 2)),
        7: (["r^4*H_3", "r^2*Ht_5", "H_7"], (1,)),
        8: (["r^4*Ht_4", "r^2*Ht_6", "H_8"], (0, 2)),
    }
    for k, (pattern, suppressed) in expected.items():
        rep = fischer_decomposition(S23, k)
        assert rep.verified, rep.failure_witness
        assert [s.describe() for s in rep.summands] == pattern
        assert rep.suppressed == suppressed


def test_summands_listed_by_ascending_degree():
    rep = fischer_decomposition(S23, 8)
    degrees = [s.degree for s in rep.summands]
    assert degrees == sorted(degrees)


def test_fermionic_decomposition():
    sig = SuperSignature(0, 2)
    # degree 3 decomposes through degree 1 only: P_3 = r^2 H_1
    rep = fischer_decomposition(sig, 3)
    assert rep.verified
    assert [(s.kind, s.degree, s.rpower) for s in rep.summands] == [("H", 1, 2)]
    assert rep.suppressed == (3,)
    assert "m=0" in rep.notes[0] and "DISAGREES" not in rep.notes[0]


def test_fermionic_decomposition_above_top_degree_is_empty():
    sig = SuperSignature(0, 2)
    rep = fischer_decomposition(sig, 5)
    assert rep.verified
    assert rep.summands == ()
    assert rep.space_dim == 0


def test_fermionic_full_range_verifies():
    for n in (1, 2, 3):
        sig = SuperSignature(0, n)
        for k in range(2 * n + 2):
            rep = fischer_decomposition(sig, k)
            assert rep.verified, (sig, k, rep.failure_witness)


def test_negative_degree_rejected():
    with pytest.raises(ValueError):
        fischer_decomposition(S23, -1)


def test_filtration_collapses_at_regular_degrees():
    rep = verify_theorem_A(S23, 3)
    assert not rep.exceptional
    assert rep.verified
    assert rep.dim_h == rep.dim_ht == 64
    assert rep.dim_socle == 0
    assert dict(rep.checks)["generalized equals harmonic"]


def test_filtration_strict_at_exceptional_degrees():
    for k, mirror in ((4, 29), (5, 8), (6, 1)):
        rep = verify_theorem_A(S23, k)
        assert rep.exceptional
        assert rep.verified, rep.checks
        assert rep.dim_mirror == mirror
        assert rep.dim_ht - rep.dim_h == rep.dim_socle == mirror
        assert rep.quotient_dim == rep.dim_h - rep.dim_socle


def test_filtration_smallest_exceptional_signature():
    # (2|2) has M = 0, so degree 2 is the single exceptional degree
    sig = SuperSignature(2, 1)
    rep = verify_theorem_A(sig, 2)
    assert rep.exceptional and rep.verified
    assert rep.dim_ht == 8  # all of P_2
    assert rep.dim_h == 7
    assert rep.dim_socle == 1
    for k in (0, 1, 3, 4):
        other = verify_theorem_A(sig, k)
        assert not other.exceptional and other.verified
