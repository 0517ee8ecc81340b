"""Partitions, flagged instances, inversion-set combinatorics."""

from itertools import permutations

import pytest

from flaggroth.errors import UsageError
from flaggroth.shapes import SkewFlagged, coincidence_condition, \
    inversion_sets, is_vexillary, shape_and_flag, skew_cells, \
    tableau_excess_bound


# ---------------------------------------------------------------------------
# inversion sets and vexillarity

def test_inversion_sets_identity():
    assert inversion_sets((1, 2, 3)) == (frozenset(), frozenset(), frozenset())


def test_inversion_sets_1432():
    assert inversion_sets((1, 4, 3, 2)) == \
        (frozenset(), frozenset({3, 4}), frozenset({4}), frozenset())


def test_inversion_sets_2143():
    assert inversion_sets((2, 1, 4, 3)) == \
        (frozenset({2}), frozenset(), frozenset({4}), frozenset())


def test_is_vexillary_examples():
    assert is_vexillary((1, 2, 3))
    assert is_vexillary((1, 4, 3, 2))
    assert not is_vexillary((2, 1, 4, 3))


def test_shape_and_flag_examples():
    assert shape_and_flag((1, 2, 3)) == ((), ())
    assert shape_and_flag((1, 4, 3, 2)) == ((2, 1), (2, 3))
    assert shape_and_flag((3, 2, 1)) == ((2, 1), (1, 2))


def test_shape_and_flag_rejects_non_vexillary():
    with pytest.raises(UsageError):
        shape_and_flag((2, 1, 4, 3))


def has_2143(w):
    n = len(w)
    return any(w[j] < w[i] < w[l] < w[k]
               for i in range(n) for j in range(i + 1, n)
               for k in range(j + 1, n) for l in range(k + 1, n))


def test_vexillary_matches_pattern_avoidance_up_to_6():
    for n in range(1, 7):
        for w in permutations(range(1, n + 1)):
            assert is_vexillary(w) == (not has_2143(w))


def test_shape_statistics_up_to_6():
    for n in range(1, 7):
        for w in permutations(range(1, n + 1)):
            if not is_vexillary(w):
                continue
            sets = inversion_sets(w)
            lam, flag = shape_and_flag(w)
            assert len(lam) == sum(1 for s in sets if s)
            assert len(lam) == len(flag)
            inradius = sum(len(s) for s in sets)
            assert sum(lam) == inradius


def test_permutation_validation():
    with pytest.raises(UsageError):
        inversion_sets((1, 1, 2))
    with pytest.raises(UsageError):
        inversion_sets((0, 1))


# ---------------------------------------------------------------------------
# coincidence condition

def test_coincidence_vacuous():
    inst = SkewFlagged.make((2, 1), f=(2, 2), g=(1, 1), n_vars=2)
    assert coincidence_condition(inst)


def test_coincidence_single_qualifying_pair():
    inst = SkewFlagged.make((2, 1), f=(1, 2), g=(1, 3), n_vars=2)
    assert coincidence_condition(inst)


def test_coincidence_all_g_one():
    for lam, mu, f in [((3, 1), (1, 0), (2, 3)), ((2, 2), (0, 0), (1, 1))]:
        inst = SkewFlagged.make(lam, mu=mu, f=f, g=(1, 1), n_vars=3)
        assert coincidence_condition(inst)


def test_coincidence_violated():
    inst = SkewFlagged.make((1,), f=(1,), g=(3,), n_vars=2)
    assert not coincidence_condition(inst)


# ---------------------------------------------------------------------------
# instances

def test_instance_validation():
    with pytest.raises(UsageError):
        SkewFlagged.make((1, 2), f=(1, 1))          # not a partition
    with pytest.raises(UsageError):
        SkewFlagged.make((2, 1), mu=(3,), f=(1, 1))  # mu not inside lambda
    with pytest.raises(UsageError):
        SkewFlagged.make((2, 1), f=(1,))            # flag length mismatch
    with pytest.raises(UsageError):
        SkewFlagged.make((1,), f=(0,))              # flags must be >= 1
    with pytest.raises(UsageError):
        SkewFlagged.make((1,), f=(3,), n_vars=2)    # n_vars < max f


def test_instance_defaults():
    inst = SkewFlagged.make((2, 1), f=(2, 3))
    assert inst.mu == (0, 0)
    assert inst.g == (1, 1)
    assert inst.n_vars == 3
    assert inst.x_cap == inst.skew_size() + inst.beta_cap


def test_skew_cells_reading_order():
    assert skew_cells((2, 1), (1, 0)) == [(1, 2), (2, 1)]
    assert skew_cells((2, 2), (0, 0)) == [(1, 1), (1, 2), (2, 1), (2, 2)]


def test_empty_instance():
    inst = SkewFlagged.make(())
    assert inst.r == 0 and inst.skew_size() == 0


# ---------------------------------------------------------------------------
# excess bound

def test_excess_bound_single_row_is_product_formula():
    for width in range(1, 5):
        for flag in range(1, 5):
            inst_bound = tableau_excess_bound((width,), (0,), (flag,))
            assert inst_bound == width * (flag - 1)


def test_excess_bound_column_disjointness():
    # three stacked cells, flags (4,4,4): one column can hold at most four
    # distinct values, so the excess is 1, far below 3*(4-1) = 9
    assert tableau_excess_bound((1, 1, 1), (0, 0, 0), (4, 4, 4)) == 1
    assert tableau_excess_bound((4, 4, 4), (0, 0, 0), (4, 4, 4)) == 4


def test_excess_bound_infeasible_column_means_zero():
    # two stacked cells with flags (1,1) admit no column-strict filling
    assert tableau_excess_bound((1, 1), (0, 0), (1, 1)) == 0


def test_excess_bound_empty_shape():
    assert tableau_excess_bound((), (), ()) == 0
    assert tableau_excess_bound((2, 2), (2, 2), (3, 3)) == 0
