"""Exact 0-1 solution counting, valid swaps, and the decomposition bounds."""

import random
from fractions import Fraction

import pytest

from hyperblocks import (
    AbelianGroup,
    CapacityError,
    InequalitySystem,
    InvalidSwapError,
    ample_system,
    compute_blocks,
    count_solutions,
    decompose_and_bound,
    infinite_quotient_upper_bound,
    valid_swap,
)
from hyperblocks.counting import _count_direct, _count_split


def brute_count(s):
    """Literal enumeration of {0,1}^ncols."""
    cnt = 0
    for m in range(1 << s.ncols):
        x = [(m >> i) & 1 for i in range(s.ncols)]
        if all(
            sum(c * xi for c, xi in zip(row, x)) > d
            for row, d in zip(s.rows, s.thresholds)
        ):
            cnt += 1
    return cnt


HALF3 = Fraction(3, 2)


# -- construction ---------------------------------------------------------------


def test_make_validates():
    s = InequalitySystem.make([[1, 1, 1]], [HALF3])
    assert s.ncols == 3
    with pytest.raises(ValueError):
        InequalitySystem.make([[1, -1]], [0])
    with pytest.raises(ValueError):
        InequalitySystem.make([[1, 1], [1]], [0, 0])
    with pytest.raises(ValueError):
        InequalitySystem.make([[1, 1]], [0, 0])
    with pytest.raises(ValueError):
        InequalitySystem.make([[1, 1]], [0], ncols=3)


def test_padded_adds_zero_columns():
    s = InequalitySystem.make([[1, 2]], [1])
    p = s.padded(3)
    assert p.ncols == 5
    assert p.rows == ((1, 2, 0, 0, 0),)
    assert p.thresholds == s.thresholds


def test_ample_system_matches_coefficient_matrix(z3_blocks):
    s = ample_system(z3_blocks)
    assert s.rows == ((1, 1, 1, 0), (0, 1, 1, 1))
    assert s.thresholds == (HALF3, HALF3)
    assert s.ncols == 4


# -- counting -------------------------------------------------------------------


def test_count_single_row():
    s = InequalitySystem.make([[1, 1, 1]], [HALF3])
    assert count_solutions(s) == 4
    assert brute_count(s) == 4


def test_count_empty_system():
    assert count_solutions(InequalitySystem.make([], [], ncols=0)) == 1
    assert count_solutions(InequalitySystem.make([], [], ncols=3)) == 8


def test_count_z3_system(z3_blocks):
    assert count_solutions(ample_system(z3_blocks)) == 6


def test_count_handles_fractional_entries():
    s = InequalitySystem.make(
        [[Fraction(1, 2), Fraction(1, 2)], [Fraction(1, 3), 1]],
        [Fraction(1, 2), Fraction(1, 3)],
    )
    assert count_solutions(s) == brute_count(s)


def test_count_column_budget():
    s = InequalitySystem.make([], [], ncols=31)
    with pytest.raises(CapacityError):
        count_solutions(s)
    assert count_solutions(s, column_budget=31) == 1 << 31


def test_direct_and_split_agree(z3_blocks, z5_blocks, z7_blocks):
    for bp in (z3_blocks, z5_blocks, z7_blocks):
        s = ample_system(bp)
        assert _count_direct(s) == _count_split(s)


def test_split_path_via_padding(z3_blocks):
    # 18 columns forces the meet-in-the-middle path; padding must scale
    # the count by exactly 2^14
    s = ample_system(z3_blocks).padded(14)
    assert s.ncols == 18
    assert count_solutions(s) == 6 << 14


def test_random_systems_match_brute_force():
    rng = random.Random(417)
    for _ in range(100):
        ncols = rng.randrange(1, 8)
        nrows = rng.randrange(0, 4)
        rows = [[rng.randrange(0, 4) for _ in range(ncols)] for _ in range(nrows)]
        thr = [Fraction(rng.randrange(0, 12), rng.choice([1, 2, 3])) for _ in range(nrows)]
        s = InequalitySystem.make(rows, thr, ncols=ncols)
        assert count_solutions(s) == brute_count(s)


# -- swaps ----------------------------------------------------------------------


def test_swap_example():
    s = InequalitySystem.make([[2, 1, 0], [0, 3, 0]], [HALF3, HALF3])
    after = valid_swap(s, 0, 0, 2)
    assert after.rows == ((0, 1, 2), (0, 3, 0))
    before_n, after_n = count_solutions(s), count_solutions(after)
    assert (before_n, after_n) == (brute_count(s), brute_count(after))
    assert before_n >= after_n
    # row sums survive the move
    for old, new in zip(s.rows, after.rows):
        assert sum(old) == sum(new)


def test_swap_index_validation():
    s = InequalitySystem.make([[2, 1, 0]], [HALF3])
    with pytest.raises(ValueError):
        valid_swap(s, 1, 0, 2)
    with pytest.raises(ValueError):
        valid_swap(s, 0, 3, 2)
    with pytest.raises(ValueError):
        valid_swap(s, 0, 1, 1)


def test_swap_clause_errors():
    # clause 1: negative entry (bypassing make's validation)
    bad = InequalitySystem(((1, -1, 0),), (HALF3,), 3)
    with pytest.raises(InvalidSwapError) as exc:
        valid_swap(bad, 0, 0, 2)
    assert exc.value.clause == 1

    s = InequalitySystem.make([[2, 0, 0], [0, 3, 0]], [HALF3, HALF3])
    # clause 3: no positive entry at (g, u)
    with pytest.raises(InvalidSwapError) as exc:
        valid_swap(s, 0, 1, 2)
    assert exc.value.clause == 3
    # clause 4: target column not all zero
    with pytest.raises(InvalidSwapError) as exc:
        valid_swap(s, 0, 0, 1)
    assert exc.value.clause == 4


def test_swap_monotonicity_randomized():
    """200 random valid swaps never increase the exact solution count."""
    rng = random.Random(90121)
    done = 0
    while done < 200:
        ncols = rng.randrange(3, 7)
        nrows = rng.randrange(1, 4)
        rows = [[rng.randrange(0, 3) for _ in range(ncols)] for _ in range(nrows)]
        thr = [Fraction(rng.randrange(1, 2 * ncols), 2) for _ in range(nrows)]
        zero_cols = [v for v in range(ncols) if all(row[v] == 0 for row in rows)]
        starts = [
            (g, u)
            for g in range(nrows)
            for u in range(ncols)
            if rows[g][u] > 0
        ]
        if not zero_cols or not starts:
            continue
        g, u = rng.choice(starts)
        v = rng.choice(zero_cols)
        s = InequalitySystem.make(rows, thr, ncols=ncols)
        after = valid_swap(s, g, u, v)
        assert brute_count(s) >= brute_count(after)
        assert count_solutions(s) == brute_count(s)
        assert count_solutions(after) == brute_count(after)
        done += 1


# -- decomposition and bounds ------------------------------------------------------


@pytest.mark.parametrize(
    "spec,expect",
    [
        ("Z3", (6, 4, 16, 4, 6, 2)),
        ("Z5", (28, 16, 1024, 7, 13, 6)),
        ("Z7", (612, 256, 2097152, 12, 25, 13)),
    ],
)
def test_decompose_and_bound_frozen(spec, expect):
    bp = compute_blocks(AbelianGroup.from_spec(spec), 0)
    rep = decompose_and_bound(bp)
    got = (rep.exact_count, rep.lower_bound, rep.final_count, rep.b, rep.b_prime, rep.swaps)
    assert got == expect
    assert rep.exact_count >= rep.lower_bound


def test_decompose_final_count_formula(z5_blocks):
    # after full decomposition each row owns its own columns, so the count
    # is 2^(b' - rows): every row keeps exactly one forced column
    rep = decompose_and_bound(z5_blocks)
    nrows = len(ample_system(z5_blocks).rows)
    assert rep.final_count == 1 << (rep.b_prime - nrows)


def test_decompose_rejects_even_order():
    bp = compute_blocks(AbelianGroup.from_spec("Z4"), 0)
    with pytest.raises(ValueError):
        decompose_and_bound(bp)


def test_exact_count_matches_census_ample_count(z3_blocks, z5_blocks):
    from hyperblocks import enumerate_subsets

    for bp in (z3_blocks, z5_blocks):
        rep = decompose_and_bound(bp)
        assert rep.exact_count == enumerate_subsets(bp).ample_count


@pytest.mark.parametrize("spec,bound", [("Z3", 2), ("Z5", 4), ("Z7", 32)])
def test_infinite_quotient_upper_bound(spec, bound):
    bp = compute_blocks(AbelianGroup.from_spec(spec), 0)
    rep = infinite_quotient_upper_bound(bp)
    assert rep.bound == bound
    assert len(rep.one_row_blocks) == bp.r


def test_infinite_quotient_bound_rejects_even_order():
    bp = compute_blocks(AbelianGroup.from_spec("Z6"), 3)
    with pytest.raises(ValueError):
        infinite_quotient_upper_bound(bp)
