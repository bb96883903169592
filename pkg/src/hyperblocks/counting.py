"""Exact counting of 0/1 solutions to strict inequality systems, and the
column-swap decomposition that turns a block coefficient matrix into a
product of independent rows.

A system is C x > d componentwise with non-negative entries, x ranging
over {0,1}^b.  Solutions of the system built from a block partition
(rows = distinct coefficient rows, every threshold r/2) are exactly the
ample block subsets.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .blocks import BlockPartition, coefficient_matrix
from .errors import CapacityError

COLUMN_BUDGET = 30
_DIRECT_LIMIT = 14  # direct Gray enumeration below this, meet-in-the-middle above
_GRID_CELL_LIMIT = 20_000_000

Number = int | Fraction


@dataclass(frozen=True)
class InequalitySystem:
    """C x > d componentwise over x in {0,1}^ncols; entries non-negative."""

    rows: tuple[tuple[Number, ...], ...]
    thresholds: tuple[Fraction, ...]
    ncols: int

    @classmethod
    def make(
        cls,
        rows: list[list[int | float | Fraction]] | tuple,
        thresholds: list[int | float | Fraction] | tuple,
        ncols: int | None = None,
    ) -> InequalitySystem:
        norm_rows = []
        for row in rows:
            out = []
            for e in row:
                e = e if isinstance(e, int) else Fraction(e)
                if e < 0:
                    raise ValueError(f"negative entry {e} in inequality system")
                out.append(e)
            norm_rows.append(tuple(out))
        if ncols is None:
            ncols = len(norm_rows[0]) if norm_rows else 0
        if any(len(row) != ncols for row in norm_rows):
            raise ValueError("ragged rows in inequality system")
        if len(thresholds) != len(norm_rows):
            raise ValueError("one threshold per row required")
        return cls(tuple(norm_rows), tuple(Fraction(d) for d in thresholds), ncols)

    def padded(self, extra: int) -> InequalitySystem:
        """Same system with `extra` all-zero columns appended."""
        return InequalitySystem(
            tuple(row + (0,) * extra for row in self.rows),
            self.thresholds,
            self.ncols + extra,
        )


def ample_system(bp: BlockPartition) -> InequalitySystem:
    """The system whose 0/1 solutions are exactly the ample block subsets."""
    cm = coefficient_matrix(bp)
    d = Fraction(bp.r, 2)
    return InequalitySystem.make(list(cm.rows), [d] * cm.row_count, bp.b)


def count_solutions(s: InequalitySystem, column_budget: int = COLUMN_BUDGET) -> int:
    """Exact number of x in {0,1}^ncols with C x > d componentwise."""
    if s.ncols > column_budget:
        raise CapacityError(f"{s.ncols} columns exceeds the {column_budget}-column budget")
    if not s.rows:
        return 1 << s.ncols
    if s.ncols <= _DIRECT_LIMIT:
        return _count_direct(s)
    return _count_split(s)


def _count_direct(s: InequalitySystem) -> int:
    k = len(s.rows)
    sums: list[Number] = [0] * k
    d = s.thresholds
    count = 1 if all(sums[i] > d[i] for i in range(k)) else 0
    mask = 0
    for t in range(1, 1 << s.ncols):
        j = (t & -t).bit_length() - 1
        bit = 1 << j
        mask ^= bit
        sign = 1 if mask & bit else -1
        for i in range(k):
            sums[i] += sign * s.rows[i][j]
        if all(sums[i] > d[i] for i in range(k)):
            count += 1
    return count


def _scaled_integer_rows(s: InequalitySystem) -> tuple[list[list[int]], list[Fraction]]:
    # scaling any single row (and its threshold) by a positive factor
    # preserves the solution set
    rows, ds = [], []
    for row, d in zip(s.rows, s.thresholds):
        denom = 1
        for e in row:
            if isinstance(e, Fraction):
                denom = denom * e.denominator // math.gcd(denom, e.denominator)
        rows.append([int(e * denom) for e in row])
        ds.append(d * denom)
    return rows, ds


def _count_split(s: InequalitySystem) -> int:
    """Meet-in-the-middle: enumerate half-assignments, then count dominating
    pairs on an integer grid of partial sums."""
    rows, ds = _scaled_integer_rows(s)
    k = len(rows)
    half = s.ncols // 2
    left_cols = range(half)
    right_cols = range(half, s.ncols)

    def partial_sums(cols: range) -> dict[tuple[int, ...], int]:
        out: dict[tuple[int, ...], int] = {}
        cols = list(cols)
        sums = [0] * k
        mask = 0
        out[tuple(sums)] = 1
        for t in range(1, 1 << len(cols)):
            j = (t & -t).bit_length() - 1
            bit = 1 << j
            mask ^= bit
            sign = 1 if mask & bit else -1
            col = cols[j]
            for i in range(k):
                sums[i] += sign * rows[i][col]
            key = tuple(sums)
            out[key] = out.get(key, 0) + 1
        return out

    right = partial_sums(right_cols)
    dims = tuple(sum(rows[i][c] for c in right_cols) + 1 for i in range(k))
    cells = 1
    for d in dims:
        cells *= d
    if cells > _GRID_CELL_LIMIT:
        raise CapacityError(f"dominance grid needs {cells} cells")
    grid = np.zeros(dims, dtype=np.int64)
    for key, n in right.items():
        grid[key] += n
    # suffix sums: grid[t] = number of right tuples >= t componentwise
    for axis in range(k):
        grid = np.flip(np.cumsum(np.flip(grid, axis=axis), axis=axis), axis=axis)
    total = 0
    for key, n in partial_sums(left_cols).items():
        idx = []
        ok = True
        for i in range(k):
            # least integer t with sL + t > d, i.e. t > d - sL
            t = math.floor(ds[i] - key[i]) + 1
            if t >= dims[i]:
                ok = False
                break
            idx.append(max(t, 0))
        if ok:
            total += n * int(grid[tuple(idx)])
    return total


# -- swaps --------------------------------------------------------------------


class InvalidSwapError(Exception):
    def __init__(self, clause: int, message: str):
        super().__init__(f"clause {clause}: {message}")
        self.clause = clause


def valid_swap(s: InequalitySystem, g: int, u: int, v: int) -> InequalitySystem:
    """Move the positive entry at (g, u) to (g, v); v's column must be all zero.

    Indices are 0-based.  The four validity clauses are checked and the
    violated clause is named on failure.  The solution count of the result
    never exceeds that of the input.
    """
    k = len(s.rows)
    if not (0 <= g < k and 0 <= u < s.ncols and 0 <= v < s.ncols) or u == v:
        raise ValueError(f"swap indices out of range: g={g} u={u} v={v}")
    if any(e < 0 for row in s.rows for e in row):
        raise InvalidSwapError(1, "matrix entries must be non-negative")
    p = s.rows[g][u]
    if p <= 0:
        raise InvalidSwapError(3, f"entry at ({g}, {u}) must be positive, got {p}")
    for h in range(k):
        if s.rows[h][v] != 0:
            raise InvalidSwapError(4, f"column {v} must be all zeroes, found entry at row {h}")
    rows = [list(row) for row in s.rows]
    rows[g][u] = 0
    rows[g][v] = p
    return InequalitySystem(tuple(tuple(row) for row in rows), s.thresholds, s.ncols)


# -- decomposition ------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    exact_count: int  # solutions of the original block system
    lower_bound: int  # 2^(b - (r+1)/2)
    final_count: int  # solutions of the fully decomposed padded system
    b: int
    b_prime: int
    swaps: int


def decompose_and_bound(bp: BlockPartition) -> BoundReport:
    """Count ample subsets exactly and prove the 2^(b - (r+1)/2) lower bound.

    Pads the block coefficient system with zero columns up to one column
    per nonzero entry, then repeatedly applies valid swaps (lowest
    over-full column, lowest zero column, lowest row) until every column
    holds at most one nonzero entry.  Swaps never increase the solution
    count and each padding column exactly doubles it, so the count of the
    final system divided by the padding factor bounds the original count
    from below.
    """
    r = bp.r
    if r % 2 == 0:
        raise ValueError("decomposition bound needs odd group order")
    base = ample_system(bp)
    exact = count_solutions(base)
    b_prime = sum(1 for row in base.rows for e in row if e != 0)
    s = base.padded(b_prime - base.ncols)
    swaps = 0
    while True:
        over_full = None
        for u in range(s.ncols):
            if sum(1 for row in s.rows if row[u] != 0) >= 2:
                over_full = u
                break
        if over_full is None:
            break
        v = next(
            c for c in range(s.ncols) if all(row[c] == 0 for row in s.rows)
        )
        g = next(i for i, row in enumerate(s.rows) if row[over_full] != 0)
        s = valid_swap(s, g, over_full, v)
        swaps += 1
    final = count_solutions(s)
    bound = 1 << (bp.b - (r + 1) // 2)
    if exact < bound:
        raise RuntimeError(
            f"count {exact} fell below the proven bound {bound}; this is a bug"
        )
    return BoundReport(exact, bound, final, bp.b, b_prime, swaps)


@dataclass(frozen=True)
class InfiniteQuotientBound:
    bound: int  # 2^(b - r)
    one_row_blocks: tuple[int, ...]  # the r blocks containing a pair (1, y)


def infinite_quotient_upper_bound(bp: BlockPartition) -> InfiniteQuotientBound:
    """Bound the hyperfields that can be quotients of infinite fields.

    In any such quotient 1 - 1 = H, so all blocks containing a pair (1, y)
    must be present; for odd r there are exactly r of them, leaving at
    most 2^(b - r) candidate subsets.
    """
    r = bp.r
    if r % 2 == 0:
        raise ValueError("this bound needs odd group order")
    one_row = bp.one_row_blocks
    if len(one_row) != r:
        raise RuntimeError(f"expected {r} one-row blocks, found {len(one_row)}")
    return InfiniteQuotientBound(1 << (bp.b - r), one_row)
