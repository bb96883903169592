"""Sweeps over all block subsets of a partition.

Subsets are visited in Gray-code order so each step flips one block in
or out; the pi row masks and row weights are maintained incrementally.
For a union of blocks the column weights mirror the row weights (column
y weighs what row -y weighs), so the ample screen is just
2 * min(row weight) > r.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .blocks import BlockPartition, compute_blocks
from .errors import CapacityError
from .groups import AbelianGroup
from .hyperfields import (
    AXIOM_ORDER,
    STATUS_CERTIFIED,
    HyperfieldCandidate,
    verify_axioms,
)

MODE_FULL = "full"
MODE_AMPLE_ONLY = "ample-only"

SUBSET_BUDGET_BITS = 30


def automorphisms_fixing(group: AbelianGroup, minus_one: int) -> list[tuple[int, ...]]:
    """Group automorphisms that fix the chosen -1 element."""
    return [a for a in group.automorphisms() if a[minus_one] == minus_one]


def canonical_form(
    h: HyperfieldCandidate, autos: list[tuple[int, ...]] | None = None
) -> str:
    """Lexicographically least row-major pi bit string over the automorphism orbit.

    Only automorphisms fixing -1 are isomorphisms of candidates, so those
    are the ones ranged over; candidates on different groups or with a
    different -1 are never isomorphic here.
    """
    if autos is None:
        autos = automorphisms_fixing(h.group, h.minus_one)
    r = h.r
    best: str | None = None
    for sigma in autos:
        out = ["0"] * (r * r)
        for x in range(r):
            row = h.rows[x]
            sx = sigma[x] * r
            while row:
                low = row & -row
                out[sx + sigma[low.bit_length() - 1]] = "1"
                row ^= low
        s = "".join(out)
        if best is None or s < best:
            best = s
    assert best is not None
    return best


@dataclass(frozen=True)
class CensusClass:
    canonical_pi: str
    members: int
    ample: bool
    example_subset: int  # least block bitmask seen in the class


@dataclass(frozen=True)
class Census:
    group: AbelianGroup
    minus_one: int
    mode: str
    subsets_examined: int
    hyperfield_count: int
    ample_count: int
    classes: tuple[CensusClass, ...]

    @property
    def class_count(self) -> int:
        return len(self.classes)

    def summary(self) -> str:
        return (
            f"subsets={self.subsets_examined} hyperfields={self.hyperfield_count} "
            f"classes={self.class_count} ample={self.ample_count}"
        )


def _block_effects(bp: BlockPartition) -> list[list[tuple[int, int, int]]]:
    """Per block: (row index, y bitmask, pair count) for each touched row."""
    r = bp.r
    effects = []
    for block in bp.blocks:
        per_row: dict[int, list[int]] = {}
        for code in block:
            per_row.setdefault(code // r, []).append(code % r)
        effects.append(
            [(x, sum(1 << y for y in ys), len(ys)) for x, ys in sorted(per_row.items())]
        )
    return effects


def iter_subsets(
    bp: BlockPartition, span: tuple[int, int] | None = None
) -> Iterator[tuple[int, list[int], int]]:
    """Yield (subset mask, pi row masks, min row weight) in Gray-code order.

    The row list is reused between steps; snapshot it before keeping it.
    span selects a half-open range of sequence positions for sharding.
    """
    b = bp.b
    lo, hi = span if span is not None else (0, 1 << b)
    effects = _block_effects(bp)
    r = bp.r
    rows = [0] * r
    counts = [0] * r
    mask = lo ^ (lo >> 1)
    m = mask
    while m:
        low = m & -m
        for x, ymask, n in effects[low.bit_length() - 1]:
            rows[x] ^= ymask
            counts[x] += n
        m ^= low
    yield mask, rows, min(counts)
    for t in range(lo + 1, hi):
        i = (t & -t).bit_length() - 1
        bit = 1 << i
        mask ^= bit
        sign = 1 if mask & bit else -1
        for x, ymask, n in effects[i]:
            rows[x] ^= ymask
            counts[x] += sign * n
        yield mask, rows, min(counts)


def certified_candidates(
    bp: BlockPartition, span: tuple[int, int] | None = None
) -> Iterator[tuple[int, HyperfieldCandidate]]:
    """Stream (subset mask, candidate) for every subset passing the ample screen."""
    r = bp.r
    for mask, rows, m in iter_subsets(bp, span):
        if 2 * m > r:
            h = HyperfieldCandidate(bp.group, bp.minus_one, tuple(rows))
            h.status = STATUS_CERTIFIED
            yield mask, h


def enumerate_subsets(
    bp: BlockPartition,
    mode: str = MODE_FULL,
    budget_bits: int = SUBSET_BUDGET_BITS,
    span: tuple[int, int] | None = None,
) -> Census:
    """Census of all 2^b block subsets for one (group, -1).

    mode "full" runs verify_axioms on every subset; mode "ample-only"
    keeps exactly the subsets whose pi satisfies the margin screen and
    certifies them without triple checks.
    """
    if mode not in (MODE_FULL, MODE_AMPLE_ONLY):
        raise ValueError(f"unknown census mode {mode!r}")
    if bp.b > budget_bits:
        raise CapacityError(f"2^{bp.b} subsets exceeds the 2^{budget_bits} budget")
    autos = automorphisms_fixing(bp.group, bp.minus_one)
    r = bp.r
    found = 0
    ample_found = 0
    classes: dict[str, list[int]] = {}  # canonical pi -> [members, min subset, ample]

    def record(mask: int, h: HyperfieldCandidate, ample: bool) -> None:
        key = canonical_form(h, autos)
        slot = classes.get(key)
        if slot is None:
            classes[key] = [1, mask, ample]
        else:
            slot[0] += 1
            slot[1] = min(slot[1], mask)

    examined = 0
    for mask, rows, m in iter_subsets(bp, span):
        examined += 1
        ample = 2 * m > r
        if mode == MODE_AMPLE_ONLY:
            if not ample:
                continue
            h = HyperfieldCandidate(bp.group, bp.minus_one, tuple(rows))
            h.status = STATUS_CERTIFIED
            found += 1
            ample_found += 1
            record(mask, h, True)
        else:
            h = HyperfieldCandidate(bp.group, bp.minus_one, tuple(rows))
            if verify_axioms(h):
                found += 1
                if ample:
                    ample_found += 1
                record(mask, h, ample)
    return Census(
        bp.group,
        bp.minus_one,
        mode,
        examined,
        found,
        ample_found,
        tuple(
            CensusClass(key, members, ample, subset)
            for key, (members, subset, ample) in sorted(classes.items())
        ),
    )


def merge_censuses(parts: list[Census]) -> Census:
    """Combine shard censuses of the same sweep; merging is associative."""
    if not parts:
        raise ValueError("nothing to merge")
    first = parts[0]
    for p in parts[1:]:
        if (p.group, p.minus_one, p.mode) != (first.group, first.minus_one, first.mode):
            raise ValueError("cannot merge censuses of different sweeps")
    classes: dict[str, list[int]] = {}
    for p in parts:
        for c in p.classes:
            slot = classes.get(c.canonical_pi)
            if slot is None:
                classes[c.canonical_pi] = [c.members, c.example_subset, c.ample]
            else:
                slot[0] += c.members
                slot[1] = min(slot[1], c.example_subset)
    return Census(
        first.group,
        first.minus_one,
        first.mode,
        sum(p.subsets_examined for p in parts),
        sum(p.hyperfield_count for p in parts),
        sum(p.ample_count for p in parts),
        tuple(
            CensusClass(key, members, bool(ample), subset)
            for key, (members, subset, ample) in sorted(classes.items())
        ),
    )


def enumerate_sharded(
    bp: BlockPartition,
    mode: str = MODE_FULL,
    budget_bits: int = SUBSET_BUDGET_BITS,
    threads: int = 1,
) -> Census:
    """Full-range census split into `threads` contiguous shards and merged."""
    if threads <= 1:
        return enumerate_subsets(bp, mode, budget_bits)
    total = 1 << bp.b
    n = min(threads, total)
    bounds = [(total * i // n, total * (i + 1) // n) for i in range(n)]
    with ThreadPoolExecutor(max_workers=n) as pool:
        parts = list(
            pool.map(lambda s: enumerate_subsets(bp, mode, budget_bits, span=s), bounds)
        )
    return merge_censuses(parts)


@dataclass(frozen=True)
class SweepReport:
    """Tally of verify_axioms verdicts over every block subset of one partition."""

    group: AbelianGroup
    minus_one: int
    subsets_examined: int
    verified_count: int
    certified_count: int
    certified_unverified: int  # subsets passing the ample screen but failing axioms
    failure_counts: dict[str, int]  # first failing axiom -> number of subsets

    @property
    def reversibility_only(self) -> int:
        """Subsets passing every other axiom yet failing reversibility."""
        return self.failure_counts.get("reversibility", 0)


SWEEP_ORDER_CAP = 14  # set masks must fit in uint16 lanes


def _translate_tables(bp: BlockPartition) -> np.ndarray:
    """perm[y][s] = the set mask s multiplied elementwise by y, zero fixed."""
    r = bp.r
    size = 1 << (r + 1)
    perm = np.zeros((r, size), dtype=np.uint16)
    for y in range(r):
        row = bp.group.mul_row(y)
        images = [np.uint16(1 << row[x]) for x in range(r)] + [np.uint16(1 << r)]
        t = perm[y]
        for j in range(r + 1):
            t[1 << j : 2 << j] = t[: 1 << j] | images[j]
    return perm


def verify_all_subsets(
    bp: BlockPartition,
    budget_bits: int = SUBSET_BUDGET_BITS,
    chunk_bits: int = 16,
) -> SweepReport:
    """Run the axiom checks on all 2^b block subsets at once, chunked over numpy.

    Matches verify_axioms exactly: same checks, same first-failure order,
    reversibility last.  Only the verdict tallies are kept, which makes
    sweeps feasible at sizes where building one candidate at a time is not.
    """
    r, b = bp.r, bp.b
    if r > SWEEP_ORDER_CAP:
        raise CapacityError(f"subset sweep needs order <= {SWEEP_ORDER_CAP}, got {r}")
    if b > budget_bits:
        raise CapacityError(f"2^{b} subsets exceeds the 2^{budget_bits} budget")
    minus = bp.minus_one
    group = bp.group
    zero_bit = np.uint16(1 << r)

    # per-block row contributions; blocks are disjoint so sums never carry
    effect = np.zeros((b, r), dtype=np.uint16)
    for i, block in enumerate(bp.blocks):
        for code in block:
            effect[i, code // r] |= np.uint16(1 << (code % r))

    perm = _translate_tables(bp)
    pop = np.array([bin(s).count("1") for s in range(1 << (r + 1))], dtype=np.uint8)
    ginv = [group.inv(y) for y in range(r)]
    zidx = np.array([[group.mul(x, ginv[y]) for x in range(r)] for y in range(r)])
    prod = np.array([group.mul_row(a) for a in range(r)])
    one_x = (np.uint16(1) << np.arange(r, dtype=np.uint16))[None, :]

    verified = certified = certified_unverified = 0
    failures = [0] * len(AXIOM_ORDER)
    total = 1 << b
    step = 1 << min(chunk_bits, b)
    for lo in range(0, total, step):
        masks = np.arange(lo, min(lo + step, total), dtype=np.int64)
        bits = ((masks[:, None] >> np.arange(b)) & 1).astype(np.uint16)
        rows = bits @ effect  # [n, r] pi row masks
        p = rows.copy()
        p[:, minus] |= zero_bit

        add = np.empty((len(masks), r, r), dtype=np.uint16)  # add[:, x, y] = x + y
        for y in range(r):
            add[:, :, y] = perm[y][p[:, zidx[y]]]

        empty = rows == 0
        empty[:, minus] = False
        fail_ne = empty.any(axis=1)

        fail_comm = (add[:, :, 0] != add[:, 0, :]).any(axis=1)

        fail_assoc = np.zeros(len(masks), dtype=bool)
        for z in range(r):
            # (x + 1) + z for all x: fold w + z over the members w of P(x)
            lhs = (((p >> r) & 1) * np.uint16(1 << z)).astype(np.uint16)
            to_z = add[:, :, z]
            for w in range(r):
                lhs |= (p >> w & 1) * to_z[:, w][:, None]
            # x + (1 + z) for all x: fold x + w over the members w of 1 + z
            inner = add[:, 0, z]
            rhs = (((inner >> r) & 1)[:, None] * one_x).astype(np.uint16)
            for w in range(r):
                rhs |= ((inner >> w) & 1)[:, None] * add[:, :, w]
            fail_assoc |= (lhs != rhs).any(axis=1)

        fail_dist = np.zeros(len(masks), dtype=bool)
        for a in range(r):
            fail_dist |= (perm[a][p] != add[:, prod[a], a]).any(axis=1)

        # nonzero x: negatives counted over nonzero y; the zero row always has one
        negs = ((add >> r) & 1).sum(axis=2)
        fail_uni = (negs != 1).any(axis=1)

        fail_rev = np.zeros(len(masks), dtype=bool)
        to_minus = add[:, :, minus]
        for z in range(r):
            in_one_plus_z = (add[:, 0, z][:, None] >> np.arange(r, dtype=np.uint16)) & 1
            reverses = (to_minus >> z) & 1
            fail_rev |= (in_one_plus_z & ~reverses & 1).any(axis=1)

        fails = np.stack([fail_ne, fail_comm, fail_assoc, fail_dist, fail_uni, fail_rev])
        any_fail = fails.any(axis=0)
        first = np.argmax(fails, axis=0)
        for i in range(len(AXIOM_ORDER)):
            failures[i] += int((any_fail & (first == i)).sum())
        verified += int((~any_fail).sum())

        min_weight = pop[rows].min(axis=1)
        screen = 2 * min_weight.astype(np.int64) > r
        certified += int(screen.sum())
        certified_unverified += int((screen & any_fail).sum())

    return SweepReport(
        group,
        minus,
        total,
        verified,
        certified,
        certified_unverified,
        {name: n for name, n in zip(AXIOM_ORDER, failures) if n},
    )


def census_all_minus_ones(
    group: AbelianGroup, mode: str = MODE_FULL, budget_bits: int = SUBSET_BUDGET_BITS
) -> list[Census]:
    """One census per legal -1 choice; classes are never merged across -1 values."""
    return [
        enumerate_subsets(compute_blocks(group, m1), mode, budget_bits)
        for m1 in group.involution_candidates()
    ]
