"""Finite abelian groups in invariant-factor form.

Elements are plain ints in ``range(order)``, encoding vectors over the
invariant factors in mixed radix, row-major (the last factor varies
fastest).  Index 0 is the identity, written ``1`` because the group is
the multiplicative group of a hyperfield.
"""
from __future__ import annotations

from functools import reduce
from typing import Iterator

from .errors import CapacityError

AUTOMORPHISM_ORDER_BOUND = 64
MUL_TABLE_ORDER_BOUND = 256

_SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def _prime_factors(n: int) -> dict[int, int]:
    """Prime -> exponent for n >= 1, by trial division."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def invariant_factors(factors: list[int] | tuple[int, ...]) -> tuple[int, ...]:
    """Normalize any list of cyclic orders to invariant-factor form d_1 | d_2 | ... .

    The empty list is the trivial group.  Example: [4, 2] -> (2, 4).
    """
    for d in factors:
        if d < 2:
            raise ValueError(f"cyclic factor must be >= 2, got {d}")
    # Collect prime powers per prime, align the largest together.
    per_prime: dict[int, list[int]] = {}
    for d in factors:
        for p, e in _prime_factors(d).items():
            per_prime.setdefault(p, []).append(e)
    width = max((len(v) for v in per_prime.values()), default=0)
    out = [1] * width
    for p, exps in per_prime.items():
        exps = sorted(exps, reverse=True)
        for i, e in enumerate(exps):
            out[i] *= p**e
    out = [d for d in out if d > 1]
    out.reverse()  # ascending, so each divides the next
    return tuple(out)


class AbelianGroup:
    """A finite abelian group, normalized so equal groups compare equal."""

    def __init__(self, factors: list[int] | tuple[int, ...] = ()):
        self.factors = invariant_factors(tuple(factors))
        self.order = reduce(lambda a, b: a * b, self.factors, 1)
        # radix weights for the mixed-radix element encoding
        weights = []
        w = 1
        for d in reversed(self.factors):
            weights.append(w)
            w *= d
        self._weights = tuple(reversed(weights))
        # small groups get a full Cayley table; larger ones stay formula-based
        if self.order <= MUL_TABLE_ORDER_BOUND:
            vecs = [self.element_vector(e) for e in range(self.order)]
            idx = self.element_index
            self._mul_rows = [
                [idx(tuple(x + y for x, y in zip(va, vb))) for vb in vecs] for va in vecs
            ]
            self._inv_list = [row.index(0) for row in self._mul_rows]
        else:
            self._mul_rows = None
            self._inv_list = None

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_spec(cls, spec: str) -> AbelianGroup:
        """Parse "Z6", "Z2xZ4" (case-insensitive); "Z1" is the trivial group."""
        parts = spec.strip().replace("X", "x").split("x")
        factors = []
        for part in parts:
            part = part.strip()
            if not part or part[0] not in "zZ" or not part[1:].isdigit():
                raise ValueError(f"bad group spec {spec!r}; expected e.g. Z3 or Z2xZ4")
            n = int(part[1:])
            if n < 1:
                raise ValueError(f"bad group spec {spec!r}: order must be >= 1")
            if n > 1:
                factors.append(n)
        return cls(factors)

    def spec_string(self) -> str:
        if not self.factors:
            return "Z1"
        return "x".join(f"Z{d}" for d in self.factors)

    # -- encoding ------------------------------------------------------------

    def element_vector(self, e: int) -> tuple[int, ...]:
        """Mixed-radix digits of an element index."""
        return tuple((e // w) % d for w, d in zip(self._weights, self.factors))

    def element_index(self, vec: tuple[int, ...]) -> int:
        return sum((v % d) * w for v, d, w in zip(vec, self.factors, self._weights))

    # -- operations ----------------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        if self._mul_rows is not None:
            return self._mul_rows[a][b]
        return self.element_index(
            tuple(x + y for x, y in zip(self.element_vector(a), self.element_vector(b)))
        )

    def mul_row(self, a: int) -> list[int]:
        """The row [a*b for b in elements], for hot loops that index it directly."""
        if self._mul_rows is not None:
            return self._mul_rows[a]
        return [self.mul(a, b) for b in range(self.order)]

    def inv(self, a: int) -> int:
        if self._inv_list is not None:
            return self._inv_list[a]
        return self.element_index(tuple(-x for x in self.element_vector(a)))

    def power(self, a: int, n: int) -> int:
        if not self.factors:
            return 0
        return self.element_index(tuple(x * n for x in self.element_vector(a)))

    def element_order(self, a: int) -> int:
        n = 1
        x = a
        while x != 0:
            x = self.mul(x, a)
            n += 1
        return n

    @property
    def is_cyclic(self) -> bool:
        return len(self.factors) <= 1

    def elements(self) -> range:
        return range(self.order)

    def involution_candidates(self) -> list[int]:
        """Elements of multiplicative order <= 2 (legal values of -1), identity first."""
        return [g for g in range(self.order) if self.mul(g, g) == 0]

    # -- automorphisms -------------------------------------------------------

    def automorphisms(self, order_bound: int = AUTOMORPHISM_ORDER_BOUND) -> list[tuple[int, ...]]:
        """All multiplication-preserving bijections, each as an index permutation."""
        if self.order > order_bound:
            raise CapacityError(
                f"automorphism enumeration needs order <= {order_bound}, got {self.order}"
            )
        if not self.factors:
            return [(0,)]
        s = len(self.factors)
        gens = [self.element_index(tuple(1 if j == i else 0 for j in range(s))) for i in range(s)]
        # image of generator i must have order dividing factors[i]
        choices = [
            [g for g in range(self.order) if self.power(g, d) == 0] for d in self.factors
        ]
        autos: list[tuple[int, ...]] = []
        images: list[int] = []

        def span_size(imgs: list[int]) -> int:
            # size of the image of the partial hom on <e_1..e_i>
            seen = {0}
            frontier = [0]
            for g, d in zip(imgs, self.factors):
                layer = set(seen)
                for x in list(layer):
                    y = x
                    for _ in range(d - 1):
                        y = self.mul(y, g)
                        layer.add(y)
                seen = layer
            return len(seen)

        def rec(i: int) -> None:
            if i == s:
                perm = [0] * self.order
                for e in range(self.order):
                    vec = self.element_vector(e)
                    img = 0
                    for v, g in zip(vec, images):
                        img = self.mul(img, self.power(g, v))
                    perm[e] = img
                if len(set(perm)) == self.order:
                    autos.append(tuple(perm))
                return
            expected = 1
            for d in self.factors[: i + 1]:
                expected *= d
            for g in choices[i]:
                images.append(g)
                # prune: partial map must already be injective on the partial span
                if span_size(images) == expected:
                    rec(i + 1)
                images.pop()

        rec(0)
        return autos

    # -- display -------------------------------------------------------------

    def element_name(self, e: int) -> str:
        """Exponent notation for cyclic groups (1, a, a^2 as superscripts), vectors otherwise."""
        if not self.factors:
            return "1"
        if self.is_cyclic:
            if e == 0:
                return "1"
            if e == 1:
                return "a"
            return "a" + str(e).translate(_SUPERSCRIPTS)
        return "(" + ",".join(str(v) for v in self.element_vector(e)) + ")"

    def element_names(self) -> list[str]:
        return [self.element_name(e) for e in range(self.order)]

    # -- value semantics -----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AbelianGroup) and self.factors == other.factors

    def __hash__(self) -> int:
        return hash(self.factors)

    def __repr__(self) -> str:
        return f"AbelianGroup({list(self.factors)!r})"


def abelian_groups_up_to(max_order: int) -> Iterator[AbelianGroup]:
    """Every abelian group of order 1..max_order, one per isomorphism class."""

    def partitions(n: int) -> Iterator[list[int]]:
        if n == 0:
            yield []
            return
        for first in range(n, 0, -1):
            for rest in partitions(n - first):
                if not rest or rest[0] <= first:
                    yield [first] + rest

    for n in range(1, max_order + 1):
        per_prime = _prime_factors(n)
        # choose a partition of each prime's exponent independently
        primes = sorted(per_prime)
        parts_per = [list(partitions(per_prime[p])) for p in primes]

        def combos(i: int, acc: list[int]) -> Iterator[list[int]]:
            if i == len(primes):
                yield acc
                return
            for part in parts_per[i]:
                yield from combos(i + 1, acc + [primes[i] ** e for e in part])

        for elementary in combos(0, []):
            yield AbelianGroup(elementary)
