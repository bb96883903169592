"""Finite fields, their multiplicative quotients, and the search that
decides whether a candidate arises as such a quotient.

F_q modulo the subgroup of r-th powers (for r dividing q - 1) yields a
hyperfield on the cyclic group of order r; its addition rows come from
reading w + 1 classwise across each coset.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import CapacityError
from .groups import AbelianGroup, _prime_factors
from .hyperfields import HyperfieldCandidate

QUOTIENT = "quotient"
NONQUOTIENT = "nonquotient"
UNKNOWN = "unknown"

Q_BOUND_CAP = 100_000


def _is_prime_power(q: int) -> tuple[int, int] | None:
    if q < 2:
        return None
    factors = _prime_factors(q)
    if len(factors) != 1:
        return None
    (p, k), = factors.items()
    return p, k


class FiniteField:
    """GF(q) with elements packed as base-p integers 0..q-1.

    The packed value sum(c_i * p^i) encodes the polynomial sum(c_i * x^i)
    over the prime field.  Extension fields reduce modulo the least monic
    irreducible of degree k, comparing coefficient tuples from the highest
    degree down.
    """

    def __init__(self, q: int):
        pk = _is_prime_power(q)
        if pk is None:
            raise ValueError(f"{q} is not a prime power")
        if q > Q_BOUND_CAP:
            raise CapacityError(f"q={q} exceeds the field size cap {Q_BOUND_CAP}")
        self.q = q
        self.p, self.k = pk
        self.modulus = self._find_modulus() if self.k > 1 else None
        self._build_log_tables()

    # -- packed polynomial arithmetic --

    def _digits(self, a: int) -> list[int]:
        p, out = self.p, []
        for _ in range(self.k):
            out.append(a % p)
            a //= p
        return out

    def _pack(self, digits: list[int]) -> int:
        v = 0
        for c in reversed(digits):
            v = v * self.p + c
        return v

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        da, db = self._digits(a), self._digits(b)
        return self._pack([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self._pack([(-c) % self.p for c in self._digits(a)])

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        return self._pack(self._reduce(prod))

    def _reduce(self, coeffs: list[int]) -> list[int]:
        # modulus is monic: x^k = -(low part)
        mod_low = self._mod_low
        p, k = self.p, self.k
        for i in range(len(coeffs) - 1, k - 1, -1):
            c = coeffs[i]
            if c:
                coeffs[i] = 0
                for j, m in enumerate(mod_low):
                    coeffs[i - k + j] = (coeffs[i - k + j] - c * m) % p
        return coeffs[:k]

    def power(self, a: int, n: int) -> int:
        result, base = 1, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    # -- modulus selection --

    def _find_modulus(self) -> tuple[int, ...]:
        """Least monic irreducible of degree k; coefficients low to high."""
        p, k = self.p, self.k
        for packed in range(p**k):
            low = self._digits_of(packed, k)
            if self._irreducible(low):
                return tuple(low) + (1,)
        raise RuntimeError(f"no irreducible of degree {k} over GF({p})")

    def _digits_of(self, a: int, length: int) -> list[int]:
        # low-to-high coefficients; the packed integer weights high
        # coefficients more, so ascending order is lex from the top down
        out = []
        for _ in range(length):
            out.append(a % self.p)
            a //= self.p
        return out

    def _irreducible(self, low: list[int]) -> bool:
        # trial division by every monic polynomial of degree 1..k//2
        p, k = self.p, len(low)
        f = low + [1]
        if f[0] == 0:
            return False  # divisible by x
        for d in range(1, k // 2 + 1):
            for packed in range(p**d):
                g = self._digits_of(packed, d) + [1]
                if self._poly_rem(f, g):
                    continue
                return False
        return True

    @staticmethod
    def _poly_rem_generic(f: list[int], g: list[int], p: int) -> list[int]:
        f = list(f)
        dg = len(g) - 1
        for i in range(len(f) - 1, dg - 1, -1):
            c = f[i]
            if c:
                f[i] = 0
                for j in range(dg):
                    f[i - dg + j] = (f[i - dg + j] - c * g[j]) % p
        rem = f[:dg]
        while rem and rem[-1] == 0:
            rem.pop()
        return rem

    def _poly_rem(self, f: list[int], g: list[int]) -> list[int]:
        return self._poly_rem_generic(f, g, self.p)

    # -- discrete logs --

    def _build_log_tables(self) -> None:
        if self.modulus is not None:
            self._mod_low = list(self.modulus[:-1])
        q = self.q
        group_order = q - 1
        prime_parts = list(_prime_factors(group_order)) if group_order > 1 else []
        zeta = 1
        for z in range(2, q):
            if all(self.power(z, group_order // ell) != 1 for ell in prime_parts):
                zeta = z
                break
        self.generator = zeta
        exp = [1] * group_order
        for i in range(1, group_order):
            exp[i] = self.mul(exp[i - 1], zeta)
        log = [-1] * q
        for i, v in enumerate(exp):
            log[v] = i
        self.exp, self.log = exp, log

    def minus_one(self) -> int:
        return self.p - 1

    def modulus_string(self) -> str:
        if self.modulus is None:
            return f"prime field GF({self.p})"
        terms = []
        for i in range(self.k, -1, -1):
            c = self.modulus[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                x = "x" if i == 1 else f"x^{i}"
                terms.append(x if c == 1 else f"{c}{x}")
        return " + ".join(terms)


def quotient_hyperfield(q: int, r: int) -> HyperfieldCandidate:
    """GF(q) modulo its subgroup of r-th powers, for r dividing q - 1.

    The class of a nonzero w is its discrete log modulo r; the addition
    row of a class collects the classes of w + 1 as w runs over the coset.
    """
    field = FiniteField(q)
    if r < 1 or (q - 1) % r:
        raise ValueError(f"need r dividing q - 1, got r={r}, q={q}")
    group = AbelianGroup([r] if r > 1 else [])
    log = field.log
    rows = [0] * r
    for w in range(1, q):
        s = field.add(w, 1)
        if s:
            rows[log[w] % r] |= 1 << (log[s] % r)
    minus_one = log[field.minus_one()] % r
    return HyperfieldCandidate(group, minus_one, tuple(rows))


def subgroup_generator(q: int, r: int) -> int:
    """Packed generator of the r-th power subgroup used by the quotient."""
    field = FiniteField(q)
    return field.power(field.generator, r)


def find_finite_quotient(h: HyperfieldCandidate, q_bound: int) -> tuple[int, int] | None:
    """Least prime power q <= q_bound with GF(q)/(r-th powers) isomorphic
    to h, as (q, subgroup generator); None if the scan comes up empty.

    Only cyclic groups can occur, so non-cyclic candidates never match.
    """
    from .census import canonical_form

    if not h.group.is_cyclic:
        return None
    r = h.r
    target = canonical_form(h)
    for q in range(2, q_bound + 1):
        if (q - 1) % r or _is_prime_power(q) is None:
            continue
        cand = quotient_hyperfield(q, r)
        if cand.minus_one != h.minus_one:
            continue
        if canonical_form(cand) == target:
            return q, subgroup_generator(q, r)
    return None


def excludes_infinite_quotient(h: HyperfieldCandidate) -> bool:
    """True when 1 + (-1) falls short of the whole set, which no quotient
    of an infinite field allows."""
    return h.add(0, h.minus_one) != h.full_mask


def default_q_bound(r: int) -> int:
    return min(max(r**4, 4), Q_BOUND_CAP)


@dataclass(frozen=True)
class QuotientStatusReport:
    status: str  # quotient | nonquotient | unknown
    q: int | None  # witness field size when status == quotient
    generator: int | None  # packed generator of the quotient subgroup
    q_bound: int
    definitive: bool  # scan bound suffices to settle nonexistence
    excludes_infinite: bool

    def __str__(self) -> str:
        if self.status == QUOTIENT:
            return f"quotient of GF({self.q})"
        return self.status


def quotient_status(h: HyperfieldCandidate, q_bound: int | None = None) -> QuotientStatusReport:
    """Decide whether h is a quotient of a field.

    A hit inside the scan bound settles it positively.  For odd r a clean
    scan up to r^4 settles it negatively.  Everything else stays unknown.
    """
    r = h.r
    if q_bound is None:
        q_bound = default_q_bound(r)
    excludes = excludes_infinite_quotient(h)
    definitive = r % 2 == 1 and q_bound >= r**4
    hit = find_finite_quotient(h, q_bound)
    if hit is not None:
        q, gen = hit
        return QuotientStatusReport(QUOTIENT, q, gen, q_bound, definitive, excludes)
    if definitive:
        return QuotientStatusReport(NONQUOTIENT, None, None, q_bound, definitive, excludes)
    return QuotientStatusReport(UNKNOWN, None, None, q_bound, definitive, excludes)
