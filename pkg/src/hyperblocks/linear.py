"""Homogeneous linear systems over a hyperfield and a constructive solver
for ample ones.

An equation is a coefficient tuple (c_1, ..., c_n); an assignment
satisfies it when zero lies in the multivalued sum of the terms c_i x_i.
Over an ample hyperfield every system with fewer equations than variables
has a solution that is not identically zero, and ample_solve produces one
without exhaustive search over full assignments.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, product

from .errors import CapacityError
from .hyperfields import HyperfieldCandidate, is_ample

BRUTE_BUDGET = 10_000_000
PILE_BUDGET = 1_000_000


class SolverInvariantError(Exception):
    """The structured solver reached a state its own reasoning forbids."""


@dataclass(frozen=True)
class LinearSystem:
    """Equations given as dense coefficient tuples of element indices.

    Index r (the zero slot of the parent hyperfield) is a zero
    coefficient, so a plain field equation like x - y = 0 over a group of
    order r appears as (0, minus_one, r, ..., r).
    """

    n_vars: int
    equations: tuple[tuple[int, ...], ...]

    @classmethod
    def make(cls, equations, n_vars: int | None = None) -> LinearSystem:
        eqs = tuple(tuple(int(c) for c in eq) for eq in equations)
        if n_vars is None:
            if not eqs:
                raise ValueError("n_vars required for an empty system")
            n_vars = len(eqs[0])
        for eq in eqs:
            if len(eq) != n_vars:
                raise ValueError("ragged equation lengths")
            if any(c < 0 for c in eq):
                raise ValueError("coefficients are element indices, must be >= 0")
        return cls(n_vars, eqs)


def _validate(h: HyperfieldCandidate, system: LinearSystem) -> None:
    for eq in system.equations:
        for c in eq:
            if c > h.zero:
                raise ValueError(f"coefficient index {c} out of range for r={h.r}")


def term_element(h: HyperfieldCandidate, coeff: int, value: int) -> int:
    """The element c * x; zero if either side is zero."""
    if coeff == h.zero or value == h.zero:
        return h.zero
    return h.group.mul(coeff, value)


def set_sum(h: HyperfieldCandidate, masks) -> int:
    """Multivalued sum of a sequence of element sets; empty sum is {0}."""
    total = 1 << h.zero
    for m in masks:
        total = h.set_add(total, m)
    return total


def equation_sum(h: HyperfieldCandidate, eq: tuple[int, ...], assignment) -> int:
    return set_sum(h, (1 << term_element(h, c, x) for c, x in zip(eq, assignment)))


def check(h: HyperfieldCandidate, system: LinearSystem, assignment) -> bool:
    """True when every equation's term sum contains zero."""
    if len(assignment) != system.n_vars:
        raise ValueError("assignment length does not match variable count")
    _validate(h, system)
    zero_bit = 1 << h.zero
    return all(equation_sum(h, eq, assignment) & zero_bit for eq in system.equations)


def is_trivial(h: HyperfieldCandidate, assignment) -> bool:
    return all(x == h.zero for x in assignment)


def brute_force_solve(
    h: HyperfieldCandidate, system: LinearSystem, budget: int = BRUTE_BUDGET
) -> tuple[int, ...] | None:
    """First nontrivial solution in an order that tries zeroes first, so
    sparse solutions surface before dense ones; None if there is none."""
    _validate(h, system)
    n = system.n_vars
    domain = [h.zero] + list(range(h.r))
    total = (h.r + 1) ** n
    if total > budget:
        raise CapacityError(f"{total} assignments exceed the budget of {budget}")
    for idx in range(1, total):  # index 0 is the all-zero assignment
        digits = []
        t = idx
        for _ in range(n):
            digits.append(domain[t % (h.r + 1)])
            t //= h.r + 1
        assignment = tuple(digits)
        if check(h, system, assignment):
            return assignment
    return None


# -- structured solver ---------------------------------------------------------


class _Equation:
    """Sparse working form: coefficient per root variable plus the fixed
    elements contributed by variables assigned along the way."""

    __slots__ = ("terms", "consts")

    def __init__(self, terms: dict[int, int], consts: list[int]):
        self.terms = terms
        self.consts = consts

    def weight(self) -> int:
        return len(self.terms) + len(self.consts)


def _pick(mask: int, zero: int) -> int:
    """Least nonzero element of a set, falling back to zero."""
    nonzero = mask & ~(1 << zero)
    if nonzero:
        return (nonzero & -nonzero).bit_length() - 1
    if mask & (1 << zero):
        return zero
    raise SolverInvariantError("empty solution set")


def _solution_set(h: HyperfieldCandidate, coeff: int, rest_mask: int) -> int:
    """Values v with zero in coeff * v + rest: v ranges over -(rest)/coeff."""
    g = h.group
    return h.translate(h.translate(rest_mask, h.minus_one), g.inv(coeff))


def ample_solve(
    h: HyperfieldCandidate, system: LinearSystem, pile_budget: int = PILE_BUDGET
) -> tuple[int, ...]:
    """Nontrivial solution of a system with fewer equations than variables.

    Reduction rules shrink the system: one-term equations pin a variable,
    two-term equations tie one variable to another multiplicatively, and
    duplicate terms merge through the multivalued sum of their
    coefficients.  Any equation left with at least four terms holds for
    every assignment without zeroes, so only the three-term residue needs
    work: variables touching at most two such equations are deferred and
    solved backwards (two at once where needed, which is where ampleness
    enters), and a residue where every variable is pinned three ways is
    small enough to search outright.
    """
    if not is_ample(h):
        raise ValueError("solver requires an ample hyperfield")
    n, k = system.n_vars, len(system.equations)
    if k >= n:
        raise ValueError(f"need fewer equations than variables, got {k} >= {n}")
    _validate(h, system)
    g = h.group
    zero = h.zero
    zero_bit = 1 << zero

    parent: dict[int, tuple[int, int]] = {}  # var -> (ancestor, factor)
    assignment: dict[int, int] = {}  # root var -> element

    def find(x: int) -> tuple[int, int]:
        if x not in parent:
            return x, 0
        p, f = parent[x]
        root, f2 = find(p)
        resolved = (root, g.mul(f2, f))
        parent[x] = resolved
        return resolved

    def normalize(eq: _Equation) -> None:
        terms: dict[int, int] = {}
        consts = list(eq.consts)
        for var, coeff in eq.terms.items():
            root, factor = find(var)
            coeff = g.mul(coeff, factor)
            if root in assignment:
                e = term_element(h, coeff, assignment[root])
                if e != zero:
                    consts.append(e)
                continue
            if root not in terms:
                terms[root] = coeff
                continue
            # duplicate variable: merge through the coefficient sum
            merged = h.add(terms[root], coeff)
            if merged & zero_bit:
                del terms[root]  # cancellation is available, take it
            else:
                terms[root] = (merged & -merged).bit_length() - 1
        eq.terms, eq.consts = terms, consts

    equations: list[_Equation] = []
    for eq in system.equations:
        terms = {v: c for v, c in enumerate(eq) if c != zero}
        if terms:
            equations.append(_Equation(terms, []))

    deferred: list[tuple[int, list[_Equation]]] = []  # unwound in reverse

    max_rounds = 50 + 5 * (n + k)
    for _ in range(max_rounds):
        for eq in equations:
            normalize(eq)

        acted = False
        for eq in list(equations):
            if not eq.terms:
                if set_sum(h, (1 << c for c in eq.consts)) & zero_bit:
                    equations.remove(eq)
                    acted = True
                    break
                raise SolverInvariantError("constant equation misses zero")
            if len(eq.terms) == 1:
                (var, coeff), = eq.terms.items()
                rest = set_sum(h, (1 << c for c in eq.consts))
                assignment[var] = _pick(_solution_set(h, coeff, rest), zero)
                equations.remove(eq)
                acted = True
                break
            if len(eq.terms) == 2 and not eq.consts:
                (v1, c1), (v2, c2) = sorted(eq.terms.items())
                # zero in c1 x1 + c2 x2 exactly when x2 = -c1/c2 * x1
                factor = g.mul(h.minus_one, g.mul(g.inv(c2), c1))
                parent[v2] = (v1, factor)
                equations.remove(eq)
                acted = True
                break
            if len(eq.terms) == 2:
                # anchor the lower variable; the next round pins the other
                var = min(eq.terms)
                assignment[var] = 0
                acted = True
                break
        if acted:
            continue

        # only equations of weight >= 3 remain
        active = [eq for eq in equations if len(eq.terms) == 3 and not eq.consts]
        if not active:
            break
        occurrences: dict[int, int] = {}
        for eq in active:
            for var in eq.terms:
                occurrences[var] = occurrences.get(var, 0) + 1
        light = sorted(v for v, cnt in occurrences.items() if cnt <= 2)
        if light:
            var = light[0]
            mine = [eq for eq in active if var in eq.terms]
            deferred.append((var, mine))
            for eq in mine:
                equations.remove(eq)
            continue
        _solve_pile(h, active, assignment, pile_budget)
        for eq in active:
            equations.remove(eq)
    else:
        raise SolverInvariantError("reduction did not converge")

    # equations still present all have weight >= 4 and at least three
    # variable terms; nonzero defaults satisfy them
    free = [v for v in range(n) if v not in parent and v not in assignment]
    for var in free:
        assignment[var] = 0

    for var, eqs in reversed(deferred):
        mask = h.full_mask
        for eq in eqs:
            rest = set_sum(
                h,
                (1 << term_element(h, c, assignment[v]) for v, c in eq.terms.items() if v != var),
            )
            rest = h.set_add(rest, set_sum(h, (1 << c for c in eq.consts)))
            mask &= _solution_set(h, eq.terms[var], rest)
        if not mask:
            raise SolverInvariantError("deferred variable has no consistent value")
        assignment[var] = _pick(mask, zero)

    result = []
    for var in range(n):
        root, factor = find(var)
        value = assignment[root]
        result.append(value if value == zero else g.mul(factor, value))
    solution = tuple(result)
    if is_trivial(h, solution) or not check(h, system, solution):
        raise SolverInvariantError(f"solver produced an invalid assignment {solution}")
    return solution


def _solve_pile(
    h: HyperfieldCandidate,
    pile: list[_Equation],
    assignment: dict[int, int],
    budget: int,
) -> None:
    """Exhaust a residue where every variable meets three or more
    equations; nonzero values are tried first, the all-zero assignment is
    the final resort and always works."""
    pile_vars = sorted({v for eq in pile for v in eq.terms})
    domain = list(range(h.r)) + [h.zero]
    total = (h.r + 1) ** len(pile_vars)
    if total > budget:
        raise CapacityError(f"pile of {len(pile_vars)} variables exceeds the search budget")
    zero_bit = 1 << h.zero
    for values in product(domain, repeat=len(pile_vars)):
        trial = dict(zip(pile_vars, values))
        ok = True
        for eq in pile:
            s = set_sum(h, (1 << term_element(h, c, trial[v]) for v, c in eq.terms.items()))
            if not s & zero_bit:
                ok = False
                break
        if ok:
            assignment.update(trial)
            return
    raise SolverInvariantError("pile admits no assignment, not even zero")


# -- existence sweep -----------------------------------------------------------


def normalized_equations(h: HyperfieldCandidate, n: int) -> list[tuple[int, ...]]:
    """All coefficient tuples whose first nonzero coefficient is the
    identity; scaling makes every equation equivalent to one of these."""
    out = []
    for coeffs in product(range(h.r + 1), repeat=n):
        lead = next((c for c in coeffs if c != h.zero), None)
        if lead == 0:
            out.append(coeffs)
    return out


def iter_normalized_systems(h: HyperfieldCandidate, n_max: int):
    """Every system with fewer equations than variables, up to scaling of
    individual equations, for 2 <= n <= n_max variables."""
    for n in range(2, n_max + 1):
        eqs = normalized_equations(h, n)
        for k in range(1, n):
            for combo in combinations_with_replacement(eqs, k):
                yield LinearSystem(n, combo)


@dataclass(frozen=True)
class FetvinsReport:
    ok: bool
    n_max: int
    systems_checked: int
    counterexample: LinearSystem | None

    def __str__(self) -> str:
        if self.ok:
            return f"all {self.systems_checked} systems solvable up to {self.n_max} variables"
        return f"counterexample with {self.counterexample.n_vars} variables"


def check_fetvins(
    h: HyperfieldCandidate, n_max: int = 3, budget: int = BRUTE_BUDGET
) -> FetvinsReport:
    """Verify that every system with fewer equations than variables has a
    nontrivial solution, for all variable counts up to n_max.

    Satisfying assignments of each normalized equation are precomputed as
    bitsets; a system is solvable exactly when the intersection of its
    equations' bitsets contains more than the all-zero assignment.
    """
    r = h.r
    checked = 0
    for n in range(2, n_max + 1):
        eqs = normalized_equations(h, n)
        total = (r + 1) ** n
        if total * len(eqs) > budget:
            raise CapacityError(f"{total * len(eqs)} equation evaluations exceed the budget")
        assignments = list(product([h.zero] + list(range(r)), repeat=n))
        sat = []
        for eq in eqs:
            bits = 0
            for i, a in enumerate(assignments):
                if equation_sum(h, eq, a) & (1 << h.zero):
                    bits |= 1 << i
            sat.append(bits)
        trivial_bit = 1  # assignments[0] is all-zero
        for k in range(1, n):
            for combo in combinations_with_replacement(range(len(eqs)), k):
                m = sat[combo[0]]
                for i in combo[1:]:
                    m &= sat[i]
                checked += 1
                if not m & ~trivial_bit:
                    system = LinearSystem(n, tuple(eqs[i] for i in combo))
                    return FetvinsReport(False, n_max, checked, system)
    return FetvinsReport(True, n_max, checked, None)
