"""Linear systems over hyperfields: the brute-force and structured solvers."""

import itertools
import random

import pytest

from hyperblocks import (
    AbelianGroup,
    CapacityError,
    FetvinsReport,
    HyperfieldCandidate,
    LinearSystem,
    ample_solve,
    brute_force_solve,
    build_candidate,
    check,
    check_fetvins,
    compute_blocks,
    is_ample,
    krasner,
    set_sum,
    sign_hyperfield,
    verify_axioms,
)
from hyperblocks.linear import (
    equation_sum,
    is_trivial,
    iter_normalized_systems,
    term_element,
)
from conftest import from_labels


# -- plumbing -----------------------------------------------------------------


def test_make_validation():
    s = LinearSystem.make([[0, 1, 3]])
    assert s.n_vars == 3
    with pytest.raises(ValueError):
        LinearSystem.make([], n_vars=None)
    with pytest.raises(ValueError):
        LinearSystem.make([[0, 1], [0]])
    with pytest.raises(ValueError):
        LinearSystem.make([[0, -1]])


def test_coefficient_range_checked(z3_named):
    h = z3_named["BC"]
    with pytest.raises(ValueError):
        check(h, LinearSystem.make([[0, 7]]), (0, 0))


def test_term_element(z3_named):
    h = z3_named["BC"]
    assert term_element(h, 1, 2) == 0  # a * a^2 = 1
    assert term_element(h, h.zero, 1) == h.zero
    assert term_element(h, 1, h.zero) == h.zero


def test_set_sum_krasner():
    k = krasner()
    one = 1 << 0
    assert set_sum(k, [one, one, one]) == 0b11
    # empty sum is {0}
    assert set_sum(k, []) == 1 << k.zero


def test_check_examples(z3_named):
    k = krasner()
    assert check(k, LinearSystem.make([[0, 0]]), (0, 0))
    s = sign_hyperfield()
    # x - y = 0 at x = y = 1
    assert check(s, LinearSystem.make([[0, 1]]), (0, 0))
    assert not check(s, LinearSystem.make([[0, 0]]), (0, 0))
    h = z3_named["BC"]
    assert check(h, LinearSystem.make([[0, 0, 0]]), (0, 0, 1))


def test_brute_force_solve_examples():
    k = krasner()
    assert brute_force_solve(k, LinearSystem.make([[0, 0]])) == (0, 0)
    s = sign_hyperfield()
    sol = brute_force_solve(s, LinearSystem.make([[0, 0]]))
    assert sol is not None and not is_trivial(s, sol)
    assert check(s, LinearSystem.make([[0, 0]]), sol)
    # forcing each variable to zero on its own leaves only the trivial
    # assignment
    z = s.zero
    assert brute_force_solve(s, LinearSystem.make([[0, z], [z, 0]])) is None


def test_brute_force_budget(z3_named):
    h = z3_named["BCD"]
    with pytest.raises(CapacityError):
        brute_force_solve(h, LinearSystem.make([[0] * 12]), budget=1000)


# -- the structured solver ------------------------------------------------------


def test_ample_solve_requires_ample(z3_named):
    with pytest.raises(ValueError):
        ample_solve(z3_named["BD"], LinearSystem.make([[0, 0, 0]]))


def test_ample_solve_requires_fewer_equations(z3_named):
    with pytest.raises(ValueError):
        ample_solve(z3_named["BC"], LinearSystem.make([[0, 0], [0, 1]]))


def test_single_equation_three_vars(z3_named):
    h = z3_named["BC"]
    system = LinearSystem.make([[0, 0, 0]])
    sol = ample_solve(h, system)
    assert check(h, system, sol)
    assert not is_trivial(h, sol)


def test_four_term_equations_are_free(z3_named):
    h = z3_named["ABCD"]
    # a sum of four nonzero terms covers everything, so any all-nonzero
    # assignment satisfies the first equation
    eq = (0, 0, 0, 0)
    for values in itertools.product(range(h.r), repeat=4):
        assert equation_sum(h, eq, values) & (1 << h.zero)
    system = LinearSystem.make([list(eq), [0, 1, h.zero, h.zero]])
    sol = ample_solve(h, system)
    assert check(h, system, sol)
    assert not is_trivial(h, sol)


def test_pile_fallback_case(z3_named):
    h = z3_named["BCD"]
    system = LinearSystem.make([[0, 0, 0, 3], [0, 1, 2, 3], [0, 2, 1, 3]], n_vars=4)
    sol = ample_solve(h, system)
    assert check(h, system, sol)
    assert not is_trivial(h, sol)


def ample_reps_order_up_to_3():
    out = [krasner()]
    z2 = AbelianGroup.from_spec("Z2")
    for m1 in (0, 1):
        bp = compute_blocks(z2, m1)
        out.append(build_candidate(bp, (1 << bp.b) - 1))
    z3bp = compute_blocks(AbelianGroup.from_spec("Z3"), 0)
    for labels in ["BC", "ABC", "ABD", "ACD", "BCD", "ABCD"]:
        out.append(build_candidate(z3bp, z3bp.subset_from_labels(labels)))
    return [h for h in out if is_ample(h) and verify_axioms(h).ok]


def test_ample_solve_exhaustive_small():
    """Every normalized system with up to 3 variables, every ample
    hyperfield of order <= 4."""
    reps = ample_reps_order_up_to_3()
    assert len(reps) == 9
    for h in reps:
        for system in iter_normalized_systems(h, 3):
            sol = ample_solve(h, system)
            assert check(h, system, sol)
            assert not is_trivial(h, sol)


def test_ample_solve_random_larger_systems():
    rng = random.Random(57105)
    bases = []
    z3bp = compute_blocks(AbelianGroup.from_spec("Z3"), 0)
    bases.append(build_candidate(z3bp, z3bp.subset_from_labels("BC")))
    bases.append(build_candidate(z3bp, z3bp.subset_from_labels("ABCD")))
    z5bp = compute_blocks(AbelianGroup.from_spec("Z5"), 0)
    bases.append(build_candidate(z5bp, 0x2E))
    bases.append(build_candidate(z5bp, 0x7F))
    z4bp = compute_blocks(AbelianGroup.from_spec("Z4"), 0)
    bases.append(build_candidate(z4bp, 0x17))
    for h in bases:
        assert verify_axioms(h).ok and is_ample(h)
        for _ in range(150):
            n = rng.randrange(2, 7)
            k = rng.randrange(1, n)
            eqs = [
                [rng.randrange(0, h.r + 1) for _ in range(n)] for _ in range(k)
            ]
            system = LinearSystem.make(eqs, n_vars=n)
            sol = ample_solve(h, system)
            assert check(h, system, sol)
            assert not is_trivial(h, sol)


def test_ample_solve_agrees_with_brute_force(z3_named):
    h = z3_named["BC"]
    for system in iter_normalized_systems(h, 3):
        structured = ample_solve(h, system)
        brute = brute_force_solve(h, system)
        assert brute is not None
        assert check(h, system, structured) and check(h, system, brute)


# -- the FETVINS check ------------------------------------------------------------


def test_normalized_system_counts(z3_named):
    assert sum(1 for _ in iter_normalized_systems(krasner(), 3)) == 38
    assert sum(1 for _ in iter_normalized_systems(z3_named["BC"], 3)) == 257


def test_check_fetvins_confirms(z3_named):
    for name in ["BC", "ABC", "ABD", "ACD", "BCD", "ABCD"]:
        rep = check_fetvins(z3_named[name], 3)
        assert rep.ok
        assert rep.systems_checked == 257
        assert rep.counterexample is None
    # fields have the property too, ample or not
    rep = check_fetvins(z3_named["D"], 3)
    assert rep.ok
    rep = check_fetvins(krasner(), 3)
    assert rep.ok and rep.systems_checked == 38


def test_check_fetvins_budget(z3_named):
    with pytest.raises(CapacityError):
        check_fetvins(z3_named["BC"], 3, budget=100)


def test_fetvins_report_str(z3_named):
    rep = check_fetvins(krasner(), 2)
    assert "solvable" in str(rep)
    bad = FetvinsReport(False, 3, 10, LinearSystem.make([[0, 1, 1]]))
    assert "counterexample with 3 variables" in str(bad)
