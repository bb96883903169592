"""Finite fields, their coset hyperfields, and the quotient search."""

import pytest

from hyperblocks import (
    AbelianGroup,
    CapacityError,
    FiniteField,
    HyperfieldCandidate,
    NONQUOTIENT,
    QUOTIENT,
    UNKNOWN,
    canonical_form,
    excludes_infinite_quotient,
    find_finite_quotient,
    krasner,
    quotient_hyperfield,
    quotient_status,
    sign_hyperfield,
    verify_axioms,
)
from hyperblocks.quotients import default_q_bound, subgroup_generator
from conftest import from_labels


# -- field construction ------------------------------------------------------------


def test_prime_field_arithmetic():
    f = FiniteField(7)
    assert (f.p, f.k, f.q) == (7, 1, 7)
    assert f.modulus is None
    assert f.add(3, 5) == 1
    assert f.mul(3, 5) == 1
    assert f.neg(2) == 5
    assert f.minus_one() == 6
    assert f.power(3, 6) == 1


def test_gf4_structure():
    f = FiniteField(4)
    assert f.modulus_string() == "x^2 + x + 1"
    # elements pack base-2 coefficient vectors: 2 = x, 3 = x + 1
    assert f.mul(2, 2) == 3  # x^2 = x + 1
    assert f.mul(2, 3) == 1  # x(x + 1) = x^2 + x = 1
    assert f.add(2, 3) == 1
    assert f.minus_one() == 1
    assert f.generator in (2, 3)


def test_gf16_and_gf25_moduli():
    assert FiniteField(16).modulus_string() == "x^4 + x + 1"
    assert FiniteField(25).modulus_string() == "x^2 + 2"


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25, 27, 49])
def test_field_axioms_spot_checks(q):
    f = FiniteField(q)
    xs = range(q)
    for x in xs:
        assert f.mul(x, 1) == x
        assert f.add(x, f.neg(x)) == 0
        # Fermat: x^q = x
        assert f.power(x, q) == x
    # generator has full multiplicative order
    seen = set()
    acc = 1
    for _ in range(q - 1):
        acc = f.mul(acc, f.generator)
        seen.add(acc)
    assert len(seen) == q - 1
    # sampled associativity and distributivity
    sample = list(xs)[: min(q, 9)]
    for a in sample:
        for b in sample:
            for c in sample:
                assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


@pytest.mark.parametrize("q", [1, 6, 12, 100])
def test_field_rejects_non_prime_powers(q):
    with pytest.raises(ValueError):
        FiniteField(q)


def test_field_capacity_cap():
    with pytest.raises(CapacityError):
        FiniteField(2 ** 17)


# -- quotient construction ----------------------------------------------------------


def test_quotient_of_gf7_is_cd(z3_blocks):
    h = quotient_hyperfield(7, 3)
    assert verify_axioms(h).ok
    assert h == from_labels(z3_blocks, "CD")
    # and it is isomorphic to BD
    assert canonical_form(h) == canonical_form(from_labels(z3_blocks, "BD"))


def test_quotient_identifications(z3_blocks):
    assert canonical_form(quotient_hyperfield(4, 3)) == canonical_form(
        from_labels(z3_blocks, "D")
    )
    assert canonical_form(quotient_hyperfield(13, 3)) == canonical_form(
        from_labels(z3_blocks, "BCD")
    )
    assert canonical_form(quotient_hyperfield(16, 3)) == canonical_form(
        from_labels(z3_blocks, "BCD")
    )
    assert canonical_form(quotient_hyperfield(19, 3)) == canonical_form(
        from_labels(z3_blocks, "ABCD")
    )


def test_quotient_by_full_group_is_krasner():
    for q in (3, 4, 5, 9):
        h = quotient_hyperfield(q, 1)
        assert h == krasner()


def test_quotient_trivial_cases():
    # F_2 has a trivial multiplicative group and 1 + 1 = {0}
    h = quotient_hyperfield(2, 1)
    assert h.r == 1
    assert h.pi_bits() == "0"
    assert verify_axioms(h).ok


def test_quotient_requires_divisibility():
    with pytest.raises(ValueError):
        quotient_hyperfield(7, 4)
    with pytest.raises(ValueError):
        quotient_hyperfield(7, 0)


def test_quotients_always_verify():
    for q, r in [(5, 2), (5, 4), (7, 2), (7, 6), (8, 7), (9, 2), (9, 4), (11, 5), (13, 4), (16, 5), (25, 3)]:
        h = quotient_hyperfield(q, r)
        assert verify_axioms(h).ok, (q, r)


def test_subgroup_generator_order():
    for q, r in [(7, 3), (13, 3), (16, 3), (19, 3), (25, 3)]:
        f = FiniteField(q)
        g = subgroup_generator(q, r)
        # g generates the index-r subgroup, so its order is (q-1)/r
        order = 1
        acc = g
        while acc != 1:
            acc = f.mul(acc, g)
            order += 1
        assert order == (q - 1) // r


# -- the quotient search ---------------------------------------------------------------


def test_default_q_bound():
    assert default_q_bound(3) == 81
    assert default_q_bound(1) == 4
    assert default_q_bound(20) == 100_000


def test_find_finite_quotient(z3_blocks):
    assert find_finite_quotient(from_labels(z3_blocks, "BD"), 81) == (7, 6)
    assert find_finite_quotient(from_labels(z3_blocks, "BC"), 81) is None


def test_quotient_status_all_z3_hyperfields(z3_named):
    expected = {
        "D": (QUOTIENT, 4),
        "BD": (QUOTIENT, 7),
        "CD": (QUOTIENT, 7),
        "BCD": (QUOTIENT, 13),
        "ABCD": (QUOTIENT, 19),
        "BC": (NONQUOTIENT, None),
        "ABD": (NONQUOTIENT, None),
        "ACD": (NONQUOTIENT, None),
        "ABC": (NONQUOTIENT, None),
    }
    for name, (status, q) in expected.items():
        rep = quotient_status(z3_named[name])
        assert rep.status == status, name
        assert rep.q == q, name
        assert rep.q_bound == 81
        assert rep.definitive


def test_quotient_status_generators(z3_named):
    assert quotient_status(z3_named["BD"]).generator == 6
    assert quotient_status(z3_named["BCD"]).generator == 8
    assert quotient_status(z3_named["ABCD"]).generator == 8


def test_excludes_infinite_quotient(z3_named):
    # 1 + (-1) falling short of the whole set rules out any quotient of an
    # infinite field
    assert excludes_infinite_quotient(z3_named["BC"])
    assert excludes_infinite_quotient(z3_named["BD"])
    assert not excludes_infinite_quotient(z3_named["ABC"])
    assert not excludes_infinite_quotient(z3_named["ABCD"])
    for name in ["BC", "ABD", "ACD", "ABC"]:
        rep = quotient_status(z3_named[name])
        assert rep.excludes_infinite == excludes_infinite_quotient(z3_named[name])


def test_quotient_status_krasner_found_at_three():
    rep = quotient_status(krasner())
    assert rep.status == QUOTIENT
    assert rep.q == 3
    assert rep.definitive


def test_quotient_status_sign_is_unknown():
    # even order never reaches a definitive no: the finite scan can stop,
    # but quotients of infinite fields stay on the table
    rep = quotient_status(sign_hyperfield())
    assert rep.status == UNKNOWN
    assert rep.q is None
    assert not rep.definitive
    assert not excludes_infinite_quotient(sign_hyperfield())


def test_quotient_status_non_cyclic_group():
    g = AbelianGroup.from_spec("Z2xZ2")
    h = HyperfieldCandidate.from_pi_bits(g, 1, "1" * 16)
    assert verify_axioms(h).ok
    rep = quotient_status(h)
    # no finite field has a non-cyclic unit group, so the scan finds nothing
    assert rep.status in (NONQUOTIENT, UNKNOWN)
    assert rep.q is None


def test_quotient_status_respects_small_bound(z3_named):
    rep = quotient_status(z3_named["BCD"], q_bound=10)
    # 13 lies beyond the bound and the scan is not definitive
    assert rep.status == UNKNOWN
    assert not rep.definitive
