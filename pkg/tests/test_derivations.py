"""Derivation modules: Saito certification, explicit bases, restriction."""

import itertools
import random

import pytest

from coinvarr.arrangements import (
    Arrangement,
    braid_arrangement,
    column_counts,
    complement_product,
    delete,
    enumerate_southwest,
    full_arrangement,
    is_essential,
    linear_form,
    linear_forms,
    max_coordinate,
    restrict_coordinate,
    skip_arrangement,
    skip_forms_product,
    staircase,
)
from coinvarr.derivations import (
    CoeffMap,
    Derivation,
    coords_map,
    is_derivation_of,
    ones_map,
    restrict_derivation,
    saito_check,
    skip_basis,
    skip_generators,
    southwest_basis,
    st_ideal,
)
from coinvarr.groebner import Ideal, colon, ideal_equal, is_regular_sequence
from coinvarr.polynomials import (
    AmbientMismatch,
    Polynomial,
    divides,
    matrix_determinant,
    vandermonde,
    variables,
)
from coinvarr.symmetric import coinvariant_generators

EXAMPLE5 = Arrangement(
    5,
    [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4), (2, 5)],
)


def _power_fields(n):
    # tail sums x_i^k d_i for k = 0..n-1, the classic pairwise-difference basis
    fields = []
    for k in range(n):
        fields.append(
            Derivation(
                [Polynomial.variable(n, i) ** k for i in range(1, n + 1)]
            )
        )
    return fields


def _random_poly(rng, n, deg, terms):
    p = Polynomial.zero(n)
    for _ in range(terms):
        exps = [0] * n
        for _ in range(rng.randint(0, deg)):
            exps[rng.randrange(n)] += 1
        p = p + Polynomial.monomial(n, exps, rng.randint(-3, 3))
    return p


def _random_derivation(rng, n, deg, terms):
    return Derivation([_random_poly(rng, n, deg, terms) for _ in range(n)])


def test_derivation_construction_and_arithmetic():
    n = 3
    d1 = Derivation.basis_vector(n, 1)
    e = Derivation.euler(n)
    x1, x2, x3 = variables(n)
    assert e.coeffs == (x1, x2, x3)
    assert (d1 + d1).coeffs[0] == 2 * Polynomial.one(n)
    assert (e - e) == Derivation.zero(n)
    assert not Derivation.zero(n)
    assert (x2 * d1).coeffs == (x2, Polynomial.zero(n), Polynomial.zero(n))
    with pytest.raises(ValueError):
        Derivation([x1, x2])  # three variables, two coefficients
    with pytest.raises(AmbientMismatch):
        Derivation([x1, Polynomial.variable(2, 1), x3])
    with pytest.raises(AmbientMismatch):
        e + Derivation.euler(2)


def test_apply_euler_identity():
    rng = random.Random(11)
    for _ in range(20):
        n = rng.randint(1, 4)
        d = rng.randint(1, 4)
        f = _random_poly(rng, n, d, 4)
        for s, part in enumerate(
            f.homogeneous_part(k) for k in range(f.degree() + 1)
        ):
            assert Derivation.euler(n).apply(part) == s * part


def test_apply_fixtures():
    x1, x2 = variables(2)
    diff = Derivation([Polynomial.one(2), -Polynomial.one(2)])
    rot = Derivation([x2, -x1])
    assert diff.apply(x1 + x2) == Polynomial.zero(2)
    assert rot.apply(x1 + x2) == x2 - x1


def test_apply_leibniz():
    rng = random.Random(13)
    for _ in range(20):
        n = rng.randint(1, 3)
        theta = _random_derivation(rng, n, 2, 3)
        f = _random_poly(rng, n, 3, 3)
        g = _random_poly(rng, n, 3, 3)
        assert theta.apply(f * g) == f * theta.apply(g) + g * theta.apply(f)


def test_degree_and_homogeneity():
    n = 3
    assert Derivation.euler(n).degree() == 1
    assert Derivation.basis_vector(n, 2).degree() == 0
    assert Derivation.zero(n).degree() == -1
    x1, x2, x3 = variables(n)
    mixed = Derivation([x1, Polynomial.one(n), Polynomial.zero(n)])
    assert not mixed.is_homogeneous()
    with pytest.raises(ValueError):
        mixed.degree()


def test_is_derivation_of_fixtures():
    for m, theta in enumerate(_power_fields(3)):
        assert is_derivation_of(theta, braid_arrangement(3)), m
    d1 = Derivation.basis_vector(2, 1)
    assert not is_derivation_of(d1, Arrangement(2, [(0, 1)]))
    x1, x2 = variables(2)
    diff = Derivation([Polynomial.one(2), -Polynomial.one(2)])
    rot = Derivation([x2, -x1])
    assert is_derivation_of(diff, [x1 + x2])
    # the rotational field is tangent to circles, not to this line
    assert not is_derivation_of(rot, [x1 + x2])
    assert is_derivation_of(Derivation.euler(2), [x1 + x2])


def test_membership_matches_q_divisibility():
    # per-form divisibility agrees with divisibility of theta(Q) by Q
    rng = random.Random(17)
    for _ in range(60):
        n = rng.randint(2, 3)
        ambient = sorted(full_arrangement(n).pairs)
        pairs = [p for p in ambient if rng.random() < 0.5]
        A = Arrangement(n, pairs)
        theta = _random_derivation(rng, n, 2, 2)
        q = Polynomial.one(n)
        for p in pairs:
            q = q * linear_form(p, n)
        assert is_derivation_of(theta, A) == divides(q, theta.apply(q))


def test_saito_braid_power_fields():
    fields = _power_fields(3)
    assert saito_check(fields, braid_arrangement(3))
    det = matrix_determinant([f.coeffs for f in fields], 3)
    assert det in (vandermonde(3), -vandermonde(3))


def test_saito_line_fixture():
    x1, x2 = variables(2)
    diff = Derivation([Polynomial.one(2), -Polynomial.one(2)])
    euler = Derivation.euler(2)
    rot = Derivation([x2, -x1])
    assert saito_check([diff, euler], [x1 + x2])
    # rotation misses membership and its determinant spans the wrong line
    assert not saito_check([diff, rot], [x1 + x2])


def test_saito_degenerate_inputs():
    n = 2
    euler = Derivation.euler(n)
    full = full_arrangement(n)
    assert not saito_check([euler, Derivation.zero(n)], full)
    assert not saito_check([euler, euler], full)  # degree sum 2, three forms
    with pytest.raises(ValueError):
        saito_check([euler], full)
    x1, x2 = variables(n)
    bad = Derivation([x1 + x1 * x1, x2])
    with pytest.raises(ValueError):
        saito_check([bad, euler], full)
    # empty arrangement: the bare partials are a basis
    partials = [Derivation.basis_vector(n, k) for k in (1, 2)]
    assert saito_check(partials, Arrangement(n, []))
    # nonessential single coordinate hyperplane
    a = Arrangement(2, [(0, 1)])
    assert saito_check([x1 * Derivation.basis_vector(2, 1), partials[1]], a)


def test_saito_small_positive_fixture():
    # one difference hyperplane: tail sum of partials plus the Euler field
    n = 2
    diag = Derivation([Polynomial.one(n), Polynomial.one(n)])
    assert saito_check([diag, Derivation.euler(n)], braid_arrangement(2))


def test_southwest_basis_running_example():
    basis = southwest_basis(EXAMPLE5)
    x1, x2, x3, x4, x5 = variables(5)
    zero = Polynomial.zero(5)
    expected4 = Derivation(
        [
            zero,
            zero,
            zero,
            (x1 - x4) * (x2 - x4) * (x3 - x4),
            (x1 - x5) * (x2 - x5) * (x3 - x5),
        ]
    )
    assert basis[3] == expected4
    assert basis[0] == Derivation([x1, x2, x3, x4, x5])
    assert basis[4] == Derivation([zero, zero, zero, zero, x2 - x5])
    assert [t.degree() for t in basis] == [1, 2, 2, 3, 1]
    assert saito_check(basis, EXAMPLE5)


def test_southwest_basis_conventions():
    # empty column: bare tail sum of partials
    rho = southwest_basis(braid_arrangement(3))
    one = Polynomial.one(3)
    assert rho[0] == Derivation([one, one, one])
    # smallest full arrangement
    x1, x2 = variables(2)
    rho = southwest_basis(full_arrangement(2))
    assert rho[0] == Derivation([x1, x2])
    assert rho[1] == Derivation([Polynomial.zero(2), x2 * (x1 - x2)])
    with pytest.raises(ValueError):
        southwest_basis(Arrangement(2, [(0, 2)]))


def test_southwest_basis_degrees_match_column_counts():
    for n in range(1, 5):
        for A in enumerate_southwest(n):
            degs = [t.degree() for t in southwest_basis(A)]
            assert degs == list(column_counts(A))


def test_southwest_basis_certified_exhaustively_small():
    for n in range(1, 4):
        for A in enumerate_southwest(n):
            assert saito_check(southwest_basis(A), A), A


def test_skip_basis_fixtures():
    n = 3
    basis = skip_basis((), n)
    assert basis[0] == Derivation.euler(n)
    x1, x2 = variables(2)
    zero = Polynomial.zero(2)
    b2 = skip_basis((2,), 2)
    assert b2[0] == Derivation.euler(2)
    assert b2[1] == Derivation([zero, x1 - x2])


def test_skip_basis_degrees_and_certification():
    for n in range(1, 5):
        for r in range(0, n + 1):
            for skips in itertools.combinations(range(1, n + 1), r):
                degs = [t.degree() for t in skip_basis(skips, n)]
                assert degs == list(staircase(skips, n))
    for n in range(1, 4):
        for r in range(0, n + 1):
            for skips in itertools.combinations(range(1, n + 1), r):
                assert saito_check(
                    skip_basis(skips, n), skip_arrangement(skips, n)
                ), (n, skips)


def test_restrict_derivation_fixtures():
    for n in (2, 3, 4):
        for p in range(1, n + 1):
            assert restrict_derivation(Derivation.euler(n), p) == Derivation.euler(
                n - 1
            )
    x1, x2 = variables(2)
    theta = Derivation([Polynomial.zero(2), x2 * (x1 - x2)])
    assert restrict_derivation(theta, 2) == Derivation.zero(1)
    with pytest.raises(ValueError):
        restrict_derivation(Derivation.basis_vector(2, 2), 2)
    with pytest.raises(ValueError):
        restrict_derivation(Derivation.euler(2), 3)


def test_restriction_lands_in_restricted_module():
    # running example: pushing the basis onto x_2 = 0 stays tangent there
    R = restrict_coordinate(EXAMPLE5, 2)
    for theta in southwest_basis(EXAMPLE5):
        eta = restrict_derivation(theta, 2)
        assert is_derivation_of(eta, R)
        if eta:
            assert eta.degree() == theta.degree()
    # and exhaustively for small essential southwest arrangements
    for n in (2, 3):
        for A in enumerate_southwest(n, essential_only=True):
            p = max_coordinate(A)
            Ap = restrict_coordinate(A, p)
            for theta in southwest_basis(A):
                assert is_derivation_of(restrict_derivation(theta, p), Ap)


def test_multiplication_by_form_embeds_smaller_module():
    # multiplying by the removed form carries tangent fields of the
    # deletion into tangent fields of the larger arrangement
    for n in (2, 3):
        for A in enumerate_southwest(n, essential_only=True):
            p = max_coordinate(A)
            B = delete(A, (0, p))
            xp = Polynomial.variable(n, p)
            for theta in southwest_basis(B):
                assert is_derivation_of(xp * theta, A)
    # same for the skip family inside the full arrangement
    for skips in ((), (2,), (3,), (2, 3)):
        f = skip_forms_product(skips, 3)
        for theta in skip_basis(skips, 3):
            assert is_derivation_of(f * theta, full_arrangement(3))


def test_coeff_map_basics():
    n = 2
    x1, x2 = variables(n)
    i_map = ones_map(n)
    a_map = coords_map(n)
    assert i_map.degree == 0
    assert a_map.degree == 1
    assert i_map(Derivation.euler(n)) == x1 + x2
    assert a_map(Derivation.euler(n)) == x1 * x1 + x2 * x2
    rot = Derivation([x2, -x1])
    assert i_map(rot) == x2 - x1
    with pytest.raises(ValueError):
        CoeffMap([x1, Polynomial.one(n)])  # mixed degrees
    with pytest.raises(ValueError):
        CoeffMap([Polynomial.zero(n), Polynomial.zero(n)])
    with pytest.raises(ValueError):
        CoeffMap([x1])


def test_st_ideal_full_arrangement_is_coinvariant_ideal():
    for n in (1, 2, 3):
        A = full_arrangement(n)
        ideal = st_ideal(A, ones_map(n), southwest_basis(A))
        assert ideal_equal(ideal, Ideal(n, coinvariant_generators(n)))


def test_st_ideal_braid_with_coords_map():
    for n in (2, 3):
        ideal = st_ideal(braid_arrangement(n), coords_map(n), _power_fields(n))
        assert ideal_equal(ideal, Ideal(n, coinvariant_generators(n)))


def test_st_ideal_line_fixture_infinite():
    x1, x2 = variables(2)
    diff = Derivation([Polynomial.one(2), -Polynomial.one(2)])
    ideal = st_ideal([x1 + x2], ones_map(2), [diff, Derivation.euler(2)])
    assert ideal_equal(ideal, Ideal(2, [x1 + x2]))
    assert not ideal.is_artinian()
    assert not ideal.is_unit()


def test_st_ideal_nonessential_is_unit():
    x1 = Polynomial.variable(2, 1)
    a = Arrangement(2, [(0, 1)])
    basis = [x1 * Derivation.basis_vector(2, 1), Derivation.basis_vector(2, 2)]
    assert st_ideal(a, ones_map(2), basis).is_unit()


def test_st_ideal_rejects_uncertified_basis():
    n = 2
    with pytest.raises(ValueError):
        st_ideal(
            full_arrangement(n),
            ones_map(n),
            [Derivation.euler(n), Derivation.euler(n)],
        )


def test_skip_generators_fixtures():
    x1, x2 = variables(2)
    assert skip_generators((2,), 2) == [x1 + x2, x1 - x2]
    for n in (1, 2, 3, 4):
        gens = skip_generators((), n)
        assert gens[0] == sum(variables(n), Polynomial.zero(n))


def test_skip_generators_are_mapped_basis():
    for n in range(1, 5):
        for r in range(0, n + 1):
            for skips in itertools.combinations(range(1, n + 1), r):
                mapped = [ones_map(n)(t) for t in skip_basis(skips, n)]
                assert mapped == skip_generators(skips, n)


def test_skip_generators_colon_instance():
    # one instance of the generating-set theorem; the acceptance suite
    # sweeps every skip set at n <= 4
    n, skips = 3, (2,)
    gens = skip_generators(skips, n)
    assert is_regular_sequence(gens, n)
    target = colon(
        Ideal(n, coinvariant_generators(n)), skip_forms_product(skips, n)
    )
    assert ideal_equal(Ideal(n, gens), target)
    # the empty skip set recovers the coinvariant ideal itself
    assert ideal_equal(
        Ideal(n, skip_generators((), n)), Ideal(n, coinvariant_generators(n))
    )


def test_ones_ideal_contains_coinvariants_and_equals_colon():
    # over both families at n = 3: the mapped ideal contains every
    # elementary generator and equals the colon by the complement product
    n = 3
    coinv = Ideal(n, coinvariant_generators(n))
    cases = []
    for A in enumerate_southwest(n):
        cases.append((A, southwest_basis(A)))
    for r in range(0, n + 1):
        for skips in itertools.combinations(range(1, n + 1), r):
            cases.append((skip_arrangement(skips, n), skip_basis(skips, n)))
    for A, basis in cases:
        ideal = st_ideal(A, ones_map(n), basis)
        for g in coinv.gens:
            assert ideal.contains(g)
        assert ideal_equal(ideal, colon(coinv, complement_product(A)))
        if not is_essential(A):
            assert ideal.is_unit()
