import itertools

import pytest

from quiverforge import (
    ConsistencyError,
    NonPolynomialBehavior,
    check_galois_descent,
    count_abs_indecomposable,
    count_indecomposable,
    count_iso_classes,
    count_report,
    galois_descent_I,
    hua_identity_check,
    iso_class_representatives,
    kac_polynomial,
    make_field,
)
from quiverforge.counting import field_from_order, moebius, prime_power, prime_powers
from quiverforge.ffield import enumerate_gl
from quiverforge.reps import all_representations
from quiverforge.series import geometric_inverse_power


def brute_orbit_count(quiver, d, q):
    """Independent oracle: explicit orbit enumeration under the full group."""
    field = make_field(*prime_power(q))
    group = [
        combo
        for combo in itertools.product(*[list(enumerate_gl(field, dv)) for dv in d])
    ]
    inverses = [tuple(g.inverse() for g in combo) for combo in group]
    seen = set()
    orbits = 0
    for w in all_representations(quiver, field, d):
        key = w.entry_key()
        if key in seen:
            continue
        orbits += 1
        for combo, inv in zip(group, inverses):
            maps = []
            for idx, a in enumerate(quiver.arrows):
                h = quiver.vertex_index[a.head]
                t = quiver.vertex_index[a.tail]
                maps.append(combo[h].mul(w.maps[idx]).mul(inv[t]))
            seen.add(tuple(x for m in maps for x in m.flat()))
    return orbits


# -- iso-class counts


@pytest.mark.parametrize("q", [2, 3, 5])
def test_jordan_dim1_count_is_q(jordan, q):
    assert count_iso_classes(jordan, (1,), q) == q


def test_jordan_dim2_count_matches_orbit_oracle(jordan):
    assert count_iso_classes(jordan, (2,), 2) == 6
    assert brute_orbit_count(jordan, (2,), 2) == 6
    assert count_iso_classes(jordan, (2,), 3) == brute_orbit_count(jordan, (2,), 3) == 12


def test_kronecker_count_example(kron2):
    # zero class plus one class per point of the projective line
    assert count_iso_classes(kron2, (1, 1), 2) == 1 + (2 + 1)
    assert brute_orbit_count(kron2, (1, 1), 2) == 4


@pytest.mark.parametrize(
    "name,d,q",
    [
        ("jordan", (2,), 2),
        ("jordan", (2,), 3),
        ("kron2", (1, 1), 2),
        ("kron2", (1, 1), 4),
        ("kron2", (2, 1), 2),
        ("a2", (1, 1), 3),
        ("a2", (2, 1), 2),
    ],
)
def test_orbit_partition_agrees_with_burnside(name, d, q, jordan, kron2, a2):
    quiver = {"jordan": jordan, "kron2": kron2, "a2": a2}[name]
    report = count_report(quiver, d, q, cross_check=True)
    assert report.method == "orbit-partition+burnside"
    assert 0 <= report.absolutely_indecomposable <= report.indecomposable <= report.iso_classes


def test_representatives_are_lex_minimal(jordan):
    reps = iso_class_representatives(jordan, (2,), 2)
    field = make_field(2)
    group = [(g, g.inverse()) for g in enumerate_gl(field, 2)]
    for w in reps:
        orbit_keys = []
        for g, ginv in group:
            image = g.mul(w.maps[0]).mul(ginv)
            orbit_keys.append(image.flat())
        assert min(orbit_keys) == w.entry_key()
    # deterministic and sorted
    keys = [w.entry_key() for w in reps]
    assert keys == sorted(keys)


def test_indecomposable_counts_examples(jordan, kron2, a2):
    assert count_indecomposable(jordan, (2,), 2) == 3
    assert count_abs_indecomposable(jordan, (2,), 2) == 2
    assert count_indecomposable(kron2, (1, 1), 3) == 4
    assert count_abs_indecomposable(kron2, (1, 1), 3) == 4
    assert count_indecomposable(a2, (1, 1), 2) == 1
    assert count_abs_indecomposable(a2, (1, 1), 2) == 1


def test_count_zero_off_roots(a2):
    # (2,1) is not a root of the A_2 system
    assert count_abs_indecomposable(a2, (2, 1), 2) == 0
    assert count_abs_indecomposable(a2, (2, 1), 3) == 0


@pytest.mark.parametrize("d", [(1, 1), (2, 1)])
@pytest.mark.parametrize("q", [2, 3])
def test_orientation_invariance_of_A(kron2, a2, d, q):
    for quiver in (kron2, a2):
        assert count_abs_indecomposable(quiver, d, q) == count_abs_indecomposable(
            quiver.opposite(), d, q
        )


@pytest.mark.parametrize("q", [2, 3])
def test_weyl_invariance_of_A(kron2, q):
    c = kron2.cartan()
    assert c.reflect(0, (0, 1)) == (2, 1)
    assert count_abs_indecomposable(kron2, (2, 1), q) == count_abs_indecomposable(
        kron2, (0, 1), q
    )


# -- Kac polynomials


def test_kac_polynomial_examples(jordan, kron2, a2):
    assert kac_polynomial(jordan, (1,)).integer_coefficients() == [0, 1]
    assert kac_polynomial(jordan, (2,)).integer_coefficients() == [0, 1]
    assert kac_polynomial(kron2, (1, 1)).integer_coefficients() == [1, 1]
    assert kac_polynomial(kron2, (2, 1)).integer_coefficients() == [1]
    assert kac_polynomial(a2, (1, 1)).integer_coefficients() == [1]


def test_kac_nonnegative_for_loop_free_indivisible(kron2, a2):
    for quiver, d in [(kron2, (1, 1)), (kron2, (2, 1)), (a2, (1, 1))]:
        coeffs = kac_polynomial(quiver, d).integer_coefficients()
        assert all(c >= 0 for c in coeffs)


def test_kac_raises_bound_once(kron2):
    # a genuinely quadratic count forces the one-time bound bump (e_b = 1)
    poly = kac_polynomial(kron2, (1, 1), a_fn=lambda d, q: q * q)
    assert poly.integer_coefficients() == [0, 0, 1]


def test_kac_detects_non_polynomial_counts(kron2):
    with pytest.raises(NonPolynomialBehavior) as info:
        kac_polynomial(kron2, (1, 1), a_fn=lambda d, q: 2**q)
    assert info.value.evaluations  # carries the raw data


# -- Galois descent


def test_descent_examples(jordan):
    assert galois_descent_I(jordan, (1,), 5) == 5
    assert galois_descent_I(jordan, (2,), 2) == 3
    assert check_galois_descent(jordan, (2,), 2) == 3
    assert check_galois_descent(jordan, (2,), 3) == 6
    assert check_galois_descent(jordan, (3,), 2) == 4


def test_descent_equals_A_for_indivisible(kron2, a2):
    for quiver, d in [(kron2, (1, 1)), (kron2, (2, 1)), (a2, (1, 1))]:
        for q in (2, 3):
            assert galois_descent_I(quiver, d, q) == count_abs_indecomposable(quiver, d, q)


def test_descent_disagreement_is_hard_error(jordan):
    with pytest.raises(ConsistencyError):
        check_galois_descent(jordan, (2,), 2, a_fn=lambda d, q: 0)


def test_moebius_values():
    assert [moebius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


def test_prime_power_stream():
    stream = prime_powers()
    assert [next(stream) for _ in range(8)] == [2, 3, 4, 5, 7, 8, 9, 11]
    assert prime_power(12) is None
    assert prime_power(27) == (3, 3)
    assert field_from_order(9).q == 9


# -- the generating identity


def test_hua_degree_zero_trivial(jordan):
    assert hua_identity_check(jordan, 2, 0) == 0


def test_hua_matches_hand_expansion(jordan):
    # (1-X)^(-2) (1-X^2)^(-3) has X^2 coefficient 3 + 3 = 6 = M_2(2)
    rhs = geometric_inverse_power((1,), 2, 1, 2).mul(geometric_inverse_power((2,), 3, 1, 2))
    assert rhs.coefficient((2,)) == 6
    assert count_iso_classes(jordan, (2,), 2) == 6
    assert hua_identity_check(jordan, 2, 2) == 0


@pytest.mark.parametrize(
    "name,q,degree",
    [("jordan", 2, 2), ("jordan", 3, 2), ("jordan", 2, 3), ("kron2", 2, 2), ("kron2", 3, 2)],
)
def test_hua_zero_discrepancy(name, q, degree, jordan, kron2):
    quiver = {"jordan": jordan, "kron2": kron2}[name]
    assert hua_identity_check(quiver, q, degree) == 0
