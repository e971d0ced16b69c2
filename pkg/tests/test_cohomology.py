from math import gcd

import pytest

from realbrauer.cochains import twisted_boundary
from realbrauer.coefficients import RealCoefficient, S1, Z, Z01, Z2, Z8
from realbrauer.cohomology import (BudgetExceeded, EngineConfig, brute_force_cohomology,
                                   circle_via_shift, cohomology, fold_double,
                                   invariant_real_functions)
from realbrauer.groupoid import (cyclic_group, make_swap_double, nerve, pair_groupoid,
                                 point)
from realbrauer.invariants import AbelianGroupInvariants

from conftest import FINITE_COEFFS, SAMPLES, SAMPLE_IDS, Z4, Z4_NEG

ALL_COEFFS = FINITE_COEFFS + [Z8, Z, Z01, S1]
FREE = [G for G in SAMPLES if all(G.involution_obj[x] != x for x in range(G.n_objects))]


@pytest.mark.parametrize("n", range(4))
def test_z2_with_z2_coefficients(n):
    assert str(cohomology(cyclic_group([2]), n, Z2)) == "Z/2"


@pytest.mark.parametrize("A", ALL_COEFFS, ids=str)
def test_point(A):
    G = point()
    assert cohomology(G, 0, A) == invariant_real_functions(G, A)
    for n in (1, 2, 3):
        assert cohomology(G, n, A).is_trivial


@pytest.mark.parametrize("A, text", [(Z4_NEG, "Z/2"), (Z01, "0"), (S1, "Z/2"),
                                     (Z8, "Z/8"), (Z, "Z")])
def test_point_degree_zero_values(A, text):
    assert str(cohomology(point(), 0, A)) == text


def test_swap_double_of_point_in_degree_zero():
    D = make_swap_double(point())
    assert str(cohomology(D, 0, Z8)) == "Z/8"
    assert str(cohomology(D, 0, S1)) == "S1"


@pytest.mark.parametrize("orders, expected", [([2], 2), ([4], 2), ([2, 2], 4), ([3], 1)])
def test_real_picard_of_groups_with_trivial_involution(orders, expected):
    assert cohomology(cyclic_group(orders), 1, S1).order == expected


@pytest.mark.parametrize("G", SAMPLES, ids=SAMPLE_IDS)
@pytest.mark.parametrize("A", ALL_COEFFS, ids=str)
def test_degree_zero_is_invariant_functions(G, A):
    assert cohomology(G, 0, A) == invariant_real_functions(G, A)


@pytest.mark.parametrize("G", SAMPLES, ids=SAMPLE_IDS)
@pytest.mark.parametrize("A", FINITE_COEFFS, ids=str)
def test_matches_brute_force(G, A):
    for n in range(3):
        assert cohomology(G, n, A) == brute_force_cohomology(G, n, A)


def test_brute_force_examples():
    assert str(brute_force_cohomology(point(), 0, Z4_NEG)) == "Z/2"
    D = make_swap_double(cyclic_group([2]))
    for n in range(3):
        assert str(brute_force_cohomology(D, n, Z2)) == "Z/2"


def test_brute_force_refuses_over_budget():
    with pytest.raises(BudgetExceeded):
        brute_force_cohomology(cyclic_group([4]), 2, Z4, budget=100)


def test_brute_force_needs_finite_coefficients():
    with pytest.raises(ValueError):
        brute_force_cohomology(point(), 0, Z)


def test_degree_bound():
    with pytest.raises(BudgetExceeded):
        cohomology(point(), 5, Z2)
    assert cohomology(point(), 5, Z2, EngineConfig(max_degree=6)).is_trivial
    with pytest.raises(ValueError):
        cohomology(point(), -1, Z2)


@pytest.mark.parametrize("H", [point(), cyclic_group([2]), pair_groupoid(2)],
                         ids=lambda H: H.name)
@pytest.mark.parametrize("A", [Z2, Z4, Z, S1], ids=str)
def test_folding(H, A):
    D = make_swap_double(H)
    for n in range(3):
        assert cohomology(D, n, A) == fold_double(H, n, A)


def test_fold_examples():
    assert str(fold_double(point(), 0, Z8)) == "Z/8"
    assert str(fold_double(cyclic_group([2]), 2, Z2)) == "Z/2"
    for n in (1, 2, 3):
        assert fold_double(pair_groupoid(2), n, Z).is_trivial


@pytest.mark.parametrize("H", [cyclic_group([3]), cyclic_group([4]), cyclic_group([2, 2])],
                         ids=lambda H: H.name)
def test_folding_larger_groups(H):
    D = make_swap_double(H)
    for A in (Z2, Z4, Z):
        for n in range(3):
            assert cohomology(D, n, A) == fold_double(H, n, A)


@pytest.mark.parametrize("orders", [[2], [3], [4], [2, 2]])
def test_ordinary_circle_is_integral_shift(orders):
    H = cyclic_group(orders)
    for n in (1, 2):
        assert fold_double(H, n, S1) == fold_double(H, n + 1, Z)


@pytest.mark.parametrize("G", [G for G in SAMPLES if G.has_trivial_involution],
                         ids=[G.name for G in SAMPLES if G.has_trivial_involution])
def test_circle_on_trivial_involution_is_z2_cohomology(G):
    # circle cochains over a tau-trivial groupoid take values in {+-1}
    for n in range(3):
        assert cohomology(G, n, S1) == cohomology(G, n, Z2)


@pytest.mark.parametrize("G", FREE, ids=[G.name for G in FREE])
def test_circle_matches_shift_for_free_involutions(G):
    for n in (1, 2):
        assert cohomology(G, n, S1) == circle_via_shift(G, n)


def test_shift_fails_when_the_involution_has_fixed_points():
    G = cyclic_group([2])
    assert cohomology(G, 1, S1).order == 2
    assert circle_via_shift(G, 1).is_trivial


def _torsion_count(X: AbelianGroupInvariants, m: int) -> int:
    """|X[m]|."""
    out = m ** X.circles
    for d in X.torsion:
        out *= gcd(d, m)
    return out


def _cotorsion_count(X: AbelianGroupInvariants, m: int) -> int:
    """|X / mX|."""
    out = m ** X.rank
    for d in X.torsion:
        out *= gcd(d, m)
    return out


@pytest.mark.parametrize("G", FREE, ids=[G.name for G in FREE])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_finite_approximations_of_the_circle(G, k):
    # 0 -> Z/2^k (sign) -> S1 -> S1 -> 0 is exact on Real cochains when tau is free
    m = 2 ** k
    A = RealCoefficient.cyclic(m, -1)
    for n in (1, 2):
        lhs = cohomology(G, n, A).order
        rhs = _torsion_count(cohomology(G, n, S1), m) * \
            _cotorsion_count(cohomology(G, n - 1, S1), m)
        assert lhs == rhs


@pytest.mark.parametrize("G", SAMPLES, ids=SAMPLE_IDS)
def test_twisted_boundary_squares_to_zero(G):
    for n in range(2):
        lower, upper = twisted_boundary(G, n), twisted_boundary(G, n + 1)
        orbits = nerve(G, n).orbits
        for i, row in enumerate(lower):
            m = 2 if orbits.kind[orbits.reps[i]] == "fixed" else 0
            for j in range(len(upper[0])):
                v = sum(row[t] * upper[t][j] for t in range(len(upper)))
                assert (v % m if m else v) == 0
