import hypothesis.strategies as st
import pytest
import sympy
from hypothesis import given
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from realbrauer.invariants import AbelianGroupInvariants, from_prime_power_counts
from realbrauer.snf import (kernel_basis, kernel_mod, matmul, smith_normal_form,
                            solve, subquotient)


def matrices(max_rows=5, max_cols=5, bound=12):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n),
                               min_size=m, max_size=m)))


def det(M):
    return int(sympy.Matrix(M).det())


@pytest.mark.parametrize("M, diag", [
    ([[2, 0], [0, 3]], [1, 6]),
    ([[0, 0], [0, 0]], [0, 0]),
    ([[1, 0], [0, 1]], [1, 1]),
    ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], [2, 6, 12]),
])
def test_snf_examples(M, diag):
    s = smith_normal_form(M)
    assert s.diagonal == diag


@given(matrices())
def test_snf_is_a_valid_decomposition(M):
    m, n = len(M), len(M[0])
    s = smith_normal_form(M)
    assert matmul(matmul(s.U, M), s.V, inner=n) == s.D
    assert abs(det(s.U)) == 1 and abs(det(s.V)) == 1
    for i in range(m):
        for j in range(n):
            if i != j:
                assert s.D[i][j] == 0
    d = s.diagonal
    for a, b in zip(d, d[1:]):
        assert a >= 0 and (b == 0 if a == 0 else b % a == 0)


@given(matrices(4, 4))
def test_snf_matches_sympy(M):
    ours = smith_normal_form(M).diagonal
    theirs = sympy_snf(sympy.Matrix(M), domain=sympy.ZZ)
    k = min(len(M), len(M[0]))
    assert ours == [abs(int(theirs[i, i])) for i in range(k)]


def test_snf_has_no_overflow():
    big = 10 ** 30
    s = smith_normal_form([[big, 0], [0, big + 1]])
    assert s.diagonal == [1, big * (big + 1)]


@given(matrices())
def test_kernel_basis(M):
    n = len(M[0])
    K = kernel_basis(M, n)
    for v in K:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in M)
    assert len(K) == n - smith_normal_form(M).rank


@given(matrices(), st.lists(st.integers(-5, 5), min_size=5, max_size=5))
def test_solve_round_trip(M, x):
    n = len(M[0])
    x = x[:n] + [0] * (n - len(x))
    b = [sum(a * xi for a, xi in zip(row, x)) for row in M]
    y = solve(M, b, n)
    assert y is not None
    assert [sum(a * yi for a, yi in zip(row, y)) for row in M] == b


def test_solve_reports_no_solution():
    assert solve([[2]], [1], 1) is None


@given(matrices(3, 4, 6), st.lists(st.sampled_from([2, 3, 4, 6]), min_size=3, max_size=3))
def test_kernel_mod_brute_force(M, moduli):
    n = len(M[0])
    moduli = moduli[:len(M)]
    K = kernel_mod(M, n, moduli)
    # every basis vector is a solution
    for v in K:
        for row, m in zip(M, moduli):
            assert sum(a * x for a, x in zip(row, v)) % m == 0
    # the lattice has the right index: count solutions in a box of side L
    import itertools
    L = 12
    count = sum(1 for x in itertools.product(range(L), repeat=n)
                if all(sum(a * xi for a, xi in zip(row, x)) % m == 0
                       for row, m in zip(M, moduli)))
    sq = subquotient(n, K, [[L if i == j else 0 for i in range(n)] for j in range(n)])
    assert count == AbelianGroupInvariants.from_orders(sq.orders).order


def test_subquotient_coordinates_round_trip():
    # Z^2 / <(2, 0), (0, 3)>
    sq = subquotient(2, [[1, 0], [0, 1]], [[2, 0], [0, 3]])
    assert sorted(sq.orders) == [6]
    for v in ([1, 0], [0, 1], [5, 7]):
        c = sq.coordinates(v)
        w = sq.representative(c)
        assert sq.coordinates(w) == c


@pytest.mark.parametrize("orders, text", [
    ([2, 3], "Z/6"),
    ([4, 2], "Z/2 + Z/4"),
    ([0, 0, 2], "Z^2 + Z/2"),
    ([], "0"),
    ([1, 1], "0"),
])
def test_invariants_canonical_text(orders, text):
    assert str(AbelianGroupInvariants.from_orders(orders)) == text


@given(st.lists(st.sampled_from([2, 3, 4, 8, 9]), max_size=4))
def test_prime_power_counts_recover_the_group(orders):
    G = AbelianGroupInvariants.from_orders(orders)
    counts = {}
    for p in (2, 3):
        seq = []
        for k in range(1, 6):
            c = 1
            for m in orders:
                # |Z/m [p^k]| = gcd(m, p^k)
                from math import gcd
                c *= gcd(m, p ** k)
            seq.append(c)
        counts[p] = seq
    assert from_prime_power_counts(counts) == G
