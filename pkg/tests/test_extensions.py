import itertools
from fractions import Fraction

import pytest

from realbrauer.cochains import (CochainError, circle_coboundary, cup_product,
                                 real_cochain_group)
from realbrauer.coefficients import S1, Z2
from realbrauer.cohomology import cohomology
from realbrauer.extensions import (SWAP_WARNING, ExtensionError, brauer_add, brauer_group,
                                   brauer_inverse, ext_inverse, ext_multiply,
                                   extension_group, iota)
from realbrauer.groupoid import cyclic_group, make_swap_double, nerve, point

from conftest import SAMPLES, SAMPLE_IDS

Z2G = cyclic_group([2])
SMALL = [G for G in SAMPLES if extension_group(G).order <= 64]


def _circle_one_cochains(G, denominator):
    """Every Real circle 1-cochain with values in (1/denominator)Z/Z."""
    level = nerve(G, 1)
    reps = level.orbits.reps
    choices = []
    for r in reps:
        if level.orbits.kind[r] == "fixed":
            choices.append([Fraction(0), Fraction(1, 2)])
        else:
            choices.append([Fraction(k, denominator) for k in range(denominator)])
    for values in itertools.product(*choices):
        c = [Fraction(0)] * len(level)
        for r, v in zip(reps, values):
            c[r] = v
            c[level.involution[r]] = (-v) % 1
        yield c


def _delta_coboundaries(G):
    C0 = real_cochain_group(G, 0, Z2)
    out = []
    for coords in itertools.product(*(range(m) for m in C0.moduli)):
        f = C0.cochain(coords)
        out.append([(f[G.src[g]][0] - f[G.tgt[g]][0]) % 2 for g in range(G.n_arrows)])
    return out


def test_iota_sends_one_to_a_half():
    assert iota([0, 1, 2, 3]) == [0, Fraction(1, 2), 0, Fraction(1, 2)]


def test_identity_is_the_trivial_extension():
    X = extension_group(Z2G)
    d, w = X.representative(X.identity())
    assert not any(d) and not any(w)


def test_grading_squares_to_the_nontrivial_twist():
    X = extension_group(Z2G)
    e = X.element((1,), (0,))
    square = X.multiply(e, e)
    assert square == X.element((0,), (1,))
    assert X.element_order(e) == 4
    # cocycle-level statement: (delta, 0)^2 = (0, iota(delta u delta))
    delta = X.delta_representative((1,))
    d, w = X.multiply_cocycles((delta, [0] * 4), (delta, [0] * 4))
    assert not any(d) and w == iota(cup_product(Z2G, delta, delta))


def test_inverse_formula():
    X = extension_group(Z2G)
    delta = X.delta_representative((1,))
    d, w = X.inverse_cocycles((delta, [Fraction(0)] * 4))
    assert d == delta
    assert w == [(-t) % 1 for t in iota(cup_product(Z2G, delta, delta))]
    e = X.element((1,), (0,))
    assert X.inverse(e) == X.element((1,), (1,))
    assert X.inverse(X.identity()) == X.identity()


@pytest.mark.parametrize("G", SMALL, ids=[G.name for G in SMALL])
def test_group_axioms_exhaustively(G):
    X = extension_group(G)
    elems, table = X.cayley_table()
    n = len(elems)
    e = elems.index(X.identity())
    for a in range(n):
        assert table[a][e] == a and table[e][a] == a
        assert any(table[a][b] == e for b in range(n))
    for a, b in itertools.product(range(n), repeat=2):
        assert table[a][b] == table[b][a]
    for a, b, c in itertools.product(range(n), repeat=3):
        assert table[table[a][b]][c] == table[a][table[b][c]]


@pytest.mark.parametrize("G", SMALL, ids=[G.name for G in SMALL])
def test_inverse_and_orders(G):
    X = extension_group(G)
    for e in X.elements():
        assert X.multiply(e, X.inverse(e)) == X.identity()
        assert X.inverse(X.inverse(e)) == e
        assert X.order % X.element_order(e) == 0


@pytest.mark.parametrize("G", [Z2G, cyclic_group([4]), cyclic_group([4], "negation"),
                               SAMPLES[13]], ids=lambda G: G.name)
def test_product_is_well_defined_on_classes(G):
    X = extension_group(G)
    elems = X.elements()
    reps = {e: X.representative(e) for e in elems}
    shifts = [circle_coboundary(G, 1, c) for c in _circle_one_cochains(G, 4)]
    dshifts = _delta_coboundaries(G)
    for e1, e2 in itertools.product(elems, repeat=2):
        expected = X.multiply(e1, e2)
        (d1, w1), (d2, w2) = reps[e1], reps[e2]
        for b, db in itertools.product(shifts, dshifts):
            moved = ([(x + y) % 2 for x, y in zip(d1, db)],
                     [(x + y) % 1 for x, y in zip(w1, b)])
            assert X.normal_form(*moved) == X.normal_form(d1, w1)
            assert X.normal_form(*X.multiply_cocycles(moved, (d2, w2))) == expected


@pytest.mark.parametrize("G", SAMPLES, ids=SAMPLE_IDS)
def test_representatives_are_cocycles_with_the_right_class(G):
    X = extension_group(G)
    for e in X.elements()[:64]:
        d, w = X.representative(e)
        X.check_delta(d)
        X.check_omega(w)
        assert X.normal_form(d, w) == e


@pytest.mark.parametrize("G", SAMPLES, ids=SAMPLE_IDS)
def test_class_groups_match_cohomology(G):
    X = extension_group(G)
    assert sorted(X.delta_orders) == sorted(cohomology(G, 1, Z2).torsion)
    assert sorted(X.omega_orders) == sorted(cohomology(G, 2, S1).torsion)


def test_cocycle_validation():
    X = extension_group(Z2G)
    with pytest.raises(CochainError):
        X.check_delta([0, 1, 1])
    with pytest.raises(CochainError):
        X.check_omega([Fraction(1, 3)] * 4)
    with pytest.raises(CochainError):
        X.check_omega([0, 0, 0, Fraction(1, 4)])


def test_mixing_groupoids_is_rejected():
    a = extension_group(Z2G).identity()
    with pytest.raises(ExtensionError):
        ext_multiply(point(), a, a)


def test_module_level_helpers():
    X = extension_group(Z2G)
    e = X.element((1,), (0,))
    assert ext_multiply(Z2G, e, ext_inverse(Z2G, e)) == X.identity()


# Brauer group -------------------------------------------------------------

@pytest.mark.parametrize("G, total, order, splits", [
    (point(), "Z/8", 8, True),
    (Z2G, "Z/4 + Z/8", 32, False),
    (cyclic_group([4]), "Z/2 + Z/2 + Z/8", 32, True),
    (cyclic_group([4], "negation"), "Z/4 + Z/8", 32, False),
    (cyclic_group([2, 2]), "Z/2 + Z/4 + Z/4 + Z/8", 256, False),
    (make_swap_double(Z2G), "Z/2 + Z/8", 16, True),
], ids=lambda x: getattr(x, "name", str(x)))
def test_brauer_group_values(G, total, order, splits):
    r = brauer_group(G).report()
    assert str(r.total) == total
    assert r.order == order
    assert r.splits is splits


def test_brauer_group_of_the_point_is_cyclic_of_order_eight():
    B = brauer_group(point())
    r = B.report()
    assert r.order == 8 and r.total.is_cyclic
    gen = B.element((1,))
    x, k = gen, 1
    while x != B.identity():
        x = B.add(x, gen)
        k += 1
    assert k == 8


def test_types_cancel_at_a_point():
    B = brauer_group(point())
    for p in range(8):
        assert B.add(B.element((p,)), B.element((8 - p,))) == B.identity()
    assert brauer_inverse(point(), B.element((3,))) == B.element((5,))


@pytest.mark.parametrize("orders", [[2], [4], [2, 2]])
def test_grading_component_is_hom_to_z2(orders):
    r = brauer_group(cyclic_group(orders)).report()
    assert r.grading_component.order == 2 ** len(orders)


def test_brauer_inverse_exhaustively_over_z2():
    B = brauer_group(Z2G)
    for b in B.elements():
        assert brauer_add(Z2G, b, brauer_inverse(Z2G, b)) == B.identity()
        assert B.inverse(B.inverse(b)) == b


def test_type_zero_part_is_the_extension_group():
    B = brauer_group(Z2G)
    X = B.ext
    zero = (0,)
    for e1, e2 in itertools.product(X.elements(), repeat=2):
        s = B.add(B.element(zero, e1.delta, e1.omega), B.element(zero, e2.delta, e2.omega))
        assert s.type_class == zero and s.graded_class == X.multiply(e1, e2)


def test_type_projection_is_a_homomorphism():
    B = brauer_group(cyclic_group([4], "negation"))
    elems = B.elements()
    for a, b in itertools.product(elems[::3], repeat=2):
        s = B.add(a, b)
        assert B.type_function(s) == [(x + y) % 8 for x, y in
                                      zip(B.type_function(a), B.type_function(b))]


def test_swap_double_of_point_keeps_z8_and_warns():
    r = brauer_group(make_swap_double(point())).report()
    assert str(r.type_component) == "Z/8"
    assert r.warnings == [SWAP_WARNING]
    assert brauer_group(point()).report().warnings == []
