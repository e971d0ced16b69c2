import hypothesis.strategies as st
import pytest
from hypothesis import given

from realbrauer.groupoid import (GroupoidError, cyclic_group, face, face_simplex,
                                 group_groupoid, make_orientifold, make_swap_double,
                                 nerve, pair_groupoid, point, validate_tables)

from conftest import SAMPLES, SAMPLE_IDS


def test_point_is_valid():
    G = point()
    assert (G.n_objects, G.n_arrows) == (1, 1)
    assert G.has_trivial_involution


def test_z2_is_valid():
    G = cyclic_group([2])
    assert (G.n_objects, G.n_arrows) == (1, 2)


def test_z4_negation_fixes_0_and_2():
    G = cyclic_group([4], "negation")
    fixed = [g for g in range(4) if G.involution_arr[g] == g]
    assert fixed == [0, 2]
    assert G.involution_arr[1] == 3


def _z2_tables():
    return dict(n_objects=1, src=[0, 0], tgt=[0, 0], compose_table=[[0, 1], [1, 0]],
                inverse=[0, 1], unit=[0], involution_obj=[0], involution_arr=[0, 1])


def test_explicit_tables_validate():
    validate_tables(**_z2_tables())


@pytest.mark.parametrize("change, message", [
    ({"compose_table": [[0, 1], [1, -1]]}, "dangling composition"),
    ({"compose_table": [[0, 1], [1, 1]]}, "not a unit"),
    ({"involution_arr": [1, 0]}, "unit"),
    ({"involution_arr": [0, 0]}, "involutive permutation"),
    ({"inverse": [0, 0]}, "not a unit"),
])
def test_axiom_violations_are_reported(change, message):
    tables = _z2_tables()
    tables.update(change)
    with pytest.raises(GroupoidError, match=message):
        validate_tables(**tables)


def test_non_associative_table_is_rejected():
    # a loop (quasigroup with identity) of order 5 that is not a group
    table = [[0, 1, 2, 3, 4],
             [1, 0, 3, 4, 2],
             [2, 4, 0, 1, 3],
             [3, 2, 4, 0, 1],
             [4, 3, 1, 2, 0]]
    with pytest.raises(GroupoidError, match="not associative"):
        group_groupoid(table)


def test_involution_that_is_not_a_homomorphism_is_rejected():
    # on Z3 the swap 1 <-> 2 is an automorphism, but 0 <-> 1 is not
    with pytest.raises(GroupoidError):
        cyclic_group([3], involution=[1, 0, 2])


def test_involution_must_be_a_homomorphism_on_composites():
    # on Z2 x Z2 exchanging (0,1) and (1,1) is an automorphism
    cyclic_group([2, 2], involution=[0, 3, 2, 1])
    # on Z4 exchanging 2 and 3 is not
    with pytest.raises(GroupoidError, match="homomorphism"):
        cyclic_group([4], involution=[0, 1, 3, 2])


def test_orientifold_two_points():
    G = make_orientifold([1, 0], cyclic_group([2]), [[0, 1], [1, 0]])
    assert (G.n_objects, G.n_arrows) == (2, 4)


def test_orientifold_over_a_point_recovers_the_group():
    H = cyclic_group([4], "negation")
    G = make_orientifold([0], H, [[0, 0, 0, 0]], allow_non_free=True)
    assert G.n_objects == 1
    assert G.compose_table == H.compose_table
    assert G.involution_arr == H.involution_arr


def test_orientifold_rejects_non_free_actions():
    with pytest.raises(GroupoidError, match="action not free"):
        make_orientifold([1, 0], cyclic_group([2]), [[0, 0], [1, 1]])


def test_orientifold_non_free_flag():
    G = make_orientifold([1, 0], cyclic_group([2]), [[0, 0], [1, 1]], allow_non_free=True)
    assert G.n_arrows == 4


def test_orientifold_rejects_non_equivariant_actions():
    # 0 and 1 are exchanged by the involution, 2 and 3 are fixed, Z2 moves 0 <-> 2
    with pytest.raises(GroupoidError, match="equivariant"):
        make_orientifold([1, 0, 2, 3], cyclic_group([2]), [[0, 2], [1, 3], [2, 0], [3, 1]])


def test_swap_double_of_point_is_the_real_space_s01():
    G = make_swap_double(point())
    assert G.n_objects == 2 and G.n_arrows == 2
    assert G.involution_obj == (1, 0)
    assert all(len(nerve(G, n)) == 2 for n in range(5))


def test_swap_double_of_z2():
    G = make_swap_double(cyclic_group([2]))
    assert (G.n_objects, G.n_arrows) == (2, 4)
    assert all(G.involution_arr[g] != g for g in range(4))


def test_nerve_sizes():
    G = cyclic_group([3])
    assert [len(nerve(G, n)) for n in range(5)] == [1, 3, 9, 27, 81]
    assert len(nerve(pair_groupoid(2), 2)) == 8
    assert [len(nerve(point(), n)) for n in range(5)] == [1] * 5


def test_face_examples():
    G = cyclic_group([2])
    assert face_simplex(G, (1, 1), 1) == (0,)
    P = pair_groupoid(2)
    for g in range(P.n_arrows):
        assert face_simplex(P, (g,), 0) == (P.src[g],)
        assert face_simplex(P, (g,), 1) == (P.tgt[g],)


def test_face_index_out_of_range():
    with pytest.raises((GroupoidError, ValueError)):
        face(point(), 1, 3)


@pytest.mark.parametrize("G", SAMPLES, ids=SAMPLE_IDS)
def test_levels_zero_and_one(G):
    assert len(nerve(G, 0)) == G.n_objects
    assert len(nerve(G, 1)) == G.n_arrows


@pytest.mark.parametrize("G", SAMPLES, ids=SAMPLE_IDS)
def test_nerve_involution_and_composability(G):
    for n in range(1, 4):
        level = nerve(G, n)
        for i, s in enumerate(level.simplices):
            for a, b in zip(s, s[1:]):
                assert G.src[a] == G.tgt[b]
            j = level.involution[i]
            assert level.involution[j] == i
            assert level.simplices[j] == tuple(G.involution_arr[g] for g in s)


@pytest.mark.parametrize("G", SAMPLES, ids=SAMPLE_IDS)
def test_faces_commute_with_involutions(G):
    for n in range(0, 4):
        lower, upper = nerve(G, n), nerve(G, n + 1)
        for k in range(n + 2):
            f = face(G, n, k)
            for y in range(len(upper)):
                assert f[upper.involution[y]] == lower.involution[f[y]]


@pytest.mark.parametrize("G", SAMPLES, ids=SAMPLE_IDS)
def test_simplicial_identities(G):
    top = 4 if G.n_arrows <= 4 else 3
    for n in range(0, top - 1):
        # faces from level n+2 to n+1 to n
        for k in range(n + 3):
            for j in range(k):
                fk, fj_low = face(G, n + 1, k), face(G, n, j)
                fj, fk_low = face(G, n + 1, j), face(G, n, k - 1)
                for y in range(len(nerve(G, n + 2))):
                    assert fj_low[fk[y]] == fk_low[fj[y]]


@given(st.permutations(range(4)))
def test_relabelled_group_tables_validate(perm):
    # conjugating the Z4 table by a permutation of the elements gives a valid group
    base = cyclic_group([4]).compose_table
    inv = [perm.index(i) for i in range(4)]
    table = [[perm[base[inv[a]][inv[b]]] for b in range(4)] for a in range(4)]
    G = group_groupoid(table)
    assert [len(nerve(G, n)) for n in range(3)] == [1, 4, 16]


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
def test_corrupted_tables_are_rejected(a, b, c):
    table = [list(r) for r in cyclic_group([4]).compose_table]
    if table[a][b] == c:
        return
    table[a][b] = c
    with pytest.raises(GroupoidError):
        validate_tables(1, [0] * 4, [0] * 4, table, [0, 3, 2, 1], [0], [0], [0, 1, 2, 3])
