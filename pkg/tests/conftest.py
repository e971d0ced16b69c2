from pathlib import Path

import hypothesis
import pytest

from realbrauer.coefficients import RealCoefficient, Z2
from realbrauer.groupoid import (cyclic_group, make_orientifold, make_swap_double,
                                 pair_groupoid, point, real_space)

hypothesis.settings.register_profile("default", max_examples=40, deadline=None)
hypothesis.settings.load_profile("default")


def sample_groupoids():
    """Every sample Real groupoid with at most 8 arrows."""
    z2 = cyclic_group([2])
    return [
        point(),
        z2,
        cyclic_group([3]),
        cyclic_group([3], "negation"),
        cyclic_group([4]),
        cyclic_group([4], "negation"),
        cyclic_group([2, 2]),
        cyclic_group([2, 2], "swap"),
        pair_groupoid(2),
        pair_groupoid(2, [1, 0]),
        real_space([1, 0], name="S^{0,1}"),
        make_swap_double(point()),
        make_swap_double(z2),
        make_orientifold([1, 0], z2, [[0, 1], [1, 0]]),
        make_orientifold([1, 0, 3, 2], z2, [[0, 2], [1, 3], [2, 0], [3, 1]]),
    ]


SAMPLES = sample_groupoids()
SAMPLE_IDS = [G.name for G in SAMPLES]

Z3 = RealCoefficient.cyclic(3, 1, name="Z3")
Z3_NEG = RealCoefficient.cyclic(3, -1)
Z4 = RealCoefficient.cyclic(4, 1, name="Z4")
Z4_NEG = RealCoefficient.cyclic(4, -1)
FINITE_COEFFS = [Z2, Z3, Z3_NEG, Z4, Z4_NEG]


@pytest.fixture(params=SAMPLES, ids=SAMPLE_IDS)
def sample(request):
    return request.param


def permutation_group_table(perms):
    """Multiplication table of a list of permutations closed under composition."""
    index = {p: i for i, p in enumerate(perms)}
    return [[index[tuple(a[b[x]] for x in range(len(a)))] for b in perms] for a in perms]


def _closure(gens):
    n = len(gens[0])
    elems = [tuple(range(n))]
    frontier = list(elems)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                p = tuple(g[a[x]] for x in range(n))
                if p not in elems:
                    elems.append(p)
                    nxt.append(p)
        frontier = nxt
    return sorted(elems)


def conjugation_involution(perms, c):
    """Involution p -> c p c^-1 for an element c of order two."""
    index = {p: i for i, p in enumerate(perms)}
    return [index[tuple(c[p[c[x]]] for x in range(len(c)))] for p in perms]


def extra_groupoids():
    """Larger groups with 6 or 8 elements, used for the oracle sweep."""
    from realbrauer.groupoid import group_groupoid
    s3 = _closure([(1, 0, 2), (1, 2, 0)])
    d4 = _closure([(1, 2, 3, 0), (0, 3, 2, 1)])
    return [
        cyclic_group([8]),
        cyclic_group([8], "negation"),
        cyclic_group([2, 4]),
        cyclic_group([2, 2, 2]),
        group_groupoid(permutation_group_table(s3), name="S3"),
        group_groupoid(permutation_group_table(d4), name="D4"),
        group_groupoid(permutation_group_table(d4),
                       conjugation_involution(d4, (0, 3, 2, 1)), name="D4 reflected"),
    ]


EXTRAS = extra_groupoids()
EXTRA_IDS = [G.name for G in EXTRAS]

DATA_DIR = Path(__file__).resolve().parents[1] / "data"
