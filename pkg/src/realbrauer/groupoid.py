"""Finite groupoids with involution and their nerves.

Objects and arrows are dense integer indices.  An arrow g goes from
``src[g]`` to ``tgt[g]``; the product ``gh`` is defined when
``src[g] == tgt[h]``.  The nerve in degree n lists composable strings
(g1, ..., gn) with s(g_i) = r(g_{i+1}).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple


class GroupoidError(ValueError):
    pass


@dataclass(frozen=True)
class RealGroupoid:
    n_objects: int
    src: Tuple[int, ...]
    tgt: Tuple[int, ...]
    compose_table: Tuple[Tuple[int, ...], ...]   # -1 where undefined
    inverse: Tuple[int, ...]
    unit: Tuple[int, ...]
    involution_obj: Tuple[int, ...]
    involution_arr: Tuple[int, ...]
    name: str = ""
    object_labels: Tuple[str, ...] = ()
    arrow_labels: Tuple[str, ...] = ()

    @property
    def n_arrows(self) -> int:
        return len(self.src)

    def compose(self, g: int, h: int) -> int:
        gh = self.compose_table[g][h]
        if gh < 0:
            raise GroupoidError(f"arrows {g} and {h} are not composable")
        return gh

    @property
    def has_trivial_involution(self) -> bool:
        return all(i == t for i, t in enumerate(self.involution_arr))

    def with_involution(self, obj: Sequence[int], arr: Sequence[int],
                        name: str = "") -> "RealGroupoid":
        return validate_tables(self.n_objects, self.src, self.tgt,
                               self.compose_table, self.inverse, self.unit,
                               obj, arr, name=name or self.name,
                               object_labels=self.object_labels,
                               arrow_labels=self.arrow_labels)

    def underlying(self) -> "RealGroupoid":
        """The same groupoid with the trivial involution."""
        return self.with_involution(range(self.n_objects), range(self.n_arrows),
                                    name=f"{self.name} (no involution)")

    @cached_property
    def components(self) -> List[List[int]]:
        """Connected components (orbits) of the object set."""
        parent = list(range(self.n_objects))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s, t in zip(self.src, self.tgt):
            a, b = find(s), find(t)
            if a != b:
                parent[max(a, b)] = min(a, b)
        comps: Dict[int, List[int]] = {}
        for x in range(self.n_objects):
            comps.setdefault(find(x), []).append(x)
        return sorted(comps.values())

    @property
    def is_two_piece(self) -> bool:
        """True when the involution maps every component to a different one."""
        comp_of = {}
        for i, c in enumerate(self.components):
            for x in c:
                comp_of[x] = i
        return all(comp_of[self.involution_obj[c[0]]] != i
                   for i, c in enumerate(self.components))

    def nerve(self, n: int) -> "NerveLevel":
        return nerve(self, n)


def validate_tables(n_objects, src, tgt, compose_table, inverse, unit,
                    involution_obj, involution_arr, name="",
                    object_labels=(), arrow_labels=()) -> RealGroupoid:
    """Check every groupoid and Real-structure axiom exhaustively."""
    n, m = int(n_objects), len(src)
    src, tgt = tuple(map(int, src)), tuple(map(int, tgt))
    inverse, unit = tuple(map(int, inverse)), tuple(map(int, unit))
    tau_o, tau_a = tuple(map(int, involution_obj)), tuple(map(int, involution_arr))
    table = tuple(tuple(int(x) for x in row) for row in compose_table)

    if len(tgt) != m or len(inverse) != m or len(tau_a) != m:
        raise GroupoidError("arrow tables have inconsistent lengths")
    if len(unit) != n or len(tau_o) != n:
        raise GroupoidError("object tables have inconsistent lengths")
    if len(table) != m or any(len(r) != m for r in table):
        raise GroupoidError("composition table must be |arrows| x |arrows|")
    for g in range(m):
        if not (0 <= src[g] < n and 0 <= tgt[g] < n):
            raise GroupoidError(f"arrow {g} has an endpoint outside the object set")
    for g in range(m):
        for h in range(m):
            gh = table[g][h]
            if src[g] == tgt[h]:
                if not 0 <= gh < m:
                    raise GroupoidError(f"dangling composition: ({g}, {h}) is composable but undefined")
                if src[gh] != src[h] or tgt[gh] != tgt[g]:
                    raise GroupoidError(f"composite of ({g}, {h}) has wrong endpoints")
            elif gh >= 0:
                raise GroupoidError(f"dangling composition: ({g}, {h}) defined but not composable")
    for x in range(n):
        e = unit[x]
        if not (0 <= e < m) or src[e] != x or tgt[e] != x:
            raise GroupoidError(f"unit of object {x} is not a loop at {x}")
    for g in range(m):
        if table[unit[tgt[g]]][g] != g or table[g][unit[src[g]]] != g:
            raise GroupoidError(f"unit law fails for arrow {g}")
        gi = inverse[g]
        if not (0 <= gi < m and src[g] == tgt[gi] and table[g][gi] == unit[tgt[g]]):
            raise GroupoidError(f"g * g^-1 is not a unit for arrow {g}")
        if table[gi][g] != unit[src[g]]:
            raise GroupoidError(f"g^-1 * g is not a unit for arrow {g}")
    for g in range(m):
        for h in range(m):
            gh = table[g][h]
            if gh < 0:
                continue
            row = table[gh]
            for k in range(m):
                if src[h] != tgt[k]:
                    continue
                if row[k] != table[g][table[h][k]]:
                    raise GroupoidError(f"composition is not associative on ({g}, {h}, {k})")
    # Real structure
    if sorted(tau_o) != list(range(n)) or any(tau_o[tau_o[x]] != x for x in range(n)):
        raise GroupoidError("object involution is not an involutive permutation")
    if sorted(tau_a) != list(range(m)) or any(tau_a[tau_a[g]] != g for g in range(m)):
        raise GroupoidError("arrow involution is not an involutive permutation")
    for g in range(m):
        if src[tau_a[g]] != tau_o[src[g]] or tgt[tau_a[g]] != tau_o[tgt[g]]:
            raise GroupoidError(f"involution does not commute with source/range at arrow {g}")
    for x in range(n):
        if tau_a[unit[x]] != unit[tau_o[x]]:
            raise GroupoidError(f"involution does not preserve the unit at object {x}")
    for g in range(m):
        for h in range(m):
            gh = table[g][h]
            if gh >= 0 and table[tau_a[g]][tau_a[h]] != tau_a[gh]:
                raise GroupoidError(f"involution is not a homomorphism on ({g}, {h})")
    return RealGroupoid(n, src, tgt, table, inverse, unit, tau_o, tau_a, name,
                        tuple(object_labels), tuple(arrow_labels))


# constructors -----------------------------------------------------------

def group_groupoid(table: Sequence[Sequence[int]],
                   involution: Optional[Sequence[int]] = None,
                   name: str = "") -> RealGroupoid:
    """One-object groupoid of the group with multiplication ``table``.

    Element 0 need not be the identity; the identity and inverses are
    read off the table.
    """
    m = len(table)
    e = next((i for i in range(m)
              if all(table[i][g] == g and table[g][i] == g for g in range(m))), None)
    if e is None:
        raise GroupoidError("multiplication table has no identity")
    inv = []
    for g in range(m):
        gi = next((h for h in range(m) if table[g][h] == e), None)
        if gi is None:
            raise GroupoidError(f"element {g} has no inverse")
        inv.append(gi)
    tau = list(range(m)) if involution is None else list(involution)
    return validate_tables(1, [0] * m, [0] * m, table, inv, [e], [0], tau, name=name)


def abelian_group_table(orders: Sequence[int]):
    """Elements and table of Z/n1 x ... x Z/nk (lexicographic order)."""
    elems = list(itertools.product(*(range(n) for n in orders)))
    index = {g: i for i, g in enumerate(elems)}
    table = [[index[tuple((a + b) % n for a, b, n in zip(g, h, orders))]
              for h in elems] for g in elems]
    return elems, table


def cyclic_group(orders: Sequence[int], involution="trivial", name: str = "") -> RealGroupoid:
    """Product of cyclic groups; involution "trivial", "negation", "swap" or a permutation."""
    orders = list(orders)
    elems, table = abelian_group_table(orders)
    index = {g: i for i, g in enumerate(elems)}
    if involution == "trivial":
        tau = list(range(len(elems)))
    elif involution == "negation":
        tau = [index[tuple((-a) % n for a, n in zip(g, orders))] for g in elems]
    elif involution == "swap":
        if len(orders) != 2 or orders[0] != orders[1]:
            raise GroupoidError("swap involution needs two equal factors")
        tau = [index[(g[1], g[0])] for g in elems]
    else:
        tau = list(involution)
    if not name:
        base = " x ".join(f"Z{n}" for n in orders) or "trivial group"
        name = base if involution == "trivial" else f"{base} ({involution if isinstance(involution, str) else 'custom'})"
    G = group_groupoid(table, tau, name=name)
    return _relabel(G, arrow_labels=tuple(",".join(map(str, g)) for g in elems))


def _relabel(G: RealGroupoid, **kw) -> RealGroupoid:
    fields = dict(n_objects=G.n_objects, src=G.src, tgt=G.tgt,
                  compose_table=G.compose_table, inverse=G.inverse, unit=G.unit,
                  involution_obj=G.involution_obj, involution_arr=G.involution_arr,
                  name=G.name, object_labels=G.object_labels,
                  arrow_labels=G.arrow_labels)
    fields.update(kw)
    return RealGroupoid(**fields)


def point() -> RealGroupoid:
    return validate_tables(1, [0], [0], [[0]], [0], [0], [0], [0], name="point")


def real_space(involution: Sequence[int], name: str = "") -> RealGroupoid:
    """A finite Real space as a groupoid with only unit arrows."""
    n = len(involution)
    table = [[g if g == h else -1 for h in range(n)] for g in range(n)]
    return validate_tables(n, range(n), range(n), table, range(n), range(n),
                           involution, involution, name=name or f"Real space ({n} points)")


def pair_groupoid(n: int, involution: Optional[Sequence[int]] = None,
                  name: str = "") -> RealGroupoid:
    """Pair groupoid: one arrow (i, j) from j to i for every pair."""
    tau = list(range(n)) if involution is None else list(involution)
    arrows = [(i, j) for i in range(n) for j in range(n)]
    idx = {a: k for k, a in enumerate(arrows)}
    src = [j for (i, j) in arrows]
    tgt = [i for (i, j) in arrows]
    table = [[idx[(a[0], b[1])] if a[1] == b[0] else -1 for b in arrows] for a in arrows]
    inv = [idx[(j, i)] for (i, j) in arrows]
    unit = [idx[(i, i)] for i in range(n)]
    tau_a = [idx[(tau[i], tau[j])] for (i, j) in arrows]
    G = validate_tables(n, src, tgt, table, inv, unit, tau, tau_a,
                        name=name or f"pair groupoid on {n} objects")
    return _relabel(G, arrow_labels=tuple(f"({i},{j})" for i, j in arrows))


def make_orientifold(space_involution: Sequence[int], group: RealGroupoid,
                     action: Sequence[Sequence[int]], allow_non_free: bool = False,
                     name: str = "") -> RealGroupoid:
    """Action groupoid X x| G of a right action ``action[x][g] = x.g``.

    ``group`` must be a one-object Real groupoid.  Arrows are pairs (x, g)
    with r = x, s = x.g and (x, g)(x.g, h) = (x, gh).  Freeness is
    enforced unless ``allow_non_free`` is set (such groupoids fall outside
    the orientifold setting).
    """
    if group.n_objects != 1:
        raise GroupoidError("the acting group must be a one-object groupoid")
    X = len(space_involution)
    tx = list(space_involution)
    if sorted(tx) != list(range(X)) or any(tx[tx[x]] != x for x in range(X)):
        raise GroupoidError("space involution is not an involutive permutation")
    m = group.n_arrows
    e = group.unit[0]
    act = [list(row) for row in action]
    if len(act) != X or any(len(r) != m for r in act):
        raise GroupoidError("action table must be |X| x |G|")
    for x in range(X):
        if act[x][e] != x:
            raise GroupoidError("identity does not act trivially")
        for g in range(m):
            for h in range(m):
                if act[act[x][g]][h] != act[x][group.compose(g, h)]:
                    raise GroupoidError("not a right action: (x.g).h != x.(gh)")
            if tx[act[x][g]] != act[tx[x]][group.involution_arr[g]]:
                raise GroupoidError("action is not equivariant")
    if not allow_non_free:
        for x in range(X):
            for g in range(m):
                if g != e and act[x][g] == x:
                    raise GroupoidError("action not free")
    arrows = [(x, g) for x in range(X) for g in range(m)]
    idx = {a: k for k, a in enumerate(arrows)}
    src = [act[x][g] for (x, g) in arrows]
    tgt = [x for (x, g) in arrows]
    table = [[idx[(a[0], group.compose(a[1], b[1]))] if src[ia] == tgt[ib] else -1
              for ib, b in enumerate(arrows)] for ia, a in enumerate(arrows)]
    inv = [idx[(act[x][g], group.inverse[g])] for (x, g) in arrows]
    unit = [idx[(x, e)] for x in range(X)]
    tau_a = [idx[(tx[x], group.involution_arr[g])] for (x, g) in arrows]
    G = validate_tables(X, src, tgt, table, inv, unit, tx, tau_a,
                        name=name or f"orientifold {X} points x| {group.name}")
    return _relabel(G, arrow_labels=tuple(f"({x},{g})" for x, g in arrows))


def make_swap_double(H: RealGroupoid, name: str = "") -> RealGroupoid:
    """H disjoint-union H with the involution exchanging the two copies.

    Any involution already carried by ``H`` is ignored.
    """
    n, m = H.n_objects, H.n_arrows
    src = list(H.src) + [s + n for s in H.src]
    tgt = list(H.tgt) + [t + n for t in H.tgt]
    table = []
    for copy in (0, 1):
        for g in range(m):
            row = []
            for copy2 in (0, 1):
                for h in range(m):
                    gh = H.compose_table[g][h]
                    row.append(gh + copy * m if copy == copy2 and gh >= 0 else -1)
            table.append(row)
    inv = list(H.inverse) + [i + m for i in H.inverse]
    unit = list(H.unit) + [u + m for u in H.unit]
    tau_o = [x + n for x in range(n)] + list(range(n))
    tau_a = [g + m for g in range(m)] + list(range(m))
    return validate_tables(2 * n, src, tgt, table, inv, unit, tau_o, tau_a,
                           name=name or f"swap double of {H.name}")


# nerve ------------------------------------------------------------------

@dataclass(frozen=True)
class NerveLevel:
    n: int
    simplices: Tuple[Tuple[int, ...], ...]
    involution: Tuple[int, ...]
    index: Dict[Tuple[int, ...], int] = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.simplices)

    @cached_property
    def orbits(self) -> "OrbitData":
        """Orbit representatives (lowest index) of the level involution."""
        rep_of, kind = [], []
        reps = []
        for i, j in enumerate(self.involution):
            r = min(i, j)
            if r == i:
                reps.append(i)
            rep_of.append(r)
            kind.append("fixed" if i == j else ("rep" if i < j else "conj"))
        return OrbitData(tuple(reps), tuple(rep_of), tuple(kind))


@dataclass(frozen=True)
class OrbitData:
    reps: Tuple[int, ...]
    rep_of: Tuple[int, ...]
    kind: Tuple[str, ...]      # "fixed", "rep" or "conj" per simplex


def nerve(G: RealGroupoid, n: int) -> NerveLevel:
    """All composable n-strings in lexicographic order, with the involution."""
    cache = G.__dict__.setdefault("_nerve_cache", {})
    if n in cache:
        return cache[n]
    if n < 0:
        raise GroupoidError("nerve degree must be non-negative")
    if n == 0:
        simplices = [(x,) for x in range(G.n_objects)]
        tau = list(G.involution_obj)
    else:
        by_target: Dict[int, List[int]] = {}
        for h in range(G.n_arrows):
            by_target.setdefault(G.tgt[h], []).append(h)
        strings = [(g,) for g in range(G.n_arrows)]
        for _ in range(n - 1):
            strings = [s + (h,) for s in strings for h in by_target.get(G.src[s[-1]], [])]
        simplices = strings
        index = {s: i for i, s in enumerate(simplices)}
        tau = [index[tuple(G.involution_arr[g] for g in s)] for s in simplices]
    index = {s: i for i, s in enumerate(simplices)}
    level = NerveLevel(n, tuple(simplices), tuple(tau), index)
    cache[n] = level
    return level


def face_simplex(G: RealGroupoid, simplex: Sequence[int], k: int) -> Tuple[int, ...]:
    """Face k of an (n+1)-simplex given as a tuple of arrows.

    For arrows (n = 0): face 0 is the source, face 1 the range.  Higher up,
    face 0 drops g1, face n+1 drops the last arrow, and the inner faces
    compose neighbours.
    """
    s = tuple(simplex)
    m = len(s)
    if not 0 <= k <= m:
        raise GroupoidError(f"face index {k} out of range for a {m}-simplex")
    if m == 1:
        return (G.src[s[0]],) if k == 0 else (G.tgt[s[0]],)
    if k == 0:
        return s[1:]
    if k == m:
        return s[:-1]
    return s[:k - 1] + (G.compose(s[k - 1], s[k]),) + s[k + 1:]


def face(G: RealGroupoid, n: int, k: int) -> Tuple[int, ...]:
    """Face map k from level n+1 to level n, as an index table."""
    cache = G.__dict__.setdefault("_face_cache", {})
    key = (n, k)
    if key in cache:
        return cache[key]
    if not 0 <= k <= n + 1:
        raise GroupoidError(f"face index {k} out of range 0..{n + 1}")
    upper, lower = nerve(G, n + 1), nerve(G, n)
    table = tuple(lower.index[face_simplex(G, s, k)] for s in upper.simplices)
    cache[key] = table
    return table
