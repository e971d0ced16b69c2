"""Real cohomology of finite Real groupoids.

Finitely generated coefficients go through the orbit-basis cochain complex
and exact Smith normal form.  Circle coefficients go through the twisted
chain complex M_n = Z[G_n] / (x + tau x): since R/Z is an injective
abelian group, HR^n(G, S1) = Hom(H_n(M), R/Z), which has one circle
factor per free summand of H_n(M) and the same torsion.

``brute_force_cohomology`` is an independent oracle: it never builds a
matrix.  It enumerates all Real (n-1)-cochains to get the coboundaries,
finds every cocycle by a backtracking search, and classifies the quotient
from element counts.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence

import numpy as np

from .cochains import (differential, real_cochain_group,
                       twisted_boundary, twisted_chain_group)
from .coefficients import CoefficientError, RealCoefficient, Z01
from .groupoid import RealGroupoid, face, nerve
from .invariants import AbelianGroupInvariants, from_prime_power_counts
from .snf import Subquotient, kernel_mod, subquotient

log = logging.getLogger(__name__)

DEFAULT_MAX_DEGREE = 4
DEFAULT_BUDGET = 2 ** 24


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class EngineConfig:
    max_degree: int = DEFAULT_MAX_DEGREE
    budget: int = DEFAULT_BUDGET


CONFIG = EngineConfig()


def _check_degree(n: int, config: EngineConfig) -> None:
    if n < 0:
        raise ValueError("degree must be non-negative")
    if n > config.max_degree:
        raise BudgetExceeded(f"degree {n} exceeds the configured bound {config.max_degree}")


def cohomology_group(G: RealGroupoid, n: int, A: RealCoefficient,
                     config: EngineConfig = CONFIG) -> Subquotient:
    """ZR^n / BR^n as a subquotient of the orbit-basis coordinates of CR^n."""
    if A.is_circle:
        raise CoefficientError("use circle_homology for circle coefficients")
    _check_degree(n, config)
    cache = G.__dict__.setdefault("_cohomology_cache", {})
    key = (n, A)
    if key in cache:
        return cache[key]
    C = real_cochain_group(G, n, A)
    d = differential(G, n, A)
    K = kernel_mod(d.matrix, C.ngens, d.target.moduli)
    I = []
    if n > 0:
        dprev = differential(G, n - 1, A)
        I.extend([row[j] for row in dprev.matrix] for j in range(dprev.source.ngens))
    for i, m in enumerate(C.moduli):
        if m:
            I.append([m if t == i else 0 for t in range(C.ngens)])
    H = subquotient(C.ngens, K, I)
    cache[key] = H
    return H


def circle_homology(G: RealGroupoid, n: int, config: EngineConfig = CONFIG) -> Subquotient:
    """H_n of the twisted chain complex, as a subquotient of M_n."""
    _check_degree(n, config)
    cache = G.__dict__.setdefault("_circle_cache", {})
    if n in cache:
        return cache[n]
    M = twisted_chain_group(G, n)
    if n == 0:
        K = [[int(i == j) for i in range(M.ngens)] for j in range(M.ngens)]
    else:
        lower = twisted_chain_group(G, n - 1)
        K = kernel_mod(twisted_boundary(G, n - 1), M.ngens, lower.moduli)
    upper = twisted_chain_group(G, n + 1)
    B = twisted_boundary(G, n)
    I = [[row[j] for row in B] for j in range(upper.ngens)]
    for i, m in enumerate(M.moduli):
        if m:
            I.append([m if t == i else 0 for t in range(M.ngens)])
    H = subquotient(M.ngens, K, I)
    cache[n] = H
    return H


def cohomology(G: RealGroupoid, n: int, A: RealCoefficient,
               config: EngineConfig = CONFIG) -> AbelianGroupInvariants:
    """Canonical invariants of HR^n(G, A)."""
    if A.is_circle:
        H = circle_homology(G, n, config)
        free = sum(1 for m in H.orders if m == 0)
        return AbelianGroupInvariants(torsion=tuple(m for m in H.orders if m),
                                      circles=free)
    return AbelianGroupInvariants.from_orders(cohomology_group(G, n, A, config).orders)


def circle_via_shift(G: RealGroupoid, n: int,
                     config: EngineConfig = CONFIG) -> AbelianGroupInvariants:
    """HR^{n+1}(G, Z(0,1)) -- the exponential-sequence shift.

    This agrees with ``cohomology(G, n, S1)`` for n >= 1 when the
    involution acts freely on every nerve level, but not in general:
    at a fixed simplex a Real cochain into Z(0,1) must vanish while a
    circle cochain may take the value -1.
    """
    if n < 1:
        raise ValueError("the shift only applies in positive degree")
    return cohomology(G, n + 1, Z01, config)


def invariant_real_functions(G: RealGroupoid, A: RealCoefficient) -> AbelianGroupInvariants:
    """Invariants of the group of invariant Real functions on the objects.

    Such a function is constant on each component; a component mapped to
    itself by the involution carries a fixed value, a swapped pair of
    components carries one free value.
    """
    comp_of = {}
    for i, c in enumerate(G.components):
        for x in c:
            comp_of[x] = i
    stable = pairs = 0
    for i, c in enumerate(G.components):
        j = comp_of[G.involution_obj[c[0]]]
        if j == i:
            stable += 1
        elif i < j:
            pairs += 1
    if A.is_circle:
        # fixed circle values are +-1
        return AbelianGroupInvariants(torsion=(2,) * stable, circles=pairs)
    if A.is_finite:
        fixed = [a for a in A.elements() if A.involve(a) == a]
        fixed_inv = _finite_group_invariants(A, fixed)
    else:
        fixed_inv = A.fixed.invariants
    return fixed_inv * stable + A.invariants * pairs


def _finite_group_invariants(A: RealCoefficient, subgroup: Sequence[tuple]) -> AbelianGroupInvariants:
    """Invariants of a finite subgroup of A given as an element list."""
    members = set(subgroup)
    N = len(members)
    counts: Dict[int, List[int]] = {}
    for p in _primes(N):
        seq = []
        k = 1
        while True:
            c = sum(1 for a in members if not any(A.scale(p ** k, a)))
            seq.append(c)
            if len(seq) > 1 and seq[-1] == seq[-2]:
                break
            k += 1
        counts[p] = seq
    return from_prime_power_counts(counts)


def _primes(N: int) -> List[int]:
    out, p = [], 2
    while p * p <= N:
        if N % p == 0:
            out.append(p)
            while N % p == 0:
                N //= p
        p += 1
    if N > 1:
        out.append(N)
    return out


def ordinary_circle_homology(G: RealGroupoid, n: int,
                             config: EngineConfig = CONFIG) -> Subquotient:
    """H_n of the plain chain complex Z[G_n], ignoring the involution."""
    _check_degree(n, config)
    cache = G.__dict__.setdefault("_plain_cache", {})
    if n in cache:
        return cache[n]

    def boundary(k):
        lower, upper = len(nerve(G, k)), len(nerve(G, k + 1))
        B = [[0] * upper for _ in range(lower)]
        for j in range(k + 2):
            f = face(G, k, j)
            for y in range(upper):
                B[f[y]][y] += -1 if j % 2 else 1
        return B

    size = len(nerve(G, n))
    if n == 0:
        K = [[int(i == j) for i in range(size)] for j in range(size)]
    else:
        K = kernel_mod(boundary(n - 1), size, (0,) * len(nerve(G, n - 1)))
    B = boundary(n)
    I = [[row[j] for row in B] for j in range(len(nerve(G, n + 1)))]
    H = subquotient(size, K, I)
    cache[n] = H
    return H


def fold_double(H: RealGroupoid, n: int, A: RealCoefficient,
                config: EngineConfig = CONFIG) -> AbelianGroupInvariants:
    """Ordinary cohomology H^n(H, A) with every involution switched off.

    For the circle this is Hom(H_n(H), R/Z) with no conjugation, the
    single-piece counterpart of the swap double.
    """
    plain = H.underlying()
    if A.is_circle:
        C = ordinary_circle_homology(plain, n, config)
        return AbelianGroupInvariants(torsion=tuple(m for m in C.orders if m),
                                      circles=sum(1 for m in C.orders if m == 0))
    underlying_A = RealCoefficient(A.moduli, tuple(tuple(int(i == j) for j in range(A.ngens))
                                                   for i in range(A.ngens)),
                                   name=f"{A} (no involution)")
    return cohomology(plain, n, underlying_A, config)


# brute-force oracle -------------------------------------------------------
#
# Elements of A are replaced by their index in A.elements(); the group law,
# negation and involution become lookup tables, so whole batches of cochains
# are processed with numpy fancy indexing.  No matrix of the complex is built.

@dataclass
class _Tables:
    elements: List[tuple]
    add: np.ndarray
    neg: np.ndarray
    inv: np.ndarray
    fixed: np.ndarray

    def scale(self, q: int) -> np.ndarray:
        out = np.zeros(len(self.elements), dtype=np.int64)
        for _ in range(q):
            out = self.add[out, np.arange(len(self.elements))]
        return out


def _tables(A: RealCoefficient) -> _Tables:
    elems = A.elements()
    assert not any(elems[0]), "element 0 must be the zero of A"
    index = {a: i for i, a in enumerate(elems)}
    n = len(elems)
    add = np.array([[index[A.add(a, b)] for b in elems] for a in elems], dtype=np.int64)
    neg = np.array([index[A.neg(a)] for a in elems], dtype=np.int64)
    inv = np.array([index[A.involve(a)] for a in elems], dtype=np.int64)
    fixed = np.array([i for i in range(n) if inv[i] == i], dtype=np.int64)
    return _Tables(elems, add, neg, inv, fixed)


class _LevelSystem:
    """Orbit variables of one nerve level and the cocycle equations on it."""

    def __init__(self, G: RealGroupoid, n: int, T: _Tables):
        level = nerve(G, n)
        self.level = level
        self.reps = [i for i, j in enumerate(level.involution) if i <= j]
        rep_index = {r: k for k, r in enumerate(self.reps)}
        # simplex -> (variable, conjugated?)
        self.var = np.array([rep_index[min(x, level.involution[x])]
                             for x in range(len(level))], dtype=np.int64)
        self.conj = np.array([x > level.involution[x] for x in range(len(level))])
        n_all = len(T.elements)
        self.domains = [T.fixed if i == level.involution[i] else np.arange(n_all)
                        for i in self.reps]

    def expand(self, values: np.ndarray, T: _Tables) -> np.ndarray:
        """Full cochains (rows) from orbit-variable values (rows)."""
        full = values[:, self.var]
        return np.where(self.conj[None, :], T.inv[full], full)


def _coboundaries(G, n, T, lower: _LevelSystem, budget: int) -> np.ndarray:
    faces = [np.array(face(G, n - 1, k)) for k in range(n + 1)]
    total = 1
    for d in lower.domains:
        total *= len(d)
    if total > budget:
        raise BudgetExceeded(f"{total} cochains in degree {n - 1} exceed the budget {budget}")
    grids = np.meshgrid(*lower.domains, indexing="ij") if lower.domains else []
    values = (np.stack([g.reshape(-1) for g in grids], axis=1) if grids
              else np.zeros((1, 0), dtype=np.int64))
    full = lower.expand(values, T)
    acc = np.zeros((full.shape[0], len(faces[0])), dtype=np.int64)
    for k, f in enumerate(faces):
        term = full[:, f]
        acc = T.add[acc, T.neg[term] if k % 2 else term]
    return acc


def brute_force_cohomology(G: RealGroupoid, n: int, A: RealCoefficient,
                           budget: int = DEFAULT_BUDGET) -> AbelianGroupInvariants:
    """Classify HR^n(G, A) by explicit enumeration (finite A only).

    All Real (n-1)-cochains are enumerated and pushed through the pointwise
    coboundary; all Real n-cocycles are found by a breadth-first search
    over orbit variables that discards partial assignments as soon as an
    equation on level n+1 is fully determined.  The quotient is classified
    from the counts |H[p^k]|.  ``budget`` bounds both the number of
    (n-1)-cochains enumerated and the size of the search frontier.
    """
    if not A.is_finite:
        raise CoefficientError("the brute-force oracle needs a finite coefficient group")
    if n < 0:
        raise ValueError("degree must be non-negative")
    T = _tables(A)
    system = _LevelSystem(G, n, T)
    if n == 0:
        B = np.zeros((1, len(system.level)), dtype=np.int64)
    else:
        B = _coboundaries(G, n, T, _LevelSystem(G, n - 1, T), budget)
        B = np.unique(B, axis=0)
    Z = _cocycles(G, n, T, system, budget)
    Bkeys = {row.tobytes() for row in B}
    Zkeys = {row.tobytes() for row in Z}
    if not Bkeys <= Zkeys:
        raise AssertionError("a coboundary is not a cocycle")
    order, rem = divmod(len(Zkeys), len(Bkeys))
    if rem:
        raise AssertionError("coboundaries do not form a subgroup of the cocycles")
    if order == 1:
        return AbelianGroupInvariants()
    counts = {}
    for p in _primes(order):
        seq, k = [], 1
        while True:
            scaled = T.scale(p ** k)[Z]
            killed = sum(1 for row in scaled if row.tobytes() in Bkeys)
            seq.append(killed // len(Bkeys))
            if len(seq) > 1 and seq[-1] == seq[-2]:
                break
            k += 1
        counts[p] = seq
    return from_prime_power_counts(counts)


def _cocycles(G, n, T, system: _LevelSystem, budget: int) -> np.ndarray:
    """All Real n-cocycles as full cochains (one row each)."""
    upper = nerve(G, n + 1)
    faces = [face(G, n, k) for k in range(n + 2)]
    nvars = len(system.reps)
    eq_vars = [sorted({int(system.var[f[y]]) for f in faces}) for y in range(len(upper))]
    var_eqs: List[List[int]] = [[] for _ in range(nvars)]
    for e, vs in enumerate(eq_vars):
        for v in vs:
            var_eqs[v].append(e)

    # greedy order: prefer variables that complete the most equations
    order, placed = [], [False] * nvars
    missing = [len(vs) for vs in eq_vars]
    for _ in range(nvars):
        best = max((v for v in range(nvars) if not placed[v]),
                   key=lambda v: (sum(1 for e in var_eqs[v] if missing[e] == 1),
                                  sum(1 for e in var_eqs[v] if missing[e] == 2), -v))
        placed[best] = True
        order.append(best)
        for e in var_eqs[best]:
            missing[e] -= 1
    position = {v: i for i, v in enumerate(order)}
    closes_at: List[List[int]] = [[] for _ in range(nvars)]
    for e, vs in enumerate(eq_vars):
        closes_at[max(position[v] for v in vs)].append(e)

    # frontier of partial assignments, one column array per placed variable
    columns: List[np.ndarray] = []
    rows_alive = 1
    for depth, v in enumerate(order):
        dom = system.domains[v]
        if rows_alive * len(dom) > budget:
            raise BudgetExceeded(f"cocycle search frontier of {rows_alive * len(dom)} "
                                 f"partial cochains exceeds the budget {budget}")
        # mask[r, d]: row r extended by dom[d] satisfies every closing equation
        mask = np.ones((rows_alive, len(dom)), dtype=bool)
        for e in closes_at[depth]:
            known = np.zeros(rows_alive, dtype=np.int64)
            new = np.zeros(len(dom), dtype=np.int64)
            for k, f in enumerate(faces):
                x = f[e]
                var = int(system.var[x])
                val = dom if var == v else columns[position[var]]
                if system.conj[x]:
                    val = T.inv[val]
                if k % 2:
                    val = T.neg[val]
                if var == v:
                    new = T.add[new, val]
                else:
                    known = T.add[known, val]
            mask &= T.add[known[:, None], new[None, :]] == 0
        r_idx, d_idx = np.nonzero(mask)
        columns = [c[r_idx] for c in columns]
        columns.append(dom[d_idx].astype(np.uint8))
        rows_alive = r_idx.size
    values = np.zeros((rows_alive, nvars), dtype=np.int64)
    for j, v in enumerate(order):
        values[:, v] = columns[j]
    return system.expand(values, T)
