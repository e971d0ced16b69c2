"""Exact integer linear algebra: Smith normal form and lattice helpers.

All matrices are lists of lists of Python ints, so nothing can overflow.
Vectors are plain lists.  The lattice helpers work with *presented*
groups Z^k / diag(moduli), where a modulus of 0 means a free summand.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import List, Optional, Sequence

Matrix = List[List[int]]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def identity(n: int) -> Matrix:
    M = zeros(n, n)
    for i in range(n):
        M[i][i] = 1
    return M


def shape(M: Sequence[Sequence[int]], ncols: Optional[int] = None):
    m = len(M)
    n = len(M[0]) if m else (ncols or 0)
    return m, n


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]],
           inner: Optional[int] = None) -> Matrix:
    """Integer matrix product.  ``inner`` disambiguates empty operands."""
    m = len(A)
    k = len(B) if B else (inner or 0)
    n = len(B[0]) if B else 0
    out = zeros(m, n)
    for i in range(m):
        Ai = A[i]
        Oi = out[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                for j in range(n):
                    b = Bt[j]
                    if b:
                        Oi[j] += a * b
    return out


def matvec(A: Sequence[Sequence[int]], v: Sequence[int]) -> List[int]:
    return [sum(a * x for a, x in zip(row, v) if a and x) for row in A]


def transpose(M: Sequence[Sequence[int]], nrows: int = 0) -> Matrix:
    if not M:
        return [[] for _ in range(nrows)]
    return [list(col) for col in zip(*M)]


def columns(M: Sequence[Sequence[int]]) -> List[List[int]]:
    return transpose(M)


def from_columns(cols: Sequence[Sequence[int]], nrows: int) -> Matrix:
    if not cols:
        return [[] for _ in range(nrows)]
    return [list(r) for r in zip(*cols)]


@dataclass
class SNF:
    """Result of :func:`smith_normal_form`: ``U @ M @ V == D``.

    ``Uinv`` and ``Vinv`` are the exact inverses of ``U`` and ``V``.  Any
    transform that was not requested is ``None``.
    """
    U: Optional[Matrix]
    D: Matrix
    V: Optional[Matrix]
    Uinv: Optional[Matrix]
    Vinv: Optional[Matrix]
    rank: int

    @property
    def diagonal(self) -> List[int]:
        """All min(rows, cols) diagonal entries, zeros included."""
        k = min(len(self.D), len(self.D[0]) if self.D else 0)
        return [self.D[i][i] for i in range(k)]


def smith_normal_form(M: Sequence[Sequence[int]], ncols: Optional[int] = None,
                      left: bool = True, right: bool = True) -> SNF:
    """Smith normal form with unimodular transforms.

    Returns ``SNF(U, D, V, Uinv, Vinv, rank)`` with ``U M V = D``, ``D``
    diagonal, diagonal entries positive and each dividing the next.
    ``left``/``right`` switch off tracking of U/V (large row counts make U
    expensive and most callers only need one side).
    """
    A = [list(map(int, row)) for row in M]
    m, n = shape(A, ncols)
    U = identity(m) if left else None
    Uinv = identity(m) if left else None
    V = identity(n) if right else None
    Vinv = identity(n) if right else None

    def row_addmul(i, t, q):
        # row_i -= q * row_t
        Ai, At = A[i], A[t]
        for j in range(n):
            if At[j]:
                Ai[j] -= q * At[j]
        if left:
            Ui, Ut = U[i], U[t]
            for j in range(m):
                if Ut[j]:
                    Ui[j] -= q * Ut[j]
            # inverse: col_t += q * col_i
            for r in range(m):
                x = Uinv[r][i]
                if x:
                    Uinv[r][t] += q * x

    def col_addmul(j, t, q):
        # col_j -= q * col_t
        for r in range(m):
            x = A[r][t]
            if x:
                A[r][j] -= q * x
        if right:
            for r in range(n):
                x = V[r][t]
                if x:
                    V[r][j] -= q * x
            # inverse: row_t += q * row_j
            Vt, Vj = Vinv[t], Vinv[j]
            for c in range(n):
                if Vj[c]:
                    Vt[c] += q * Vj[c]

    def row_swap(i, t):
        if i == t:
            return
        A[i], A[t] = A[t], A[i]
        if left:
            U[i], U[t] = U[t], U[i]
            for r in range(m):
                Uinv[r][i], Uinv[r][t] = Uinv[r][t], Uinv[r][i]

    def col_swap(j, t):
        if j == t:
            return
        for r in range(m):
            A[r][j], A[r][t] = A[r][t], A[r][j]
        if right:
            for r in range(n):
                V[r][j], V[r][t] = V[r][t], V[r][j]
            Vinv[j], Vinv[t] = Vinv[t], Vinv[j]

    def row_negate(t):
        A[t] = [-x for x in A[t]]
        if left:
            U[t] = [-x for x in U[t]]
            for r in range(m):
                Uinv[r][t] = -Uinv[r][t]

    t = 0
    while t < min(m, n):
        # smallest nonzero entry of the trailing block as pivot
        best = None
        for i in range(t, m):
            Ai = A[i]
            for j in range(t, n):
                x = Ai[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        row_swap(t, i)
        col_swap(t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                x = A[i][t]
                if x:
                    row_addmul(i, t, x // p)
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                x = A[t][j]
                if x:
                    col_addmul(j, t, x // p)
                    if A[t][j]:
                        dirty = True
            if dirty:
                # a remainder is smaller than the pivot: move it up
                best = None
                for i in range(t, m):
                    x = A[i][t]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, t)
                for j in range(t, n):
                    x = A[t][j]
                    if x and abs(x) < best[0]:
                        best = (abs(x), t, j)
                row_swap(t, best[1])
                col_swap(t, best[2])
                continue
            # divisibility of the remaining block by the pivot
            bad = None
            for i in range(t + 1, m):
                Ai = A[i]
                for j in range(t + 1, n):
                    if Ai[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_addmul(t, bad, -1)
        if A[t][t] < 0:
            row_negate(t)
        t += 1
    return SNF(U, A, V, Uinv, Vinv, t)


def rank(M: Sequence[Sequence[int]], ncols: Optional[int] = None) -> int:
    return smith_normal_form(M, ncols, left=False, right=False).rank


def kernel_basis(M: Sequence[Sequence[int]], ncols: int) -> List[List[int]]:
    """Z-basis (list of vectors) of {x in Z^ncols : M x = 0}."""
    if not M:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    s = smith_normal_form(M, ncols, left=False)
    return [[s.V[r][j] for r in range(ncols)] for j in range(s.rank, ncols)]


def span_basis(vectors: Sequence[Sequence[int]], dim: int) -> List[List[int]]:
    """Z-basis of the lattice spanned by ``vectors`` inside Z^dim."""
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return []
    G = from_columns(vectors, dim)
    s = smith_normal_form(G, len(vectors), right=False)
    return [[s.D[i][i] * s.Uinv[r][i] for r in range(dim)]
            for i in range(s.rank)]


def solve(M: Sequence[Sequence[int]], b: Sequence[int], ncols: int,
          snf: Optional[SNF] = None) -> Optional[List[int]]:
    """One integer solution x of ``M x = b``, or ``None`` if none exists."""
    if snf is None:
        snf = smith_normal_form(M, ncols)
    c = matvec(snf.U, b)
    z = [0] * ncols
    for i in range(snf.rank):
        d = snf.D[i][i]
        if c[i] % d:
            return None
        z[i] = c[i] // d
    if any(c[snf.rank:]):
        return None
    return matvec(snf.V, z)


def kernel_mod(M: Sequence[Sequence[int]], ncols: int,
               moduli: Sequence[int]) -> List[List[int]]:
    """Z-basis of {x in Z^ncols : (M x)_i = 0 mod moduli[i] for all i}.

    A modulus of 0 asks for exact vanishing of that row.  The rows with
    nonzero modulus are rescaled to a common modulus so that a single
    SNF (without left transform) settles them.
    """
    exact = [row for row, mod in zip(M, moduli) if mod == 0]
    tors = [(row, mod) for row, mod in zip(M, moduli) if mod not in (0, 1)]
    basis = kernel_basis(exact, ncols) if exact else \
        [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    if not tors or not basis:
        return basis
    L = 1
    for _, mod in tors:
        L = L * mod // gcd(L, mod)
    B = from_columns(basis, ncols)
    T = [[(L // mod) * x for x in row] for row, mod in tors]
    TB = matmul(T, B, inner=ncols)
    r = len(basis)
    s = smith_normal_form(TB, r, left=False)
    # y = V^{-1} x' ; need d_i y_i = 0 mod L
    scales = []
    for i in range(r):
        d = s.D[i][i] if i < s.rank else 0
        scales.append(L // gcd(d, L))
    out = []
    for j in range(r):
        col = [s.V[row][j] * scales[j] for row in range(r)]
        out.append(matvec(B, col))
    return out


@dataclass
class Subquotient:
    """A group K / I of lattices I <= K <= Z^dim, in canonical form.

    ``invariants`` lists the cyclic orders of the quotient: torsion orders
    (each dividing the next) followed by zeros for free summands.
    """
    dim: int
    basis: List[List[int]]       # basis of K
    orders: List[int]            # one entry per generator; 0 = free
    _solver: SNF
    _U: Matrix                   # K-coordinates -> quotient coordinates
    _gens: List[List[int]]       # representatives in Z^dim

    def coordinates(self, v: Sequence[int]) -> List[int]:
        """Canonical coordinates of the class of ``v`` (must lie in K)."""
        y = solve(None, v, len(self.basis), snf=self._solver)
        if y is None:
            raise ValueError("vector does not lie in the subgroup")
        c = matvec(self._U, y)
        out = []
        for ci, m in zip(c, self.orders):
            out.append(ci % m if m else ci)
        return out

    def representative(self, coords: Sequence[int]) -> List[int]:
        v = [0] * self.dim
        for c, g in zip(coords, self._gens):
            if c:
                for i, x in enumerate(g):
                    if x:
                        v[i] += c * x
        return v

    @property
    def generators(self) -> List[List[int]]:
        return [list(g) for g in self._gens]


def subquotient(dim: int, K: List[List[int]],
                I_gens: Sequence[Sequence[int]]) -> Subquotient:
    """Canonical form of K / I where ``K`` is a Z-basis and I <= K."""
    r = len(K)
    if r == 0:
        return Subquotient(dim, [], [], smith_normal_form([], 0), [], [])
    B = from_columns(K, dim)
    sB = smith_normal_form(B, r)
    C_cols = []
    for v in I_gens:
        if not any(v):
            continue
        y = solve(None, v, r, snf=sB)
        if y is None:
            raise ValueError("image is not contained in the kernel")
        C_cols.append(y)
    C = from_columns(C_cols, r) if C_cols else zeros(r, 0)
    sC = smith_normal_form(C, len(C_cols), right=False)
    keep = []
    orders = []
    for i in range(r):
        d = sC.D[i][i] if i < sC.rank else 0
        if d == 1:
            continue
        keep.append(i)
        orders.append(d)
    U = [sC.U[i] for i in keep]
    gens = []
    for i in keep:
        ycol = [sC.Uinv[row][i] for row in range(r)]
        gens.append(matvec(B, ycol))
    return Subquotient(dim, K, orders, sB, U, gens)
