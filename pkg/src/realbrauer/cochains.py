"""Real cochain groups, their differentials and the (1,1) cup product.

A Real n-cochain is a function c on the nerve level n with values in a
coefficient group A such that c(tau x) = sigma(c(x)).  It is stored either
as a full list of A-elements indexed by simplex, or as coordinates in the
orbit basis: one copy of A per free orbit {x, tau x} (value at the lower
index) and one copy of the fixed subgroup per fixed simplex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .coefficients import CoefficientError, Element, RealCoefficient
from .groupoid import RealGroupoid, face, nerve
from .snf import Matrix, matmul


class CochainError(ValueError):
    pass


@dataclass(frozen=True)
class Block:
    simplex: int          # orbit representative
    fixed: bool
    offset: int           # first coordinate in the orbit basis
    size: int


class RealCochainGroup:
    """CR^n(G, A) presented as Z^k / diag(moduli) in the orbit basis."""

    def __init__(self, G: RealGroupoid, n: int, A: RealCoefficient):
        if A.is_circle:
            raise CoefficientError("circle coefficients have no cochain presentation; "
                                   "use the twisted chain complex")
        self.G, self.n, self.A = G, n, A
        level = nerve(G, n)
        self.level = level
        orbits = level.orbits
        F = A.fixed
        blocks, moduli = [], []
        block_of = {}
        offset = 0
        for r in orbits.reps:
            if orbits.kind[r] == "fixed":
                size = F.ngens
                moduli.extend(F.orders)
                b = Block(r, True, offset, size)
            else:
                size = A.ngens
                moduli.extend(A.moduli)
                b = Block(r, False, offset, size)
            block_of[r] = len(blocks)
            blocks.append(b)
            offset += size
        self.blocks: Tuple[Block, ...] = tuple(blocks)
        self.block_of = block_of
        self.moduli: Tuple[int, ...] = tuple(moduli)

    @property
    def ngens(self) -> int:
        return len(self.moduli)

    def __len__(self) -> int:
        """Number of simplices the cochains are defined on."""
        return len(self.level)

    def reduce(self, coords: Sequence[int]) -> Tuple[int, ...]:
        return tuple(c % m if m else c for c, m in zip(coords, self.moduli))

    def cochain(self, coords: Sequence[int]) -> List[Element]:
        """Full cochain (value per simplex) from orbit-basis coordinates."""
        A, F = self.A, self.A.fixed
        level = self.level
        values: List[Element] = [None] * len(level)
        for b in self.blocks:
            c = coords[b.offset:b.offset + b.size]
            if b.fixed:
                values[b.simplex] = F.embed(c)
            else:
                v = A.reduce(c)
                values[b.simplex] = v
                values[level.involution[b.simplex]] = A.involve(v)
        return values

    def coordinates(self, cochain: Sequence[Sequence[int]]) -> Tuple[int, ...]:
        """Orbit-basis coordinates of a full cochain; rejects non-Real input."""
        A, F = self.A, self.A.fixed
        if len(cochain) != len(self.level):
            raise CochainError("cochain has the wrong number of values")
        check_real(self.level, A, cochain)
        out: List[int] = []
        for b in self.blocks:
            v = A.reduce(cochain[b.simplex])
            out.extend(F.coordinates(v) if b.fixed else v)
        return tuple(out)

    def zero(self) -> List[Element]:
        return [self.A.zero()] * len(self.level)


def check_real(level, A: RealCoefficient, cochain) -> None:
    for i, j in enumerate(level.involution):
        if A.reduce(cochain[j]) != A.involve(cochain[i]):
            raise CochainError(f"cochain violates the Real condition at simplex {i}")


def real_cochain_group(G: RealGroupoid, n: int, A: RealCoefficient) -> RealCochainGroup:
    cache = G.__dict__.setdefault("_cochain_cache", {})
    key = (n, A)
    if key not in cache:
        cache[key] = RealCochainGroup(G, n, A)
    return cache[key]


@dataclass
class CochainMap:
    """Homomorphism between presented groups, as an integer matrix.

    ``matrix`` has one row per target generator and one column per source
    generator; entries are reduced modulo the target moduli.
    """
    source: RealCochainGroup
    target: RealCochainGroup
    matrix: Matrix

    def __call__(self, coords: Sequence[int]) -> Tuple[int, ...]:
        out = [sum(a * x for a, x in zip(row, coords) if a and x) for row in self.matrix]
        return self.target.reduce(out)

    def is_well_defined(self) -> bool:
        """Every source relation maps into the target relation lattice."""
        for j, m in enumerate(self.source.moduli):
            if m:
                col = [row[j] * m for row in self.matrix]
                if any(self.target.reduce(col)):
                    return False
        return True


def coboundary(G: RealGroupoid, n: int, A: RealCoefficient,
               cochain: Sequence[Sequence[int]]) -> List[Element]:
    """Pointwise d^n: (dc)(x) = sum_k (-1)^k c(face_k x) on level n+1."""
    upper = nerve(G, n + 1)
    faces = [face(G, n, k) for k in range(n + 2)]
    out = []
    k_A = A.ngens
    for i in range(len(upper)):
        acc = [0] * k_A
        for k, f in enumerate(faces):
            v = cochain[f[i]]
            if k % 2:
                for t in range(k_A):
                    acc[t] -= v[t]
            else:
                for t in range(k_A):
                    acc[t] += v[t]
        out.append(A.reduce(acc))
    return out


def differential(G: RealGroupoid, n: int, A: RealCoefficient) -> CochainMap:
    """Matrix of d^n : CR^n -> CR^{n+1} in the orbit bases.

    For every target orbit representative y and face x = face_k(y), the
    source block of x contributes +-identity (x is the representative),
    +-sigma (x is the conjugate of its representative) or +-the fixed
    generators (x is fixed).  Rows of fixed targets are rewritten in the
    fixed-subgroup coordinates.
    """
    cache = G.__dict__.setdefault("_diff_cache", {})
    key = (n, A)
    if key in cache:
        return cache[key]
    src = real_cochain_group(G, n, A)
    tgt = real_cochain_group(G, n + 1, A)
    k_A = A.ngens
    F = A.fixed
    S = A.involution
    lower_orbits = src.level.orbits
    faces = [face(G, n, k) for k in range(n + 2)]
    matrix: Matrix = [[0] * src.ngens for _ in range(tgt.ngens)]
    for b in tgt.blocks:
        y = b.simplex
        # A-valued image of each source generator at y
        cols = {}
        for k, f in enumerate(faces):
            x = f[y]
            sign = -1 if k % 2 else 1
            r = lower_orbits.rep_of[x]
            sb = src.blocks[src.block_of[r]]
            kind = lower_orbits.kind[x]
            for j in range(sb.size):
                col = cols.setdefault(sb.offset + j, [0] * k_A)
                if kind == "fixed":
                    vec = F.generators[j]
                elif kind == "rep":
                    vec = [int(i == j) for i in range(k_A)]
                else:
                    vec = [S[i][j] for i in range(k_A)]
                for i in range(k_A):
                    col[i] += sign * vec[i]
        for c, vec in cols.items():
            vec = A.reduce(vec)
            if b.fixed:
                coords = F.coordinates(vec)
            else:
                coords = vec
            for i, x in enumerate(coords):
                matrix[b.offset + i][c] = x
    for i, m in enumerate(tgt.moduli):
        if m:
            matrix[i] = [x % m for x in matrix[i]]
    dmap = CochainMap(src, tgt, matrix)
    cache[key] = dmap
    return dmap


def compose_maps(f: CochainMap, g: CochainMap) -> Matrix:
    """Matrix of f o g reduced modulo the target moduli of f."""
    P = matmul(f.matrix, g.matrix, inner=g.target.ngens)
    for i, m in enumerate(f.target.moduli):
        if m:
            P[i] = [x % m for x in P[i]]
    return P


# cup product --------------------------------------------------------------

def cup_product(G: RealGroupoid, delta1: Sequence[int], delta2: Sequence[int]) -> List[int]:
    """(d1 u d2)(g1, g2) = d1(g1) d2(g2) for Z2-valued 1-cochains.

    Cochains are given as plain lists of 0/1 values indexed by arrow.
    """
    m = G.n_arrows
    if len(delta1) != m or len(delta2) != m:
        raise CochainError("cup product inputs must be 1-cochains")
    for d in (delta1, delta2):
        for g, t in enumerate(G.involution_arr):
            if d[g] % 2 != d[t] % 2:
                raise CochainError("cup product input is not a Real Z2-cochain")
    level = nerve(G, 2)
    return [(delta1[a] * delta2[b]) % 2 for a, b in level.simplices]


# twisted chains for circle coefficients -------------------------------------

class TwistedChainGroup:
    """M_n = Z[G_n] / (x + tau x): Z per free orbit, Z/2 per fixed simplex.

    Homomorphisms M_n -> R/Z are exactly the Real n-cochains with values
    in the circle (conjugation acts as negation on R/Z), so the circle
    cohomology is the Pontryagin dual of the homology of M.
    """

    def __init__(self, G: RealGroupoid, n: int):
        self.G, self.n = G, n
        self.level = nerve(G, n)
        orbits = self.level.orbits
        self.reps = orbits.reps
        self.gen_of = {r: i for i, r in enumerate(orbits.reps)}
        self.moduli = tuple(2 if orbits.kind[r] == "fixed" else 0 for r in orbits.reps)

    @property
    def ngens(self) -> int:
        return len(self.moduli)

    def chain(self, simplex: int) -> Tuple[int, int]:
        """(generator, sign) with [simplex] = sign * generator."""
        orbits = self.level.orbits
        g = self.gen_of[orbits.rep_of[simplex]]
        return g, (-1 if orbits.kind[simplex] == "conj" else 1)

    def evaluate(self, cochain: Sequence[Fraction], vector: Sequence[int]) -> Fraction:
        """Pair a circle-valued Real cochain (values in Q/Z) with a chain."""
        total = Fraction(0)
        for c, r in zip(vector, self.reps):
            if c:
                total += c * Fraction(cochain[r])
        return total % 1


def twisted_chain_group(G: RealGroupoid, n: int) -> TwistedChainGroup:
    cache = G.__dict__.setdefault("_twisted_cache", {})
    if n not in cache:
        cache[n] = TwistedChainGroup(G, n)
    return cache[n]


def twisted_boundary(G: RealGroupoid, n: int) -> Matrix:
    """Matrix of the boundary M_{n+1} -> M_n (transpose of d^n)."""
    cache = G.__dict__.setdefault("_boundary_cache", {})
    if n in cache:
        return cache[n]
    lower, upper = twisted_chain_group(G, n), twisted_chain_group(G, n + 1)
    faces = [face(G, n, k) for k in range(n + 2)]
    B = [[0] * upper.ngens for _ in range(lower.ngens)]
    for j, y in enumerate(upper.reps):
        for k, f in enumerate(faces):
            g, s = lower.chain(f[y])
            B[g][j] += -s if k % 2 else s
    for i, m in enumerate(lower.moduli):
        if m:
            B[i] = [x % m for x in B[i]]
    cache[n] = B
    return B


def check_circle_real(level, cochain: Sequence[Fraction]) -> None:
    for i, j in enumerate(level.involution):
        if (Fraction(cochain[i]) + Fraction(cochain[j])) % 1:
            raise CochainError(f"circle cochain violates the Real condition at simplex {i}")


def circle_coboundary(G: RealGroupoid, n: int, cochain: Sequence[Fraction]) -> List[Fraction]:
    """Pointwise coboundary of an R/Z-valued n-cochain."""
    upper = nerve(G, n + 1)
    faces = [face(G, n, k) for k in range(n + 2)]
    out = []
    for i in range(len(upper)):
        acc = Fraction(0)
        for k, f in enumerate(faces):
            v = Fraction(cochain[f[i]])
            acc += -v if k % 2 else v
        out.append(acc % 1)
    return out
