"""Real graded central extensions and the Real graded Brauer group.

An extension class is a pair ([delta], [omega]) with delta a Real Z2
1-cocycle (the grading) and omega a Real circle 2-cocycle whose values are
stored as fractions in Q/Z.  The group law is

    (d1, w1) * (d2, w2) = (d1 + d2, w1 + w2 + iota(d1 u d2)),

iota sending 1 to 1/2.  Normal forms are coordinates: [delta] in the
canonical basis of HR^1(G, Z2), and [omega] through its values on the
generators of the twisted homology H_2(M), which determine it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd
from typing import List, Sequence, Tuple

from .cochains import (CochainError, check_circle_real, circle_coboundary,
                       coboundary, cup_product, real_cochain_group,
                       twisted_boundary, twisted_chain_group)
from .coefficients import Z2, Z8
from .cohomology import (BudgetExceeded, CONFIG, EngineConfig, circle_homology,
                         cohomology_group)
from .groupoid import RealGroupoid, nerve
from .invariants import AbelianGroupInvariants, from_prime_power_counts
from .snf import matvec, smith_normal_form, solve

HALF = Fraction(1, 2)
TABLE_LIMIT = 4096


class ExtensionError(ValueError):
    pass


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def iota(cochain: Sequence[int]) -> List[Fraction]:
    """Push a Z2-valued cochain into the circle: 1 -> 1/2."""
    return [HALF if v % 2 else Fraction(0) for v in cochain]


@dataclass(frozen=True)
class GradedExtensionClass:
    """Normal form of an extension class over a fixed groupoid.

    ``delta`` holds coordinates in HR^1(G, Z2); ``omega`` holds, for each
    torsion generator z_i of H_2(M) of order m_i, the integer m_i*omega(z_i)
    mod m_i.
    """
    groupoid: str
    delta: Tuple[int, ...]
    omega: Tuple[int, ...]

    def to_dict(self) -> dict:
        return {"delta": list(self.delta), "omega": list(self.omega)}


class ExtensionGroup:
    """HR^1(G, Z2) and HR^2(G, S1) with the twisted law."""

    def __init__(self, G: RealGroupoid, config: EngineConfig = CONFIG):
        self.G = G
        self.config = config
        self.C1 = real_cochain_group(G, 1, Z2)
        self.H1 = cohomology_group(G, 1, Z2, config)
        self.H2 = circle_homology(G, 2, config)
        if any(m == 0 for m in self.H2.orders):
            # twisted homology of a finite groupoid is torsion in positive degree
            raise ExtensionError("H_2 of the twisted complex has a free part")
        self.M2 = twisted_chain_group(G, 2)
        self.level2 = nerve(G, 2)

    @property
    def delta_orders(self) -> Tuple[int, ...]:
        return tuple(self.H1.orders)

    @property
    def omega_orders(self) -> Tuple[int, ...]:
        return tuple(self.H2.orders)

    @property
    def order(self) -> int:
        n = 1
        for m in self.delta_orders + self.omega_orders:
            n *= m
        return n

    def identity(self) -> GradedExtensionClass:
        return GradedExtensionClass(self.G.name, (0,) * len(self.delta_orders),
                                    (0,) * len(self.omega_orders))

    def element(self, delta: Sequence[int], omega: Sequence[int]) -> GradedExtensionClass:
        d = tuple(x % m for x, m in zip(delta, self.delta_orders))
        w = tuple(x % m for x, m in zip(omega, self.omega_orders))
        if len(d) != len(self.delta_orders) or len(w) != len(self.omega_orders):
            raise ExtensionError("coordinate vector has the wrong length")
        return GradedExtensionClass(self.G.name, d, w)

    def elements(self) -> List[GradedExtensionClass]:
        ranges = [range(m) for m in self.delta_orders + self.omega_orders]
        k = len(self.delta_orders)
        return [GradedExtensionClass(self.G.name, t[:k], t[k:])
                for t in itertools.product(*ranges)]

    def _check(self, e: GradedExtensionClass) -> None:
        if e.groupoid != self.G.name:
            raise ExtensionError("extension classes live over different groupoids")

    # cocycle level --------------------------------------------------------

    def check_delta(self, delta: Sequence[int]) -> None:
        if len(delta) != self.G.n_arrows:
            raise CochainError("grading cochain must have one value per arrow")
        values = [(v % 2,) for v in delta]
        self.C1.coordinates(values)
        if any(v[0] for v in coboundary(self.G, 1, Z2, values)):
            raise CochainError("grading cochain is not a cocycle")

    def check_omega(self, omega: Sequence[Fraction]) -> None:
        if len(omega) != len(self.level2):
            raise CochainError("circle cochain must have one value per 2-simplex")
        check_circle_real(self.level2, omega)
        if any(circle_coboundary(self.G, 2, omega)):
            raise CochainError("circle cochain is not a cocycle")

    def delta_class(self, delta: Sequence[int]) -> Tuple[int, ...]:
        coords = self.C1.coordinates([(v % 2,) for v in delta])
        return tuple(self.H1.coordinates(coords))

    def omega_class(self, omega: Sequence[Fraction]) -> Tuple[int, ...]:
        out = []
        for z, m in zip(self.H2.generators, self.H2.orders):
            val = self.M2.evaluate(omega, z)
            x = val * m
            if x.denominator != 1:
                raise CochainError("cochain is not a cocycle on the cycle lattice")
            out.append(int(x) % m)
        return tuple(out)

    def normal_form(self, delta: Sequence[int], omega: Sequence[Fraction]) -> GradedExtensionClass:
        return GradedExtensionClass(self.G.name, self.delta_class(delta),
                                    self.omega_class(omega))

    def delta_representative(self, coords: Sequence[int]) -> List[int]:
        v = self.H1.representative(coords)
        full = self.C1.cochain(self.C1.reduce(v))
        return [a[0] for a in full]

    @cached_property
    def _character_data(self):
        """SNF of N = M_2 / (im boundary + relations) for extending characters."""
        M2 = self.M2
        B = twisted_boundary(self.G, 2)
        upper = twisted_chain_group(self.G, 3)
        cols = [[row[j] for row in B] for j in range(upper.ngens)]
        for i, m in enumerate(M2.moduli):
            if m:
                cols.append([m if t == i else 0 for t in range(M2.ngens)])
        R = [[c[i] for c in cols] for i in range(M2.ngens)]
        s = smith_normal_form(R, len(cols), right=False)
        d = [s.D[i][i] if i < s.rank else 0 for i in range(M2.ngens)]
        E = reduce(_lcm, [x for x in d if x] + [1])
        return s.U, d, E

    def omega_representative(self, coords: Sequence[int]) -> List[Fraction]:
        """A Real circle 2-cocycle with the given fingerprint."""
        U, d, E = self._character_data
        targets = [Fraction(c, m) for c, m in zip(coords, self.H2.orders)]
        for m in self.H2.orders:
            E = _lcm(E, m)
        torsion = [j for j, x in enumerate(d) if x > 1]
        # unknowns b_j with phi_j = b_j / d_j; equations mod 1 scaled by E
        rows, rhs = [], []
        for z, t in zip(self.H2.generators, targets):
            y = matvec(U, z)
            rows.append([(E // d[j]) * y[j] for j in torsion])
            rhs.append(int(t * E))
        k = len(torsion)
        nz = len(rows)
        M = [r + [E if i == t else 0 for t in range(nz)] for i, r in enumerate(rows)]
        sol = solve(M, rhs, k + nz) if nz else [0] * k
        if sol is None:
            raise ExtensionError("no cocycle with the requested fingerprint")
        phi = [Fraction(0)] * len(d)
        for j, b in zip(torsion, sol[:k]):
            phi[j] = Fraction(b, d[j]) % 1
        gen_value = []
        for g in range(self.M2.ngens):
            e = [int(i == g) for i in range(self.M2.ngens)]
            y = matvec(U, e)
            gen_value.append(sum((p * yj for p, yj in zip(phi, y)), Fraction(0)) % 1)
        out = []
        for x in range(len(self.level2)):
            g, sign = self.M2.chain(x)
            out.append((sign * gen_value[g]) % 1)
        return out

    def representative(self, e: GradedExtensionClass) -> Tuple[List[int], List[Fraction]]:
        self._check(e)
        return self.delta_representative(e.delta), self.omega_representative(e.omega)

    def multiply_cocycles(self, c1, c2):
        """Twisted product of cocycle pairs (delta, omega)."""
        (d1, w1), (d2, w2) = c1, c2
        delta = [(a + b) % 2 for a, b in zip(d1, d2)]
        twist = iota(cup_product(self.G, d1, d2))
        omega = [(a + b + t) % 1 for a, b, t in zip(w1, w2, twist)]
        return delta, omega

    def inverse_cocycles(self, c):
        d, w = c
        twist = iota(cup_product(self.G, d, d))
        return list(d), [(-a - t) % 1 for a, t in zip(w, twist)]

    # class level ----------------------------------------------------------

    def multiply(self, e1: GradedExtensionClass, e2: GradedExtensionClass) -> GradedExtensionClass:
        self._check(e1)
        self._check(e2)
        d, w = self.multiply_cocycles(self.representative(e1), self.representative(e2))
        return self.normal_form(d, w)

    def inverse(self, e: GradedExtensionClass) -> GradedExtensionClass:
        d, w = self.inverse_cocycles(self.representative(e))
        inv = self.normal_form(d, w)
        if self.multiply(e, inv) != self.identity():
            raise AssertionError("computed inverse does not invert")
        return inv

    def power(self, e: GradedExtensionClass, k: int) -> GradedExtensionClass:
        out = self.identity()
        for _ in range(k):
            out = self.multiply(out, e)
        return out

    def element_order(self, e: GradedExtensionClass) -> int:
        x, k = e, 1
        while x != self.identity():
            x = self.multiply(x, e)
            k += 1
        return k

    def cayley_table(self) -> Tuple[List[GradedExtensionClass], List[List[int]]]:
        elems = self.elements()
        if len(elems) > TABLE_LIMIT:
            raise BudgetExceeded(f"group of order {len(elems)} is too large for a table")
        index = {e: i for i, e in enumerate(elems)}
        reps = [self.representative(e) for e in elems]
        table = [[index[self.normal_form(*self.multiply_cocycles(a, b))] for b in reps]
                 for a in reps]
        return elems, table

    @cached_property
    def invariants(self) -> AbelianGroupInvariants:
        elems, table = self.cayley_table()
        return _invariants_from_table(table, self.order)

    def splits(self) -> bool:
        """Whether HR^2 -> Ext -> HR^1 admits a homomorphic section."""
        k = len(self.delta_orders)
        omegas = list(itertools.product(*(range(m) for m in self.omega_orders)))
        for i, m in enumerate(self.delta_orders):
            delta = tuple(int(j == i) for j in range(k))
            if not any(self.power(GradedExtensionClass(self.G.name, delta, w), m)
                       == self.identity() for w in omegas):
                return False
        return True


def _invariants_from_table(table: List[List[int]], order: int) -> AbelianGroupInvariants:
    """Invariants of a finite abelian group from its Cayley table (identity at 0)."""
    if order == 1:
        return AbelianGroupInvariants()
    n = len(table)

    def power(x, k):
        y = 0
        for _ in range(k):
            y = table[y][x]
        return y

    counts = {}
    N, p = order, 2
    primes = []
    while p * p <= N:
        if N % p == 0:
            primes.append(p)
            while N % p == 0:
                N //= p
        p += 1
    if N > 1:
        primes.append(N)
    for p in primes:
        seq, k = [], 1
        while True:
            seq.append(sum(1 for x in range(n) if power(x, p ** k) == 0))
            if len(seq) > 1 and seq[-1] == seq[-2]:
                break
            k += 1
        counts[p] = seq
    return from_prime_power_counts(counts)


def extension_group(G: RealGroupoid) -> ExtensionGroup:
    cache = G.__dict__
    if "_extension_group" not in cache:
        cache["_extension_group"] = ExtensionGroup(G)
    return cache["_extension_group"]


def ext_multiply(G: RealGroupoid, e1: GradedExtensionClass,
                 e2: GradedExtensionClass) -> GradedExtensionClass:
    return extension_group(G).multiply(e1, e2)


def ext_inverse(G: RealGroupoid, e: GradedExtensionClass) -> GradedExtensionClass:
    return extension_group(G).inverse(e)


# Brauer group -------------------------------------------------------------

@dataclass(frozen=True)
class BrauerElement:
    type_class: Tuple[int, ...]          # coordinates in HR^0(G, Z8)
    graded_class: GradedExtensionClass

    def to_dict(self) -> dict:
        return {"type": list(self.type_class), **self.graded_class.to_dict()}


SWAP_WARNING = ("two-piece groupoid: the type component is computed as HR^0(G, Z8) "
                "with trivial involution on Z8, which differs from the Z2 expected "
                "from the folding picture for the swapped point")


@dataclass
class BrauerReport:
    type_component: AbelianGroupInvariants
    grading_component: AbelianGroupInvariants
    twist_component: AbelianGroupInvariants
    extension: AbelianGroupInvariants
    total: AbelianGroupInvariants
    order: int
    splits: bool
    warnings: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"type_component": self.type_component.to_dict(),
                "grading_component": self.grading_component.to_dict(),
                "twist_component": self.twist_component.to_dict(),
                "extension": self.extension.to_dict(),
                "total": self.total.to_dict(),
                "order": self.order, "cyclic": self.total.is_cyclic,
                "splits": self.splits, "warnings": list(self.warnings)}


class BrauerGroup:
    """HR^0(G, Z8) + Ext(G), with Z8 carrying the trivial involution."""

    def __init__(self, G: RealGroupoid, config: EngineConfig = CONFIG):
        self.G = G
        self.H0 = cohomology_group(G, 0, Z8, config)
        self.ext = extension_group(G)

    @property
    def type_orders(self) -> Tuple[int, ...]:
        return tuple(self.H0.orders)

    @property
    def order(self) -> int:
        n = self.ext.order
        for m in self.type_orders:
            n *= m
        return n

    def identity(self) -> BrauerElement:
        return BrauerElement((0,) * len(self.type_orders), self.ext.identity())

    def element(self, type_class, delta=(), omega=()) -> BrauerElement:
        t = tuple(x % m for x, m in zip(type_class, self.type_orders))
        if len(t) != len(self.type_orders):
            raise ExtensionError("type coordinates have the wrong length")
        return BrauerElement(t, self.ext.element(delta, omega))

    def elements(self) -> List[BrauerElement]:
        types = itertools.product(*(range(m) for m in self.type_orders))
        exts = self.ext.elements()
        return [BrauerElement(t, e) for t in types for e in exts]

    def type_function(self, b: BrauerElement) -> List[int]:
        """The Z8-valued invariant function on objects of the type class."""
        v = self.H0.representative(b.type_class)
        C0 = real_cochain_group(self.G, 0, Z8)
        return [a[0] for a in C0.cochain(C0.reduce(v))]

    def add(self, b1: BrauerElement, b2: BrauerElement) -> BrauerElement:
        t = tuple((x + y) % m for x, y, m in zip(b1.type_class, b2.type_class,
                                                  self.type_orders))
        return BrauerElement(t, self.ext.multiply(b1.graded_class, b2.graded_class))

    def inverse(self, b: BrauerElement) -> BrauerElement:
        t = tuple(-x % m for x, m in zip(b.type_class, self.type_orders))
        return BrauerElement(t, self.ext.inverse(b.graded_class))

    def report(self) -> BrauerReport:
        type_inv = AbelianGroupInvariants.from_orders(self.type_orders)
        warn = []
        if self.G.is_two_piece:
            warn.append(SWAP_WARNING)
        return BrauerReport(
            type_component=type_inv,
            grading_component=AbelianGroupInvariants.from_orders(self.ext.delta_orders),
            twist_component=AbelianGroupInvariants.from_orders(self.ext.omega_orders),
            extension=self.ext.invariants,
            total=type_inv + self.ext.invariants,
            order=self.order,
            splits=self.ext.splits(),
            warnings=warn)


def brauer_group(G: RealGroupoid) -> BrauerGroup:
    cache = G.__dict__
    if "_brauer_group" not in cache:
        cache["_brauer_group"] = BrauerGroup(G)
    return cache["_brauer_group"]


def brauer_add(G: RealGroupoid, b1: BrauerElement, b2: BrauerElement) -> BrauerElement:
    return brauer_group(G).add(b1, b2)


def brauer_inverse(G: RealGroupoid, b: BrauerElement) -> BrauerElement:
    return brauer_group(G).inverse(b)
