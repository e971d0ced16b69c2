"""Coefficient groups with involution.

A finitely generated coefficient is presented as Z^k / diag(moduli) (a
modulus of 0 is a free coordinate) together with an integer matrix for the
involution.  The circle group with complex conjugation is a separate tagged
value: it is never represented numerically.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

from .invariants import AbelianGroupInvariants
from .snf import kernel_mod, smith_normal_form, solve


class CoefficientError(ValueError):
    pass


Element = Tuple[int, ...]


@dataclass(frozen=True)
class RealCoefficient:
    moduli: Tuple[int, ...] = ()
    involution: Tuple[Tuple[int, ...], ...] = ()
    tag: Optional[str] = None
    name: str = ""

    def __post_init__(self):
        if self.tag == "circle":
            if self.moduli or self.involution:
                raise CoefficientError("the circle coefficient has no presentation")
            return
        if self.tag is not None:
            raise CoefficientError(f"unknown coefficient tag {self.tag!r}")
        k = len(self.moduli)
        if any(m < 0 or m == 1 for m in self.moduli):
            raise CoefficientError("moduli must be 0 (free) or >= 2")
        if len(self.involution) != k or any(len(r) != k for r in self.involution):
            raise CoefficientError("involution matrix has the wrong shape")
        # well defined on relations and of order <= 2
        for j, m in enumerate(self.moduli):
            if m:
                col = [self.involution[i][j] * m for i in range(k)]
                if self.reduce(col) != (0,) * k:
                    raise CoefficientError("involution does not respect the relations")
        for j in range(k):
            e = [int(i == j) for i in range(k)]
            if self.involve(self.involve(e)) != self.reduce(e):
                raise CoefficientError("involution does not square to the identity")

    # constructors -------------------------------------------------------

    @classmethod
    def cyclic(cls, m: int, sign: int = 1, name: str = "") -> "RealCoefficient":
        """Z/m (m >= 2) or Z (m == 0) with involution x -> sign * x."""
        if sign not in (1, -1):
            raise CoefficientError("sign must be +1 or -1")
        if not name:
            if m == 0:
                name = "Z" if sign == 1 else "Z(0,1)"
            else:
                name = f"Zm({m},{sign:+d})"
        return cls((m,), ((sign,),), name=name)

    @classmethod
    def circle(cls) -> "RealCoefficient":
        return cls(tag="circle", name="S1")

    @classmethod
    def parse(cls, text: str) -> "RealCoefficient":
        """Parse the literal forms Z2, Z8, Z, Z(0,1), Zm(m,+1), Zm(m,-1), S1."""
        t = text.replace(" ", "")
        if t == "S1":
            return cls.circle()
        if t == "Z":
            return cls.cyclic(0, 1)
        if t == "Z(0,1)":
            return cls.cyclic(0, -1)
        m = re.fullmatch(r"Z(\d+)", t)
        if m:
            n = int(m.group(1))
            if n < 2:
                raise CoefficientError(f"bad coefficient literal {text!r}")
            return cls.cyclic(n, 1, name=t)
        m = re.fullmatch(r"Zm\((\d+),([+-]?1)\)", t)
        if m:
            n, s = int(m.group(1)), int(m.group(2))
            if n < 2:
                raise CoefficientError(f"bad coefficient literal {text!r}")
            return cls.cyclic(n, s)
        raise CoefficientError(f"unknown coefficient literal {text!r}")

    # basic properties ---------------------------------------------------

    @property
    def is_circle(self) -> bool:
        return self.tag == "circle"

    @property
    def ngens(self) -> int:
        return len(self.moduli)

    @property
    def is_finite(self) -> bool:
        return not self.is_circle and all(self.moduli)

    @property
    def is_trivial_involution(self) -> bool:
        k = self.ngens
        return all(self.reduce(self.involve([int(i == j) for i in range(k)])) ==
                   self.reduce([int(i == j) for i in range(k)]) for j in range(k))

    def _require_presented(self):
        if self.is_circle:
            raise CoefficientError("operation not supported for circle coefficients")

    @cached_property
    def invariants(self) -> AbelianGroupInvariants:
        self._require_presented()
        return AbelianGroupInvariants.from_orders(self.moduli)

    @property
    def order(self) -> Optional[int]:
        self._require_presented()
        return self.invariants.order

    def __str__(self) -> str:
        return self.name or f"A{self.moduli}"

    # element arithmetic -------------------------------------------------

    def reduce(self, v: Sequence[int]) -> Element:
        return tuple(x % m if m else x for x, m in zip(v, self.moduli))

    def zero(self) -> Element:
        self._require_presented()
        return (0,) * self.ngens

    def add(self, a: Sequence[int], b: Sequence[int]) -> Element:
        self._require_presented()
        return self.reduce([x + y for x, y in zip(a, b)])

    def neg(self, a: Sequence[int]) -> Element:
        self._require_presented()
        return self.reduce([-x for x in a])

    def scale(self, k: int, a: Sequence[int]) -> Element:
        return self.reduce([k * x for x in a])

    def involve(self, a: Sequence[int]) -> Element:
        self._require_presented()
        return self.reduce([sum(s * x for s, x in zip(row, a))
                            for row in self.involution])

    def elements(self) -> List[Element]:
        """All elements, for finite coefficients only."""
        if not self.is_finite:
            raise CoefficientError("cannot enumerate an infinite coefficient group")
        return [tuple(t) for t in itertools.product(*(range(m) for m in self.moduli))]

    @cached_property
    def fixed(self) -> "FixedSubgroup":
        return fixed_subgroup(self)


def element_arithmetic(A: RealCoefficient, op: str, a, b=None,
                       B: Optional[RealCoefficient] = None) -> Element:
    """Dispatch ``add``/``neg``/``involve`` on elements of ``A``."""
    if B is not None and B != A:
        raise CoefficientError("elements belong to different coefficient groups")
    if op == "add":
        return A.add(a, b)
    if op == "neg":
        return A.neg(a)
    if op == "involve":
        return A.involve(a)
    raise CoefficientError(f"unknown operation {op!r}")


@dataclass(frozen=True)
class FixedSubgroup:
    """A^sigma = {a : sigma(a) = a}, with a cyclic decomposition.

    ``generators[i]`` is an element of A (in A's coordinates) of order
    ``orders[i]`` (0 = infinite); the subgroup is their direct sum.
    """
    coefficient: RealCoefficient
    generators: Tuple[Element, ...]
    orders: Tuple[int, ...]

    @property
    def invariants(self) -> AbelianGroupInvariants:
        return AbelianGroupInvariants.from_orders(self.orders)

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def embed(self, coords: Sequence[int]) -> Element:
        A = self.coefficient
        v = [0] * A.ngens
        for c, g in zip(coords, self.generators):
            for i, x in enumerate(g):
                v[i] += c * x
        return A.reduce(v)

    def coordinates(self, a: Sequence[int]) -> Tuple[int, ...]:
        """Coordinates of a fixed element with respect to ``generators``."""
        return self._coords(tuple(a))

    def _coords(self, a):
        cache = self.__dict__.setdefault("_cache", {})
        if a in cache:
            return cache[a]
        A = self.coefficient
        k, f = A.ngens, self.ngens
        # solve sum_j c_j g_j + diag(moduli) w = a
        M = [[self.generators[j][i] for j in range(f)] +
             [A.moduli[i] if i == t else 0 for t in range(k)] for i in range(k)]
        x = solve(M, list(a), f + k)
        if x is None:
            raise CoefficientError(f"{a} is not fixed by the involution")
        c = tuple(xi % m if m else xi for xi, m in zip(x[:f], self.orders))
        cache[a] = c
        return c


def fixed_subgroup(A: RealCoefficient) -> FixedSubgroup:
    """Cyclic decomposition of the fixed subgroup of ``A``."""
    if A.is_circle:
        raise CoefficientError("fixed subgroup of the circle is handled symbolically")
    k = A.ngens
    S_minus_I = [[A.involution[i][j] - int(i == j) for j in range(k)]
                 for i in range(k)]
    K = kernel_mod(S_minus_I, k, A.moduli)
    r = len(K)
    if r == 0:
        return FixedSubgroup(A, (), ())
    # relations of A expressed in the basis K
    B = [[K[j][i] for j in range(r)] for i in range(k)]
    sB = smith_normal_form(B, r)
    rel_cols = []
    for i, m in enumerate(A.moduli):
        if m:
            e = [m if t == i else 0 for t in range(k)]
            y = solve(None, e, r, snf=sB)
            rel_cols.append(y)
    C = [[col[i] for col in rel_cols] for i in range(r)] if rel_cols else [[] for _ in range(r)]
    sC = smith_normal_form(C, len(rel_cols), right=False)
    gens, orders = [], []
    for i in range(r):
        d = sC.D[i][i] if i < sC.rank else 0
        if d == 1:
            continue
        y = [sC.Uinv[row][i] for row in range(r)]
        g = [sum(B[t][j] * y[j] for j in range(r)) for t in range(k)]
        gens.append(A.reduce(g))
        orders.append(d)
    return FixedSubgroup(A, tuple(gens), tuple(orders))


Z2 = RealCoefficient.cyclic(2, 1, name="Z2")
Z8 = RealCoefficient.cyclic(8, 1, name="Z8")
Z = RealCoefficient.cyclic(0, 1)
Z01 = RealCoefficient.cyclic(0, -1)
S1 = RealCoefficient.circle()
