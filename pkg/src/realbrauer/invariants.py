"""Canonical form of finitely generated abelian groups."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

from .snf import smith_normal_form


def _divisor_chain(orders: Iterable[int]) -> Tuple[int, ...]:
    orders = [abs(int(m)) for m in orders]
    orders = [m for m in orders if m not in (0, 1)]
    if not orders:
        return ()
    k = len(orders)
    D = [[orders[i] if i == j else 0 for j in range(k)] for i in range(k)]
    s = smith_normal_form(D, k, left=False, right=False)
    return tuple(d for d in s.diagonal if d != 1)


@dataclass(frozen=True)
class AbelianGroupInvariants:
    """Z^rank + S1^circles + Z/m1 + ... + Z/mk with m1 | m2 | ... | mk.

    ``circles`` counts circle-group summands; it is nonzero only for
    groups computed with circle coefficients.
    """
    rank: int = 0
    torsion: Tuple[int, ...] = ()
    circles: int = 0

    def __post_init__(self):
        object.__setattr__(self, "torsion", _divisor_chain(self.torsion))

    @classmethod
    def from_orders(cls, orders: Iterable[int], circles: int = 0):
        """Build from arbitrary cyclic orders; 0 stands for a copy of Z."""
        orders = list(orders)
        return cls(rank=sum(1 for m in orders if m == 0),
                   torsion=tuple(m for m in orders if m),
                   circles=circles)

    @property
    def order(self) -> Optional[int]:
        if self.rank or self.circles:
            return None
        n = 1
        for m in self.torsion:
            n *= m
        return n

    @property
    def is_trivial(self) -> bool:
        return not self.rank and not self.circles and not self.torsion

    @property
    def is_cyclic(self) -> bool:
        return self.circles == 0 and self.rank + len(self.torsion) <= 1

    def __add__(self, other: "AbelianGroupInvariants") -> "AbelianGroupInvariants":
        return AbelianGroupInvariants(self.rank + other.rank,
                                      self.torsion + other.torsion,
                                      self.circles + other.circles)

    def __mul__(self, k: int) -> "AbelianGroupInvariants":
        return AbelianGroupInvariants(self.rank * k, self.torsion * k,
                                      self.circles * k)

    def __str__(self) -> str:
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        if self.circles:
            parts.append("S1" if self.circles == 1 else f"S1^{self.circles}")
        parts.extend(f"Z/{m}" for m in self.torsion)
        return " + ".join(parts) if parts else "0"

    def to_dict(self) -> dict:
        return {"rank": self.rank, "circles": self.circles,
                "torsion": list(self.torsion), "text": str(self)}


TRIVIAL = AbelianGroupInvariants()


def from_prime_power_counts(counts: dict) -> AbelianGroupInvariants:
    """Invariants of a finite abelian group from |G[p^k]| data.

    ``counts[p]`` is the list [|G[p]|, |G[p^2]|, ...] run until it
    stabilises; |G[p^k]| = p^(sum_i min(k, e_i)) determines the e_i.
    """
    orders = []
    for p, seq in counts.items():
        logs = [0]
        for c in seq:
            e, x = 0, c
            while x % p == 0 and x > 1:
                x //= p
                e += 1
            if x != 1:
                raise ValueError(f"{c} is not a power of {p}")
            logs.append(e)
        # number of cyclic factors of order >= p^k is logs[k] - logs[k-1]
        at_least = [logs[k] - logs[k - 1] for k in range(1, len(logs))]
        at_least.append(0)
        for k in range(1, len(at_least)):
            exact = at_least[k - 1] - at_least[k]
            orders.extend([p ** k] * exact)
    return AbelianGroupInvariants(torsion=tuple(orders))
