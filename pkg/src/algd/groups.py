"""Finite groups given by multiplication tables (index 0 is the identity)."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from .errors import NotAGroup


@dataclass(frozen=True)
class FiniteGroup:
    table: tuple
    labels: tuple = ()

    def __post_init__(self):
        table = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", table)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"g{i}" for i in range(len(table))))
        self._validate()

    def _validate(self) -> None:
        n = len(self.table)
        t = self.table
        if n == 0 or any(len(r) != n for r in t):
            raise NotAGroup("multiplication table must be square and nonempty")
        if any(not 0 <= x < n for r in t for x in r):
            raise NotAGroup("table entries out of range")
        for i in range(n):
            if t[0][i] != i or t[i][0] != i:
                raise NotAGroup("index 0 is not a two-sided identity", witness={"element": i})
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if t[t[a][b]][c] != t[a][t[b][c]]:
                        raise NotAGroup("table is not associative", witness={"triple": [a, b, c]})
        for a in range(n):
            if 0 not in t[a]:
                raise NotAGroup("element has no inverse", witness={"element": a})

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.table[a].index(0)

    def elements(self) -> range:
        return range(self.order)

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in self.elements() for b in self.elements())

    def is_subgroup(self, subset: Sequence[int]) -> bool:
        s = set(subset)
        return 0 in s and all(self.mul(a, self.inv(b)) in s for a in s for b in s)

    def automorphisms(self) -> list[tuple[int, ...]]:
        """All automorphisms as permutations of indices (brute force)."""
        n = self.order
        out = []
        for perm in permutations(range(1, n)):
            f = (0,) + perm
            if all(f[self.mul(a, b)] == self.mul(f[a], f[b]) for a in range(n) for b in range(n)):
                out.append(f)
        return out


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), tuple(f"g^{a}" for a in range(n)))


def symmetric_group_s3() -> FiniteGroup:
    """S_3 with elements as permutation tuples, composition (p*q)(x) = p(q(x))."""
    perms = [(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1)]
    index = {p: i for i, p in enumerate(perms)}

    def comp(p, q):
        return tuple(p[q[x]] for x in range(3))

    table = tuple(tuple(index[comp(p, q)] for q in perms) for p in perms)
    labels = ("e", "(01)", "(12)", "(02)", "(012)", "(021)")
    return FiniteGroup(table, labels)
