"""Sparse tensors keyed by index tuples, and Sweedler-sum evaluation."""

from __future__ import annotations

from itertools import product
from typing import Callable, Sequence

from .linalg import Vec


def tensor(red: Callable, *vecs: Vec) -> dict:
    out = {(): 1}
    for v in vecs:
        new = {}
        for k, c in out.items():
            for i, d in v.items():
                new[k + (i,)] = c * d
        out = new
    return {k: red(c) for k, c in out.items() if red(c)}


def tensor_tensors(red: Callable, *ts: dict) -> dict:
    """Concatenate tensors (outer product of tuple-keyed tensors)."""
    out = {(): 1}
    for t in ts:
        new = {}
        for k, c in out.items():
            for k2, d in t.items():
                new[k + k2] = c * d
        out = new
    return {k: red(c) for k, c in out.items() if red(c)}


def tmap(T: dict, fn: Callable[[tuple], dict], red: Callable) -> dict:
    """Linear extension of ``fn`` (basis tuple -> tensor) applied to ``T``."""
    out: dict = {}
    for k, c in T.items():
        for k2, d in fn(k).items():
            out[k2] = out.get(k2, 0) + c * d
    return {k: y for k, x in out.items() if (y := red(x))}


def splice(T: dict, slot: int, fn: Callable[[int], dict], red: Callable) -> dict:
    """Replace slot ``slot`` by ``fn(index)``.

    ``fn`` returns either an int-keyed vector (slot replaced) or a
    tuple-keyed tensor (slot expanded into several slots).
    """

    def f(k):
        img = fn(k[slot])
        out = {}
        for k2, d in img.items():
            mid = k2 if isinstance(k2, tuple) else (k2,)
            out[k[:slot] + mid + k[slot + 1:]] = d
        return out

    return tmap(T, f, red)


def contract(T: dict, left: int, right: int, mul: Callable[[int, int], Vec], red: Callable) -> dict:
    """Multiply slot ``left`` by slot ``right`` (in that order).

    The product lands at position ``min(left, right)``; the other slot is
    removed.
    """
    pos, gone = min(left, right), max(left, right)

    def f(k):
        out = {}
        for i, d in mul(k[left], k[right]).items():
            nk = list(k)
            nk[pos] = i
            del nk[gone]
            out[tuple(nk)] = d
        return out

    return tmap(T, f, red)


def permute(T: dict, perm: Sequence[int]) -> dict:
    """New key is ``tuple(old[p] for p in perm)``."""
    return {tuple(k[p] for p in perm): c for k, c in T.items()}


def collapse(T: dict, fn: Callable[[tuple], Vec], red: Callable) -> Vec:
    """Linear extension of a map from basis tuples to vectors."""
    out: dict = {}
    for k, c in T.items():
        for i, d in fn(k).items():
            out[i] = out.get(i, 0) + c * d
    return {k: y for k, x in out.items() if (y := red(x))}


class Sweedler:
    """Evaluates products of factors over iterated coproducts.

    ``variables`` maps a name to ``(vector, cop)`` where ``cop[i]`` is the
    (lifted) coproduct of basis element ``i`` as a dict of pairs.  Each factor
    is ``(uses, fn, side)``: ``uses`` lists variable names, one entry per leg
    consumed (legs are consumed in Sweedler order across the factor list);
    ``fn`` receives the leg indices and returns a vector of the target
    algebra; ``side`` is ``"right"`` (accumulator times value) or ``"left"``.
    The last leg of each variable is the remainder of the previous split, so
    the result is evaluated on a lift of the iterated coproduct.
    """

    def __init__(self, mul: Callable[[Vec, Vec], Vec], one: Vec, red: Callable):
        self.mul = mul
        self.one = one
        self.red = red

    def run(self, variables: dict, factors: Sequence[tuple]) -> Vec:
        names = list(variables)
        pos = {n: i for i, n in enumerate(names)}
        remaining = {n: 0 for n in names}
        for uses, _, _ in factors:
            for u in uses:
                remaining[u] += 1
        red = self.red
        states: dict = {}
        for combo in product(*(variables[n][0].items() for n in names)):
            key = tuple(i for i, _ in combo)
            c = 1
            for _, d in combo:
                c *= d
            states[key] = states.get(key, 0) + c
        # states: rest-tuple -> (coefficient-weighted) accumulator
        acc_states = {k: {k2: red(c * x) for k2, x in self.one.items()} for k, c in states.items() if red(c)}
        for uses, fn, side in factors:
            new_states: dict = {}
            for rest, acc in acc_states.items():
                branches = [((), list(rest), 1)]
                for u in uses:
                    p = pos[u]
                    nb = []
                    for legs, r, c in branches:
                        cur = r[p]
                        if self._last(u, remaining, uses, legs, names):
                            r2 = list(r)
                            r2[p] = None
                            nb.append((legs + (cur,), r2, c))
                        else:
                            for (a, b), d in variables[u][1][cur].items():
                                r2 = list(r)
                                r2[p] = b
                                nb.append((legs + (a,), r2, c * d))
                    branches = nb
                for legs, r, c in branches:
                    val = fn(*legs)
                    if not val:
                        continue
                    prod_ = self.mul(acc, val) if side == "right" else self.mul(val, acc)
                    if not prod_:
                        continue
                    key = tuple(r)
                    tgt = new_states.setdefault(key, {})
                    for i, x in prod_.items():
                        tgt[i] = tgt.get(i, 0) + c * x
            for u in uses:
                remaining[u] -= 1
            acc_states = {}
            for key, v in new_states.items():
                v = {i: y for i, x in v.items() if (y := red(x))}
                if v:
                    acc_states[key] = v
        out: dict = {}
        for v in acc_states.values():
            for i, x in v.items():
                out[i] = out.get(i, 0) + x
        return {i: y for i, x in out.items() if (y := red(x))}

    @staticmethod
    def _last(u, remaining, uses, legs, names) -> bool:
        # legs of u already taken within this factor
        taken = sum(1 for x in uses[: len(legs)] if x == u)
        return remaining[u] - taken == 1
