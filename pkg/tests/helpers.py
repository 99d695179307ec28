"""Cached builders shared by the test modules."""

from functools import lru_cache

from algd.constructions import (
    cocycle_smash,
    connes_moscovici,
    es_algebroid,
    hopf_galois,
    pair_algebroid,
    self_crossed_algebroid,
    validate,
    weyl_algebroid,
    weyl_data,
)
from algd.field import GF, QQ
from algd.groups import cyclic_group, symmetric_group_s3
from algd.hopf import function_algebra, group_algebra


def translation_action(g):
    """x |> delta_u = delta_{xu} as a tensor act[h][b] -> vector."""
    n = g.order
    return [[{g.mul(x, u): 1} for u in range(n)] for x in range(n)]


@lru_cache(maxsize=None)
def kz(n: int, p: int | None = None):
    return group_algebra(cyclic_group(n), QQ if p is None else GF(p))


@lru_cache(maxsize=None)
def fz(n: int, p: int | None = None):
    return function_algebra(cyclic_group(n), QQ if p is None else GF(p))


@lru_cache(maxsize=None)
def weyl(n: int = 2, p: int = 3):
    """(L, HopfData, H*) for the Weyl algebroid of kZ_n over F_p."""
    return weyl_algebroid(kz(n, p))


@lru_cache(maxsize=None)
def weyl_yd(n: int = 2, p: int = 3):
    return weyl_data(kz(n, p))[0]


@lru_cache(maxsize=None)
def cm(p: int | None = None):
    g = cyclic_group(2)
    return connes_moscovici(kz(2, p), fz(2, p).alg, translation_action(g))


@lru_cache(maxsize=None)
def smash(p: int | None = None):
    g = cyclic_group(2)
    return cocycle_smash(kz(2, p), fz(2, p).alg, translation_action(g))


@lru_cache(maxsize=None)
def galois(p: int | None = None):
    P = kz(2, p)
    return hopf_galois(P.alg, P, P.coalg.cop)


@lru_cache(maxsize=None)
def es(p: int | None = None):
    return es_algebroid(galois(p))


@lru_cache(maxsize=None)
def self_crossed_s3():
    return self_crossed_algebroid(group_algebra(symmetric_group_s3(), QQ))


@lru_cache(maxsize=None)
def pair(n: int = 2, p: int | None = None):
    l = pair_algebroid(kz(n, p).alg)
    return l, validate(l)
