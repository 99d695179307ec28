"""Naive brute-force oracles over small prime fields.

These deliberately avoid the package's linear-algebra and enumeration code:
structure tensors are expanded to dense lists and every candidate map is
checked against the defining equations directly.
"""

from itertools import product


def dense(v: dict, n: int, p: int) -> tuple:
    out = [0] * n
    for k, c in v.items():
        out[k] = (out[k] + c) % p
    return tuple(out)


def _rank(rows: list, p: int) -> int:
    a = [list(r) for r in rows]
    r = 0
    cols = len(a[0]) if a else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(a)) if a[i][c] % p), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] % p:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        r += 1
    return r


class DenseAlgebroid:
    """Dense copies of the structure tensors of a left bialgebroid over F_p."""

    def __init__(self, l):
        p = l.field.p
        n, m = l.n, l.m
        self.p, self.n, self.m = p, n, m
        self.L = [[dense(l.total.table[x][y], n, p) for y in range(n)] for x in range(n)]
        self.B = [[dense(l.base.table[a][b], m, p) for b in range(m)] for a in range(m)]
        self.oneL = dense(l.total.one(), n, p)
        self.oneB = dense(l.base.one(), m, p)
        self.s = [dense(v, n, p) for v in l.s]
        self.t = [dense(v, n, p) for v in l.t]
        self.eps = [dense(v, m, p) for v in l.eps]
        self.delta = [dict(d) for d in l.delta]

    def lmul(self, x: tuple, y: tuple) -> tuple:
        out = [0] * self.n
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        for k, c in enumerate(self.L[i][j]):
                            out[k] += a * b * c
        return tuple(v % self.p for v in out)

    def bmul(self, x: tuple, y: tuple) -> tuple:
        out = [0] * self.m
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        for k, c in enumerate(self.B[i][j]):
                            out[k] += a * b * c
        return tuple(v % self.p for v in out)

    def apply(self, f: tuple, x: tuple) -> tuple:
        """f is a tuple of n column vectors of length m."""
        out = [0] * self.m
        for i, a in enumerate(x):
            if a:
                for k, c in enumerate(f[i]):
                    out[k] += a * c
        return tuple(v % self.p for v in out)

    def lift_b(self, imgs: list, b: tuple) -> tuple:
        out = [0] * self.n
        for i, a in enumerate(b):
            if a:
                for k, c in enumerate(imgs[i]):
                    out[k] += a * c
        return tuple(v % self.p for v in out)

    def unit(self, i: int) -> tuple:
        return tuple(int(k == i) for k in range(self.n))

    def bunit(self, i: int) -> tuple:
        return tuple(int(k == i) for k in range(self.m))

    def all_maps(self):
        cols = list(product(range(self.p), repeat=self.m))
        return product(cols, repeat=self.n)


def bisections(l, side: str = "left") -> set:
    """All left (right) bisections sigma: L -> B, as tuples of columns."""
    d = DenseAlgebroid(l)
    anchor, other = (d.s, d.t) if side == "left" else (d.t, d.s)
    out = set()
    for f in d.all_maps():
        if d.apply(f, d.oneL) != d.oneB:
            continue
        ok = True
        for b in range(d.m):
            for X in range(d.n):
                lhs = d.apply(f, d.lmul(other[b], d.unit(X)))
                rhs = d.bmul(f[X], d.bunit(b)) if side == "left" else d.bmul(d.bunit(b), f[X])
                if lhs != rhs:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        base = [d.apply(f, anchor[b]) for b in range(d.m)]
        if _rank(base, d.p) < d.m:
            continue
        for a in range(d.m):
            for b in range(d.m):
                prod = _combine(base, d.B[a][b], d.p)
                if prod != d.bmul(base[a], base[b]):
                    ok = False
        if not ok:
            continue
        for X in range(d.n):
            for Y in range(d.n):
                lhs = d.apply(f, d.L[X][Y])
                rhs = d.apply(f, d.lmul(d.unit(X), d.lift_b(other, f[Y])))
                if lhs != rhs:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.add(f)
    return out


def _combine(cols: list, v: tuple, p: int) -> tuple:
    m = len(cols[0])
    out = [0] * m
    for i, a in enumerate(v):
        if a:
            for k in range(m):
                out[k] += a * cols[i][k]
    return tuple(x % p for x in out)


def balanced_unital_maps(l) -> list:
    """Unital maps U with U(t(b)X) = U(X)b, U(s(b)X) = bU(X), U(Xs(b)) = U(Xt(b))."""
    d = DenseAlgebroid(l)
    out = []
    for f in d.all_maps():
        if d.apply(f, d.oneL) != d.oneB:
            continue
        ok = True
        for b in range(d.m):
            for X in range(d.n):
                x = d.unit(X)
                if d.apply(f, d.lmul(d.t[b], x)) != d.bmul(f[X], d.bunit(b)):
                    ok = False
                elif d.apply(f, d.lmul(d.s[b], x)) != d.bmul(d.bunit(b), f[X]):
                    ok = False
                elif d.apply(f, d.lmul(x, d.s[b])) != d.apply(f, d.lmul(x, d.t[b])):
                    ok = False
                if not ok:
                    break
            if not ok:
                break
        if ok:
            out.append(f)
    return out


def convolve(d: DenseAlgebroid, U: tuple, V: tuple) -> tuple:
    cols = []
    for X in range(d.n):
        acc = [0] * d.m
        for (x1, x2), c in d.delta[X].items():
            w = d.bmul(U[x1], V[x2])
            for k in range(d.m):
                acc[k] += c * w[k]
        cols.append(tuple(a % d.p for a in acc))
    return tuple(cols)


def extended_cochains(l) -> set:
    """Balanced unital maps with a two-sided convolution inverse among them."""
    d = DenseAlgebroid(l)
    cands = balanced_unital_maps(l)
    eps = tuple(d.eps)
    out = set()
    for U in cands:
        if any(convolve(d, U, V) == eps and convolve(d, V, U) == eps for V in cands):
            out.add(U)
    return out


def counital_invertible_functions(order: int, p: int) -> set:
    """alpha: G -> F_p with alpha(e) = 1 and every value a unit (pointwise product)."""
    return {v for v in product(range(p), repeat=order) if v[0] == 1 and all(v)}


def counital_algebra_autos_of_functions(order: int, p: int) -> set:
    """Counital unital algebra automorphisms of k(G) = k^order, as matrices (column tuples)."""
    out = set()
    for cols in product(product(range(p), repeat=order), repeat=order):
        # phi(delta_i) = cols[i]; unital: sum of columns is all-ones
        if any(sum(c[k] for c in cols) % p != 1 for k in range(order)):
            continue
        if _rank(list(cols), p) < order:
            continue
        ok = all(
            tuple(cols[i][k] * cols[j][k] % p for k in range(order)) == (cols[i] if i == j else (0,) * order)
            for i in range(order)
            for j in range(order)
        )
        # counit of k(G) evaluates at the identity element 0
        if ok and all(cols[i][0] == int(i == 0) for i in range(order)):
            out.add(tuple(cols))
    return out


def action_cocycles(yd, p: int) -> set:
    """rho: H -> B unital with rho(gh) = (rho(g) <| h1) rho(h2) and psi bijective multiplicative."""
    h, b = yd.h, yd.b
    nh, m = h.dim, b.dim
    Bt = [[dense(b.table[i][j], m, p) for j in range(m)] for i in range(m)]
    Ht = [[dense(h.alg.table[i][j], nh, p) for j in range(nh)] for i in range(nh)]
    act = [[dense(yd.act[a][x], m, p) for x in range(nh)] for a in range(m)]
    oneH = dense(h.one(), nh, p)
    oneB = dense(b.one(), m, p)

    def bm(x, y):
        out = [0] * m
        for i, a in enumerate(x):
            for j, c in enumerate(y):
                if a and c:
                    for k, e in enumerate(Bt[i][j]):
                        out[k] += a * c * e
        return tuple(v % p for v in out)

    def ap(rho, x):
        return _combine(list(rho), x, p)

    def right(a, x):
        out = [0] * m
        for i, c in enumerate(a):
            if c:
                for k, e in enumerate(act[i][x]):
                    out[k] += c * e
        return tuple(v % p for v in out)

    out = set()
    for rho in product(product(range(p), repeat=m), repeat=nh):
        if ap(rho, oneH) != oneB:
            continue
        ok = True
        for g in range(nh):
            for x in range(nh):
                rhs = [0] * m
                for (x1, x2), c in h.coalg.cop[x].items():
                    w = bm(right(rho[g], x1), rho[x2])
                    for k in range(m):
                        rhs[k] += c * w[k]
                if ap(rho, Ht[g][x]) != tuple(v % p for v in rhs):
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        psi = []
        for a in range(m):
            acc = [0] * m
            for (a0, a1), c in yd.coact[a].items():
                w = bm(tuple(int(k == a0) for k in range(m)), rho[a1])
                for k in range(m):
                    acc[k] += c * w[k]
            psi.append(tuple(v % p for v in acc))
        if _rank(psi, p) < m:
            continue
        if all(_combine(psi, Bt[i][j], p) == bm(psi[i], psi[j]) for i in range(m) for j in range(m)):
            out.add(rho)
    return out


def gauge_automorphisms(hg) -> set:
    """Unital multiplicative colinear invertible maps P -> P over F_p."""
    P = hg.p
    p = P.field.p
    m = P.dim
    T = [[dense(P.table[i][j], m, p) for j in range(m)] for i in range(m)]
    one = dense(P.one(), m, p)
    out = set()
    for cols in product(product(range(p), repeat=m), repeat=m):
        if _combine(list(cols), one, p) != one or _rank(list(cols), p) < m:
            continue

        def pm(x, y):
            acc = [0] * m
            for i, a in enumerate(x):
                for j, c in enumerate(y):
                    if a and c:
                        for k, e in enumerate(T[i][j]):
                            acc[k] += a * c * e
            return tuple(v % p for v in acc)

        if not all(_combine(list(cols), T[i][j], p) == pm(cols[i], cols[j]) for i in range(m) for j in range(m)):
            continue
        ok = True
        for a in range(m):
            lhs: dict = {}
            for k, c in enumerate(cols[a]):
                for key, d in hg.coact[k].items():
                    lhs[key] = (lhs.get(key, 0) + c * d) % p
            rhs: dict = {}
            for (a0, a1), c in hg.coact[a].items():
                for k, d in enumerate(cols[a0]):
                    rhs[(k, a1)] = (rhs.get((k, a1), 0) + c * d) % p
            if {k: v for k, v in lhs.items() if v} != {k: v for k, v in rhs.items() if v}:
                ok = False
                break
        if ok:
            out.add(cols)
    return out


def as_columns(linmap, m: int, p: int) -> tuple:
    """A package LinMap as a tuple of dense columns."""
    return tuple(dense(c, m, p) for c in linmap.cols)
