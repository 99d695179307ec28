"""Structure-constant algebras, coalgebras and Hopf algebras.

Structure maps are stored sparsely: ``table[i][j]`` is the product of basis
elements ``i`` and ``j`` as a sparse vector, ``cop[i]`` maps pairs ``(j, k)``
to coefficients of ``e_j (x) e_k`` in the coproduct of ``e_i``.  Functionals on
tensor powers are dicts keyed by index tuples; scalar-valued ones map to
field elements, algebra-valued ones to sparse vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import product
from typing import Callable, Iterable, Sequence

from .errors import NotAGroup, NotInvertible
from .field import Field, Number
from .groups import FiniteGroup
from .linalg import Matrix, SparseSystem, Vec, vadd, vclean, vscale
from .report import LawCheck, Report


# ---------------------------------------------------------------- algebras


class FDAlgebra:
    """Finite-dimensional unital algebra given by structure constants."""

    def __init__(
        self,
        field: Field,
        table: Sequence[Sequence[Vec]],
        unit: Vec,
        labels: Sequence[str] | None = None,
        associative: bool = True,
        name: str = "",
    ):
        self.field = field
        self.dim = len(table)
        red = field.reduce
        self.table = [[vclean({k: field(c) for k, c in table[i][j].items()}, red) for j in range(self.dim)] for i in range(self.dim)]
        self.unit = vclean({k: field(c) for k, c in unit.items()}, red)
        self.labels = list(labels) if labels else [f"e{i}" for i in range(self.dim)]
        self.associative = associative
        self.name = name

    @classmethod
    def from_tensor(cls, field: Field, m, unit: Sequence, labels=None, associative: bool = True, name: str = "") -> "FDAlgebra":
        n = len(m)
        table = [[{k: m[i][j][k] for k in range(n) if field(m[i][j][k])} for j in range(n)] for i in range(n)]
        return cls(field, table, {k: x for k, x in enumerate(unit) if field(x)}, labels, associative, name)

    @property
    def tensor(self) -> list:
        n = self.dim
        out = [[[0] * n for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                for k, c in self.table[i][j].items():
                    out[i][j][k] = c
        return out

    @property
    def unit_dense(self) -> list:
        return [self.unit.get(k, 0) for k in range(self.dim)]

    def one(self) -> Vec:
        return dict(self.unit)

    def basis(self, i: int) -> Vec:
        return {i: 1}

    def mul(self, x: Vec, y: Vec) -> Vec:
        red = self.field.reduce
        table = self.table
        out: dict = {}
        for i, a in x.items():
            row = table[i]
            for j, b in y.items():
                ab = a * b
                for k, c in row[j].items():
                    out[k] = out.get(k, 0) + ab * c
        return vclean(out, red)

    def mul_many(self, *xs: Vec) -> Vec:
        """Left-bracketed product ((x1 x2) x3)..."""
        acc = xs[0]
        for x in xs[1:]:
            acc = self.mul(acc, x)
        return acc

    def add(self, *xs: Vec) -> Vec:
        out: dict = {}
        for x in xs:
            vadd(out, x, 1, self.field.reduce)
        return out

    def scale(self, x: Vec, c: Number) -> Vec:
        return vscale(x, c, self.field.reduce)

    def opposite(self) -> "FDAlgebra":
        n = self.dim
        return FDAlgebra(self.field, [[self.table[j][i] for j in range(n)] for i in range(n)], self.unit, self.labels, self.associative, self.name + "^op")

    def is_commutative(self) -> bool:
        return all(self.table[i][j] == self.table[j][i] for i in range(self.dim) for j in range(i))

    def check(self) -> Report:
        rep = Report(f"algebra {self.name}".strip())
        n = self.dim
        with LawCheck(rep, "unit") as chk:
            for i in range(n):
                e = {i: 1}
                if not chk(self.mul(self.unit, e) == e and self.mul(e, self.unit) == e, basis=(i,)):
                    break
        if self.associative:
            with LawCheck(rep, "associativity") as chk:
                for i, j, k in product(range(n), repeat=3):
                    lhs = self.mul(self.table[i][j], {k: 1})
                    rhs = self.mul({i: 1}, self.table[j][k])
                    if not chk(lhs == rhs, basis=(i, j, k), lhs=lhs, rhs=rhs):
                        break
        return rep

    def left_regular(self, x: Vec) -> Matrix:
        cols = [self.mul(x, {j: 1}) for j in range(self.dim)]
        return Matrix.from_columns(self.field, cols, self.dim)

    def center(self) -> list[Vec]:
        """Basis of the centre, from the linear conditions z e_j = e_j z."""
        n = self.dim
        sysm = SparseSystem(self.field, n)
        for j in range(n):
            rows: dict = {}
            for i in range(n):
                for k, c in self.table[i][j].items():
                    rows.setdefault(k, {})[i] = rows.setdefault(k, {}).get(i, 0) + c
                for k, c in self.table[j][i].items():
                    rows.setdefault(k, {})[i] = rows.setdefault(k, {}).get(i, 0) - c
            for k, r in rows.items():
                sysm.add(r)
        return sysm.kernel()

    def subalgebra_generators(self) -> list[int]:
        """A small set of basis indices generating the algebra (greedy)."""
        from .linalg import Echelon

        red = self.field.reduce
        ech = Echelon(self.field)
        span: list[Vec] = []

        def close(new: Vec) -> None:
            queue = [new]
            while queue:
                v = queue.pop()
                if ech.add(v):
                    span.append(v)
                    for w in list(span):
                        queue.append(self.mul(v, w))
                        queue.append(self.mul(w, v))

        close(self.one())
        gens: list[int] = []
        for i in range(self.dim):
            if ech.reduce({i: 1}):
                gens.append(i)
                close({i: 1})
            if len(ech) == self.dim:
                break
        return gens

    def __repr__(self) -> str:
        return f"FDAlgebra({self.name or '?'}, dim={self.dim}, {self.field})"


# ---------------------------------------------------------------- coalgebras


class FDCoalgebra:
    def __init__(self, field: Field, cop: Sequence[dict], counit: Sequence[Number], labels=None, name: str = ""):
        self.field = field
        self.dim = len(cop)
        red = field.reduce
        self.cop = [vclean({k: field(c) for k, c in d.items()}, red) for d in cop]
        self.counit = [field(c) for c in counit]
        self.labels = list(labels) if labels else [f"e{i}" for i in range(self.dim)]
        self.name = name
        self._iter: dict = {}

    @classmethod
    def from_tensor(cls, field: Field, d, counit, labels=None, name: str = "") -> "FDCoalgebra":
        n = len(d)
        cop = [{(j, k): d[i][j][k] for j in range(n) for k in range(n) if field(d[i][j][k])} for i in range(n)]
        return cls(field, cop, counit, labels, name)

    @property
    def tensor(self) -> list:
        n = self.dim
        out = [[[0] * n for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for (j, k), c in self.cop[i].items():
                out[i][j][k] = c
        return out

    def delta(self, x: Vec) -> dict:
        out: dict = {}
        for i, a in x.items():
            for jk, c in self.cop[i].items():
                out[jk] = out.get(jk, 0) + a * c
        return vclean(out, self.field.reduce)

    def eps(self, x: Vec) -> Number:
        return self.field.reduce(sum(a * self.counit[i] for i, a in x.items()))

    def delta_n(self, i: int, n: int) -> dict:
        """Iterated coproduct of ``e_i`` into ``n + 1`` legs, as tuples."""
        key = (i, n)
        if key in self._iter:
            return self._iter[key]
        if n == 0:
            res = {(i,): 1}
        else:
            prev = self.delta_n(i, n - 1)
            red = self.field.reduce
            res = {}
            for t, c in prev.items():
                for (a, b), d in self.cop[t[0]].items():
                    k = (a, b) + t[1:]
                    res[k] = res.get(k, 0) + c * d
            res = vclean(res, red)
        self._iter[key] = res
        return res

    def check(self) -> Report:
        rep = Report(f"coalgebra {self.name}".strip())
        n = self.dim
        red = self.field.reduce
        with LawCheck(rep, "coassociativity") as chk:
            for i in range(n):
                lhs: dict = {}
                rhs: dict = {}
                for (a, b), c in self.cop[i].items():
                    for (x, y), d in self.cop[a].items():
                        lhs[(x, y, b)] = lhs.get((x, y, b), 0) + c * d
                    for (x, y), d in self.cop[b].items():
                        rhs[(a, x, y)] = rhs.get((a, x, y), 0) + c * d
                if not chk(vclean(lhs, red) == vclean(rhs, red), basis=(i,)):
                    break
        with LawCheck(rep, "counit") as chk:
            for i in range(n):
                left: dict = {}
                right: dict = {}
                for (a, b), c in self.cop[i].items():
                    left[b] = left.get(b, 0) + c * self.counit[a]
                    right[a] = right.get(a, 0) + c * self.counit[b]
                if not chk(vclean(left, red) == {i: 1} == vclean(right, red), basis=(i,)):
                    break
        return rep


# ---------------------------------------------------------------- functionals


def tensor_power_coproduct(coalgs: Sequence[FDCoalgebra], idx: tuple) -> list:
    """Terms (left_tuple, right_tuple, coeff) of the factorwise coproduct."""
    terms = [((), (), 1)]
    for co, i in zip(coalgs, idx):
        new = []
        for lt, rt, c in terms:
            for (a, b), d in co.cop[i].items():
                new.append((lt + (a,), rt + (b,), c * d))
        terms = new
    return terms


def counit_tuple(coalgs: Sequence[FDCoalgebra], idx: tuple) -> Number:
    v = 1
    for co, i in zip(coalgs, idx):
        v *= co.counit[i]
    return coalgs[0].field.reduce(v) if coalgs else 1


def convolve(f: dict, g: dict, coalgs: Sequence[FDCoalgebra], alg: FDAlgebra | None = None) -> dict:
    """Convolution f*g of functionals on a tensor power of coalgebras.

    With ``alg`` None the functionals are scalar valued.
    """
    field = coalgs[0].field
    red = field.reduce
    out = {}
    for idx in product(*(range(c.dim) for c in coalgs)):
        if alg is None:
            acc = 0
            for lt, rt, c in tensor_power_coproduct(coalgs, idx):
                a = f.get(lt, 0)
                if a:
                    acc += c * a * g.get(rt, 0)
            acc = red(acc)
            if acc:
                out[idx] = acc
        else:
            acc: dict = {}
            for lt, rt, c in tensor_power_coproduct(coalgs, idx):
                a = f.get(lt)
                b = g.get(rt)
                if a and b:
                    vadd(acc, alg.mul(a, b), c, red)
            if acc:
                out[idx] = acc
    return out


def unit_functional(coalgs: Sequence[FDCoalgebra], alg: FDAlgebra | None = None) -> dict:
    out = {}
    for idx in product(*(range(c.dim) for c in coalgs)):
        e = counit_tuple(coalgs, idx)
        if e:
            out[idx] = e if alg is None else alg.scale(alg.one(), e)
    return out


def convolution_inverse(
    f: dict,
    coalgs: Sequence[FDCoalgebra],
    alg: FDAlgebra | None = None,
    constraints: Iterable[tuple[dict, Number]] = (),
) -> dict:
    """Solve f*g = unit linearly and confirm g*f = unit.

    ``constraints`` are extra linear equations on the unknown ``g``, keyed by
    ``(tuple, out_index)`` variables (``out_index`` 0 for scalar values).
    """
    field = coalgs[0].field
    red = field.reduce
    dims = [c.dim for c in coalgs]
    tuples = list(product(*(range(d) for d in dims)))
    m = 1 if alg is None else alg.dim
    var = {}
    for t in tuples:
        for k in range(m):
            var[(t, k)] = len(var)
    sysm = SparseSystem(field, len(var))
    one = {0: 1} if alg is None else alg.one()
    for t in tuples:
        rows: dict = {k: {} for k in range(m)}
        for lt, rt, c in tensor_power_coproduct(coalgs, t):
            a = f.get(lt)
            if not a:
                continue
            if alg is None:
                v = var[(rt, 0)]
                rows[0][v] = rows[0].get(v, 0) + c * a
            else:
                for j in range(m):
                    prod_ = alg.mul(a, {j: 1})
                    v = var[(rt, j)]
                    for k, d in prod_.items():
                        rows[k][v] = rows[k].get(v, 0) + c * d
        e = counit_tuple(coalgs, t)
        for k in range(m):
            sysm.add(rows[k], red(e * one.get(k, 0)))
    for coeffs, rhs in constraints:
        sysm.add({var[key]: c for key, c in coeffs.items()}, rhs)
    if sysm.inconsistent:
        raise NotInvertible("no right convolution inverse")
    if not sysm.unique:
        raise NotInvertible("right convolution inverse is not unique; the convolution operator is singular")
    sol = sysm.solution()
    g: dict = {}
    for (t, k), v in var.items():
        c = sol.get(v)
        if c:
            if alg is None:
                g[t] = c
            else:
                g.setdefault(t, {})[k] = c
    if convolve(g, f, coalgs, alg) != unit_functional(coalgs, alg):
        raise NotInvertible("one-sided convolution inverse fails on the other side")
    return g


# ---------------------------------------------------------------- Hopf algebras


class HopfAlgebra:
    def __init__(
        self,
        alg: FDAlgebra,
        coalg: FDCoalgebra,
        antipode: Sequence[Vec] | None = None,
        antipode_inv: Sequence[Vec] | None = None,
        name: str = "",
        group: FiniteGroup | None = None,
    ):
        if alg.dim != coalg.dim or alg.field != coalg.field:
            raise ValueError("algebra and coalgebra do not share a space")
        self.alg = alg
        self.coalg = coalg
        self.field = alg.field
        self.dim = alg.dim
        self.name = name or alg.name
        self.group = group
        if antipode is None:
            antipode = solve_antipode(alg, coalg)
        red = self.field.reduce
        self.S = [vclean(dict(v), red) for v in antipode]
        if antipode_inv is None:
            antipode_inv = _invert_columns(self.field, self.S)
        self.Sinv = [vclean(dict(v), red) for v in antipode_inv] if antipode_inv is not None else None

    labels = property(lambda self: self.alg.labels)

    def mul(self, x: Vec, y: Vec) -> Vec:
        return self.alg.mul(x, y)

    def one(self) -> Vec:
        return self.alg.one()

    def delta(self, x: Vec) -> dict:
        return self.coalg.delta(x)

    def delta_n(self, i: int, n: int) -> dict:
        return self.coalg.delta_n(i, n)

    def eps(self, x: Vec) -> Number:
        return self.coalg.eps(x)

    def antipode(self, x: Vec) -> Vec:
        out: dict = {}
        for i, a in x.items():
            vadd(out, self.S[i], a, self.field.reduce)
        return out

    def antipode_inv(self, x: Vec) -> Vec:
        if self.Sinv is None:
            raise NotInvertible("antipode is not invertible")
        out: dict = {}
        for i, a in x.items():
            vadd(out, self.Sinv[i], a, self.field.reduce)
        return out

    @property
    def antipode_matrix(self) -> Matrix:
        return Matrix.from_columns(self.field, self.S, self.dim)

    def check(self) -> Report:
        rep = Report(f"Hopf algebra {self.name}".strip())
        rep.extend(self.alg.check())
        rep.extend(self.coalg.check())
        n = self.dim
        red = self.field.reduce
        A, C = self.alg, self.coalg
        with LawCheck(rep, "coproduct multiplicative") as chk:
            for i, j in product(range(n), repeat=2):
                lhs = C.delta(A.table[i][j])
                rhs: dict = {}
                for (a, b), c in C.cop[i].items():
                    for (x, y), d in C.cop[j].items():
                        for u, e in A.table[a][x].items():
                            for v, f in A.table[b][y].items():
                                rhs[(u, v)] = rhs.get((u, v), 0) + c * d * e * f
                if not chk(lhs == vclean(rhs, red), basis=(i, j)):
                    break
        with LawCheck(rep, "counit multiplicative") as chk:
            for i, j in product(range(n), repeat=2):
                if not chk(C.eps(A.table[i][j]) == red(C.counit[i] * C.counit[j]), basis=(i, j)):
                    break
        with LawCheck(rep, "unit group-like") as chk:
            u = A.one()
            du = {}
            for a, c in u.items():
                for b, d in u.items():
                    du[(a, b)] = red(c * d)
            chk(C.delta(u) == vclean(du, red) and C.eps(u) == 1, basis=())
        with LawCheck(rep, "antipode") as chk:
            for i in range(n):
                left: dict = {}
                right: dict = {}
                for (a, b), c in C.cop[i].items():
                    vadd(left, A.mul(self.S[a], {b: 1}), c, red)
                    vadd(right, A.mul({a: 1}, self.S[b]), c, red)
                target = A.scale(A.one(), C.counit[i])
                if not chk(left == target == right, basis=(i,)):
                    break
        if self.Sinv is not None:
            with LawCheck(rep, "inverse antipode") as chk:
                for i in range(n):
                    if not chk(self.antipode(self.Sinv[i]) == {i: 1} == self.antipode_inv(self.S[i]), basis=(i,)):
                        break
        return rep

    def __repr__(self) -> str:
        return f"HopfAlgebra({self.name}, dim={self.dim}, {self.field})"


def _invert_columns(field: Field, cols: Sequence[Vec]) -> list[Vec] | None:
    from .linalg import NotBijective, SparseSolver

    try:
        solver = SparseSolver(field, cols)
    except NotBijective:
        return None
    return [solver.solve({i: 1}) for i in range(len(cols))]


def solve_antipode(alg: FDAlgebra, coalg: FDCoalgebra) -> list[Vec]:
    """Antipode as the convolution inverse of the identity map."""
    ident = {(i,): {i: 1} for i in range(alg.dim)}
    g = convolution_inverse(ident, [coalg], alg)
    return [g.get((i,), {}) for i in range(alg.dim)]


def group_algebra(g, field: Field) -> HopfAlgebra:
    """kG with group-like basis."""
    if not isinstance(g, FiniteGroup):
        g = FiniteGroup(tuple(map(tuple, g)))
    n = g.order
    table = [[{g.mul(a, b): 1} for b in range(n)] for a in range(n)]
    alg = FDAlgebra(field, table, {0: 1}, list(g.labels), name=f"kG{n}")
    coalg = FDCoalgebra(field, [{(a, a): 1} for a in range(n)], [1] * n, list(g.labels))
    S = [{g.inv(a): 1} for a in range(n)]
    return HopfAlgebra(alg, coalg, S, S, name=f"kG{n}", group=g)


def function_algebra(g, field: Field) -> HopfAlgebra:
    """k(G) with basis of delta functions."""
    if not isinstance(g, FiniteGroup):
        g = FiniteGroup(tuple(map(tuple, g)))
    n = g.order
    table = [[({a: 1} if a == b else {}) for b in range(n)] for a in range(n)]
    labels = [f"d[{l}]" for l in g.labels]
    alg = FDAlgebra(field, table, {a: 1 for a in range(n)}, labels, name=f"k(G{n})")
    cop = []
    for u in range(n):
        d = {}
        for a in range(n):
            d[(a, g.mul(g.inv(a), u))] = 1
        cop.append(d)
    coalg = FDCoalgebra(field, cop, [1 if u == 0 else 0 for u in range(n)], labels)
    S = [{g.inv(u): 1} for u in range(n)]
    return HopfAlgebra(alg, coalg, S, S, name=f"k(G{n})", group=g)


def dual_hopf(h: HopfAlgebra) -> tuple[HopfAlgebra, Matrix]:
    """H* in the dual basis; returns it with the (identity) pairing matrix."""
    n = h.dim
    F = h.field
    A, C = h.alg, h.coalg
    # (f g)(x) = f(x1) g(x2): product of dual basis elements reads Delta_H
    table = [[{} for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for (j, k), c in C.cop[i].items():
            table[j][k][i] = c
    unit = {i: c for i, c in enumerate(C.counit) if c}
    # Delta(f)(x (x) y) = f(xy): coproduct of dual basis reads the product of H
    cop = [{} for _ in range(n)]
    for a in range(n):
        for b in range(n):
            for k, c in A.table[a][b].items():
                cop[k][(a, b)] = c
    counit = [h.alg.unit.get(i, 0) for i in range(n)]
    labels = [f"{l}*" for l in h.labels]
    dalg = FDAlgebra(F, table, unit, labels, name=f"{h.name}*")
    dco = FDCoalgebra(F, cop, counit, labels)
    # S* is the transpose of S
    S = [{} for _ in range(n)]
    for i in range(n):
        for j, c in h.S[i].items():
            S[j][i] = c
    Sinv = None
    if h.Sinv is not None:
        Sinv = [{} for _ in range(n)]
        for i in range(n):
            for j, c in h.Sinv[i].items():
                Sinv[j][i] = c
    return HopfAlgebra(dalg, dco, S, Sinv, name=f"{h.name}*"), Matrix.identity(F, n)


def check_pairing(h: HopfAlgebra, hd: HopfAlgebra, pairing: Matrix) -> Report:
    """<ab, x> = <a, x1><b, x2> and <a, xy> = <a1, x><a2, y> on basis triples."""
    rep = Report("dual pairing")
    n = h.dim
    red = h.field.reduce
    P = pairing.data

    def pair(a: Vec, x: Vec) -> Number:
        return red(sum(c * d * P[i][j] for i, c in a.items() for j, d in x.items()))

    with LawCheck(rep, "product dual to coproduct") as chk:
        for a, b, x in product(range(n), repeat=3):
            lhs = pair(hd.alg.table[a][b], {x: 1})
            rhs = red(sum(c * P[a][u] * P[b][v] for (u, v), c in h.coalg.cop[x].items()))
            if not chk(lhs == rhs, basis=(a, b, x)):
                break
    with LawCheck(rep, "coproduct dual to product") as chk:
        for a, x, y in product(range(n), repeat=3):
            lhs = pair({a: 1}, h.alg.table[x][y])
            rhs = red(sum(c * P[u][x] * P[v][y] for (u, v), c in hd.coalg.cop[a].items()))
            if not chk(lhs == rhs, basis=(a, x, y)):
                break
    return rep


# ---------------------------------------------------------------- coquasitriangular


@dataclass
class CQTStructure:
    R: dict
    Rinv: dict | None = None

    @classmethod
    def bicharacter(cls, h: HopfAlgebra, q: int) -> "CQTStructure":
        """R(g^a, g^b) = q^(ab) on a cyclic group algebra."""
        g = h.group
        n = g.order
        F = h.field
        # index i of the cyclic group table built by cyclic_group is the exponent
        R = {(a, b): F(pow(q, a * b, F.p) if F.p else q ** (a * b)) for a in range(n) for b in range(n)}
        return cls(R)


def check_coquasitriangular(h: HopfAlgebra, r: CQTStructure) -> Report:
    rep = Report("coquasitriangular structure")
    n = h.dim
    F = h.field
    red = F.reduce
    A, C = h.alg, h.coalg
    R = r.R

    def Rv(x: Vec, y: Vec) -> Number:
        return red(sum(a * b * R.get((i, j), 0) for i, a in x.items() for j, b in y.items()))

    try:
        Rinv = r.Rinv if r.Rinv is not None else convolution_inverse(R, [C, C])
        rep.record("convolution invertible", True)
        if r.Rinv is None:
            r.Rinv = Rinv
    except NotInvertible as exc:
        rep.record("convolution invertible", False, witness={"error": str(exc)})
        Rinv = None
    if Rinv is not None:
        ok = convolve(R, Rinv, [C, C]) == unit_functional([C, C])
        rep.record("R * R^-1 = unit", ok)
    with LawCheck(rep, "R(h, gf) = R(h1, f) R(h2, g)") as chk:
        for i, j, k in product(range(n), repeat=3):
            lhs = Rv({i: 1}, A.table[j][k])
            rhs = red(sum(c * R.get((a, k), 0) * R.get((b, j), 0) for (a, b), c in C.cop[i].items()))
            if not chk(lhs == rhs, basis=(i, j, k), lhs=lhs, rhs=rhs):
                break
    with LawCheck(rep, "R(hg, f) = R(h, f1) R(g, f2)") as chk:
        for i, j, k in product(range(n), repeat=3):
            lhs = Rv(A.table[i][j], {k: 1})
            rhs = red(sum(c * R.get((i, a), 0) * R.get((j, b), 0) for (a, b), c in C.cop[k].items()))
            if not chk(lhs == rhs, basis=(i, j, k), lhs=lhs, rhs=rhs):
                break
    with LawCheck(rep, "g1 h1 R(h2, g2) = R(h1, g1) h2 g2") as chk:
        for i, j in product(range(n), repeat=2):
            lhs: dict = {}
            rhs: dict = {}
            for (h1, h2), c in C.cop[i].items():
                for (g1, g2), d in C.cop[j].items():
                    vadd(lhs, A.table[g1][h1], c * d * R.get((h2, g2), 0), red)
                    vadd(rhs, A.table[h2][g2], c * d * R.get((h1, g1), 0), red)
            if not chk(lhs == rhs, basis=(i, j), lhs=lhs, rhs=rhs):
                break
    return rep


# ---------------------------------------------------------------- coquasi-bialgebras


class CoquasiBialgebra:
    """Coalgebra with a (possibly nonassociative) unital product and associator."""

    def __init__(self, alg: FDAlgebra, coalg: FDCoalgebra, phi: dict, phi_inv: dict | None = None, name: str = ""):
        self.alg = alg
        self.coalg = coalg
        self.field = alg.field
        self.dim = alg.dim
        self.name = name
        red = self.field.reduce
        self.phi = vclean(dict(phi), red)
        if phi_inv is None:
            try:
                phi_inv = convolution_inverse(self.phi, [coalg] * 3)
            except NotInvertible:
                phi_inv = None
        self.phi_inv = phi_inv

    labels = property(lambda self: self.alg.labels)

    def mul(self, x: Vec, y: Vec) -> Vec:
        return self.alg.mul(x, y)

    def one(self) -> Vec:
        return self.alg.one()

    def eps(self, x: Vec) -> Number:
        return self.coalg.eps(x)

    @classmethod
    def from_hopf(cls, h: HopfAlgebra) -> "CoquasiBialgebra":
        n = h.dim
        phi = {}
        for t in product(range(n), repeat=3):
            e = counit_tuple([h.coalg] * 3, t)
            if e:
                phi[t] = e
        return cls(h.alg, h.coalg, phi, dict(phi), name=h.name)


def check_coquasi_bialgebra(h: CoquasiBialgebra) -> Report:
    rep = Report(f"coquasi-bialgebra {h.name}".strip())
    n = h.dim
    F = h.field
    red = F.reduce
    A, C = h.alg, h.coalg
    phi = h.phi
    rep.extend(C.check())
    with LawCheck(rep, "unit") as chk:
        for i in range(n):
            e = {i: 1}
            if not chk(A.mul(A.one(), e) == e == A.mul(e, A.one()), basis=(i,)):
                break
    with LawCheck(rep, "coproduct multiplicative") as chk:
        for i, j in product(range(n), repeat=2):
            lhs = C.delta(A.table[i][j])
            rhs: dict = {}
            for (a, b), c in C.cop[i].items():
                for (x, y), d in C.cop[j].items():
                    for u, e in A.table[a][x].items():
                        for v, f in A.table[b][y].items():
                            rhs[(u, v)] = rhs.get((u, v), 0) + c * d * e * f
            if not chk(lhs == vclean(rhs, red), basis=(i, j)):
                break
    with LawCheck(rep, "counit multiplicative") as chk:
        for i, j in product(range(n), repeat=2):
            if not chk(C.eps(A.table[i][j]) == red(C.counit[i] * C.counit[j]), basis=(i, j)):
                break
    with LawCheck(rep, "unit group-like") as chk:
        u = A.one()
        du = {(a, b): red(c * d) for a, c in u.items() for b, d in u.items()}
        chk(C.delta(u) == vclean(du, red) and C.eps(u) == 1, basis=())
    with LawCheck(rep, "associator convolution invertible") as chk:
        ok = h.phi_inv is not None and convolve(phi, h.phi_inv, [C] * 3) == unit_functional([C] * 3)
        chk(ok, basis=())

    def phv(x: Vec, y: Vec, z: Vec) -> Number:
        return red(sum(a * b * c * phi.get((i, j, k), 0) for i, a in x.items() for j, b in y.items() for k, c in z.items()))

    one = A.one()
    with LawCheck(rep, "(1) phi(h, 1, g) = eps(hg)") as chk:
        for i, j in product(range(n), repeat=2):
            lhs = phv({i: 1}, one, {j: 1})
            rhs = C.eps(A.table[i][j])
            if not chk(lhs == rhs, basis=(i, j), lhs=lhs, rhs=rhs):
                break
    with LawCheck(rep, "(2) pentagon") as chk:
        d2 = lambda i: C.delta_n(i, 2)
        for i, j, k, l in product(range(n), repeat=4):
            lhs = 0
            for (h1, h2), c1 in C.cop[i].items():
                for (g1, g2), c2 in C.cop[j].items():
                    for (f1, f2), c3 in C.cop[k].items():
                        for (l1, l2), c4 in C.cop[l].items():
                            lhs += c1 * c2 * c3 * c4 * phv({h1: 1}, {g1: 1}, A.table[f1][l1]) * phv(A.table[h2][g2], {f2: 1}, {l2: 1})
            rhs = 0
            for (h1, h2), c1 in C.cop[i].items():
                for (g1, g2, g3), c2 in d2(j).items():
                    for (f1, f2, f3), c3 in d2(k).items():
                        for (l1, l2), c4 in C.cop[l].items():
                            rhs += c1 * c2 * c3 * c4 * phi.get((g1, f1, l1), 0) * phv({h1: 1}, A.table[g2][f2], {l2: 1}) * phi.get((h2, g3, f3), 0)
            lhs, rhs = red(lhs), red(rhs)
            if not chk(lhs == rhs, basis=(i, j, k, l), lhs=lhs, rhs=rhs):
                break
    with LawCheck(rep, "(3) quasi-associativity") as chk:
        for i, j, k in product(range(n), repeat=3):
            lhs: dict = {}
            rhs: dict = {}
            for (h1, h2), c1 in C.cop[i].items():
                for (g1, g2), c2 in C.cop[j].items():
                    for (f1, f2), c3 in C.cop[k].items():
                        c = c1 * c2 * c3
                        p = phi.get((h1, g1, f1), 0)
                        if p:
                            vadd(lhs, A.mul(A.table[h2][g2], {f2: 1}), c * p, red)
                        p = phi.get((h2, g2, f2), 0)
                        if p:
                            vadd(rhs, A.mul({h1: 1}, A.table[g1][f1]), c * p, red)
            if not chk(lhs == rhs, basis=(i, j, k), lhs=lhs, rhs=rhs):
                break
    return rep


# ---------------------------------------------------------------- linear maps


@dataclass
class LinMap:
    """Linear map given by sparse images of domain basis vectors."""

    field: Field
    dom: int
    cod: int
    cols: list = dc_field(default_factory=list)

    def __call__(self, v: Vec) -> Vec:
        out: dict = {}
        red = self.field.reduce
        for i, a in v.items():
            vadd(out, self.cols[i], a, red)
        return out

    @property
    def matrix(self) -> Matrix:
        return Matrix.from_columns(self.field, self.cols, self.cod)

    @classmethod
    def from_matrix(cls, m: Matrix) -> "LinMap":
        return cls(m.field, m.cols, m.rows, m.columns_sparse())

    @classmethod
    def identity(cls, field: Field, n: int) -> "LinMap":
        return cls(field, n, n, [{i: 1} for i in range(n)])

    def compose(self, other: "LinMap") -> "LinMap":
        """self after other."""
        return LinMap(self.field, other.dom, self.cod, [self(c) for c in other.cols])

    def inverse(self) -> "LinMap | None":
        if self.dom != self.cod:
            return None
        inv = _invert_columns(self.field, self.cols)
        return None if inv is None else LinMap(self.field, self.dom, self.cod, inv)

    def __eq__(self, other) -> bool:
        return isinstance(other, LinMap) and self.dom == other.dom and self.cod == other.cod and [
            vclean(c, self.field.reduce) for c in self.cols
        ] == [vclean(c, other.field.reduce) for c in other.cols]
