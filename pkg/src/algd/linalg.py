"""Exact linear algebra: dense matrices, row reduction, quotient spaces.

Dense :class:`Matrix` objects are the public currency.  Underneath, the
balanced tensor quotients used elsewhere in the package can have tens of
thousands of ambient coordinates, so quotient spaces and map inversion run
on sparse vectors (``dict`` from basis key to nonzero coefficient) and only
materialise dense projection/section matrices on request.

Quotients always use the canonical section: the non-pivot coordinates of the
reduced row-echelon form of the relation span, where pivots are leftmost in
the ambient key order.  A different key order may be supplied to obtain an
alternative (equally valid) section.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dc_field
from typing import Callable, Hashable, Iterable, Iterator, Sequence

from .field import Field, Number, QQ

Vec = dict  # sparse vector: key -> nonzero coefficient


class LinalgError(Exception):
    pass


class NoSolution(LinalgError):
    pass


class NotWellDefined(LinalgError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotBijective(LinalgError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


# ---------------------------------------------------------------- sparse vectors


def vadd(acc: Vec, v: Vec, c: Number, red: Callable) -> Vec:
    """acc += c * v in place."""
    for k, x in v.items():
        y = red(acc.get(k, 0) + c * x)
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)
    return acc


def vsub(v: Vec, w: Vec, red: Callable) -> Vec:
    out = dict(v)
    return vadd(out, w, -1, red)


def vscale(v: Vec, c: Number, red: Callable) -> Vec:
    if not c:
        return {}
    out = {}
    for k, x in v.items():
        y = red(c * x)
        if y:
            out[k] = y
    return out


def vclean(v: dict, red: Callable) -> Vec:
    out = {}
    for k, x in v.items():
        y = red(x)
        if y:
            out[k] = y
    return out


def basis_vec(k) -> Vec:
    return {k: 1}


# ---------------------------------------------------------------- dense matrices


@dataclass
class Matrix:
    """Dense row-major matrix over a single field."""

    field: Field
    rows: int
    cols: int
    data: list = dc_field(default_factory=list)

    def __post_init__(self):
        if not self.data:
            self.data = [[0] * self.cols for _ in range(self.rows)]
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ValueError("matrix data does not match its shape")
        F = self.field
        self.data = [[F(x) for x in r] for r in self.data]

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(field, len(rows), cols, rows)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, n, n, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, rows, cols)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Vec], rows: int) -> "Matrix":
        """Dense matrix whose j-th column is the sparse vector ``columns[j]``."""
        m = cls(field, rows, len(columns))
        for j, col in enumerate(columns):
            for i, x in col.items():
                m.data[i][j] = field(x)
        return m

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def copy(self) -> "Matrix":
        return Matrix(self.field, self.rows, self.cols, [list(r) for r in self.data])

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows, [list(c) for c in zip(*self.data)] if self.rows else [[] for _ in range(self.cols)])

    def __matmul__(self, other):
        F = self.field
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch in matrix product")
            cols_o = list(zip(*other.data)) if other.rows else [() for _ in range(other.cols)]
            out = [
                [F.reduce(sum(a * b for a, b in zip(r, c))) for c in cols_o]
                for r in self.data
            ]
            return Matrix(F, self.rows, other.cols, out)
        vec = list(other)
        if len(vec) != self.cols:
            raise ValueError("shape mismatch in matrix-vector product")
        return [F.reduce(sum(a * b for a, b in zip(r, vec))) for r in self.data]

    def column(self, j: int) -> Vec:
        return {i: self.data[i][j] for i in range(self.rows) if self.data[i][j]}

    def columns_sparse(self) -> list[Vec]:
        return [self.column(j) for j in range(self.cols)]

    def row_sparse(self, i: int) -> Vec:
        return {j: x for j, x in enumerate(self.data[i]) if x}

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(
            self.data[i][j] == (1 if i == j else 0) for i in range(self.rows) for j in range(self.cols)
        )

    def rendered(self) -> list:
        return [[self.field.render(x) for x in r] for r in self.data]


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form and pivot columns."""
    F = m.field
    a = [list(r) for r in m.data]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        piv = next((i for i in range(r, m.rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = F.inv(a[r][c])
        a[r] = [F.reduce(x * inv) for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [F.reduce(x - f * y) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return Matrix(F, m.rows, m.cols, a), pivots


def solve(a: Matrix, b: Sequence) -> list:
    """Some x with a.x = b, free variables set to zero."""
    if len(b) != a.rows:
        raise ValueError("right-hand side length differs from row count")
    F = a.field
    aug = Matrix(F, a.rows, a.cols + 1, [list(r) + [F(x)] for r, x in zip(a.data, b)])
    red, pivots = rref(aug)
    if a.cols in pivots:
        raise NoSolution("right-hand side is not in the column space")
    x = [0] * a.cols
    for i, c in enumerate(pivots):
        x[c] = red.data[i][a.cols]
    return x


def kernel(a: Matrix) -> Matrix:
    """Basis rows of {x : a.x = 0}."""
    F = a.field
    red, pivots = rref(a)
    free = [c for c in range(a.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [0] * a.cols
        x[f] = 1
        for i, c in enumerate(pivots):
            x[c] = F.reduce(-red.data[i][f])
        basis.append(x)
    return Matrix(F, len(basis), a.cols, basis)


# ---------------------------------------------------------------- sparse echelon


class Echelon:
    """Incremental sparse semi-echelon basis.

    Each stored row is normalised to coefficient 1 at its pivot, and its pivot
    is the minimum-rank key in the row.  Full reduction of a vector eliminates
    every pivot key, which yields the unique representative supported on the
    non-pivot keys.
    """

    def __init__(self, field: Field, rank: Callable | None = None):
        self.field = field
        self.rank = rank or (lambda k: k)
        self.rows: dict = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Vec) -> Vec:
        rows = self.rows
        if not rows:
            return dict(v)
        red = self.field.reduce
        rank = self.rank
        v = dict(v)
        heap = [(rank(k), k) for k in v if k in rows]
        heapq.heapify(heap)
        while heap:
            _, k = heapq.heappop(heap)
            c = v.get(k)
            if not c:
                continue
            for k2, c2 in rows[k].items():
                y = red(v.get(k2, 0) - c * c2)
                if y:
                    if k2 not in v and k2 in rows:
                        heapq.heappush(heap, (rank(k2), k2))
                    v[k2] = y
                else:
                    v.pop(k2, None)
        return v

    def add(self, row: Vec) -> bool:
        """Insert a row; returns False if it was already in the span."""
        v = self.reduce(row)
        if not v:
            return False
        lead = min(v, key=self.rank)
        inv = self.field.inv(v[lead])
        self.rows[lead] = vscale(v, inv, self.field.reduce)
        return True

    def pivots(self) -> set:
        return set(self.rows)


class _UnionFind:
    """Quotient by binomial/monomial relations via weighted union-find.

    ``x_k = factor * x_parent``; the root of a class is its maximum-rank key,
    which is exactly the non-pivot column left by leftmost-pivot RREF.
    """

    def __init__(self, field: Field, rank: Callable):
        self.field = field
        self.rank = rank
        self.parent: dict = {}
        self.zero: set = set()

    def find(self, k):
        parent = self.parent
        if k not in parent:
            return k, 1
        red = self.field.reduce
        path = []
        f = 1
        cur = k
        while cur in parent:
            p, c = parent[cur]
            path.append((cur, c))
            cur = p
        root = cur
        # path compression
        acc = 1
        for node, c in reversed(path):
            acc = red(acc * c)
            parent[node] = (root, acc)
        f = parent[k][1] if path else 1
        return root, f

    def add(self, row: Vec) -> None:
        F = self.field
        red = F.reduce
        items = list(row.items())
        if len(items) == 1:
            (k, _), = items
            r, _ = self.find(k)
            self.zero.add(r)
            return
        (a, ca), (b, cb) = items
        # ca x_a + cb x_b = 0  ->  x_a = c x_b
        c = red(-cb * F.inv(ca))
        ra, fa = self.find(a)
        rb, fb = self.find(b)
        if ra == rb:
            # fa x_r = c fb x_r
            if red(fa - c * fb):
                self.zero.add(ra)
            return
        # x_ra = (c fb / fa) x_rb
        k = red(c * fb * F.inv(fa))
        za, zb = ra in self.zero, rb in self.zero
        if self.rank(ra) > self.rank(rb):
            # x_rb = x_ra / k
            self.parent[rb] = (ra, F.inv(k))
            root = ra
        else:
            self.parent[ra] = (rb, k)
            root = rb
        self.zero.discard(ra)
        self.zero.discard(rb)
        if za or zb:
            self.zero.add(root)

    def to_rows(self, keys: Iterable) -> Iterator[Vec]:
        red = self.field.reduce
        for k in keys:
            r, f = self.find(k)
            if r in self.zero:
                yield {k: 1}
            elif r != k:
                yield {k: 1, r: red(-f)}


class QuotientSpace:
    """Ambient space spanned by ``keys`` modulo a relation subspace.

    ``project`` returns quotient coordinates (indexed ``0..q-1`` following the
    non-pivot keys in ambient order); ``lift`` is the canonical section.
    """

    def __init__(
        self,
        field: Field,
        keys: Sequence,
        relations: Iterable[Vec] = (),
        order: Sequence | None = None,
        name: str = "",
        relation_source: Callable[[], Iterable[Vec]] | None = None,
    ):
        self.field = field
        self.keys = list(keys)
        self.n = len(self.keys)
        self.name = name
        if order is None:
            rank = None
            self._rank = lambda k: k
        else:
            pos = {k: i for i, k in enumerate(order)}
            rank = pos.__getitem__
            self._rank = rank
        self._relation_source = relation_source
        uf = _UnionFind(field, self._rank)
        ech: Echelon | None = None
        red = field.reduce
        count = 0
        for row in relations:
            count += 1
            row = vclean(row, red) if not _is_clean(row) else row
            if not row:
                continue
            if ech is None and len(row) <= 2:
                uf.add(row)
                continue
            if ech is None:
                ech = Echelon(field, rank)
                for r in uf.to_rows(self.keys):
                    ech.add(r)
            ech.add(row)
        self.relation_count = count
        self._uf = None if ech is not None else uf
        self._ech = ech
        if ech is not None:
            piv = ech.pivots()
            self.nonpivots = [k for k in self.keys if k not in piv]
        else:
            self.nonpivots = []
            for k in self.keys:
                r, _ = uf.find(k)
                if r == k and r not in uf.zero:
                    self.nonpivots.append(k)
        if order is not None:
            self.nonpivots.sort(key=self._rank)
        self.q = len(self.nonpivots)
        self.coord = {k: i for i, k in enumerate(self.nonpivots)}
        self._P = None
        self._S = None

    @property
    def rank(self) -> int:
        return self.n - self.q

    def relation_rows(self) -> Iterator[Vec]:
        """The relation generators this space was built from (if retained)."""
        if self._relation_source is None:
            raise LinalgError("relation generators were not retained")
        return iter(self._relation_source())

    def normal_form(self, v: Vec) -> Vec:
        if self._ech is not None:
            return self._ech.reduce(v)
        uf = self._uf
        red = self.field.reduce
        out: dict = {}
        for k, c in v.items():
            r, f = uf.find(k)
            if r in uf.zero:
                continue
            y = red(out.get(r, 0) + c * f)
            if y:
                out[r] = y
            else:
                out.pop(r, None)
        return out

    def project(self, v: Vec) -> Vec:
        coord = self.coord
        return {coord[k]: c for k, c in self.normal_form(v).items()}

    def lift(self, coords: Vec) -> Vec:
        keys = self.nonpivots
        return {keys[i]: c for i, c in coords.items() if c}

    def is_zero(self, v: Vec) -> bool:
        return not self.normal_form(v)

    def equal(self, v: Vec, w: Vec) -> bool:
        return self.is_zero(vsub(v, w, self.field.reduce))

    @property
    def P(self) -> Matrix:
        if self._P is None:
            cols = [self.project({k: 1}) for k in self.keys]
            self._P = Matrix.from_columns(self.field, cols, self.q)
        return self._P

    @property
    def S(self) -> Matrix:
        if self._S is None:
            index = {k: i for i, k in enumerate(self.keys)}
            cols = [{index[k]: 1} for k in self.nonpivots]
            self._S = Matrix.from_columns(self.field, cols, self.n)
        return self._S

    def __repr__(self) -> str:
        return f"QuotientSpace({self.name or 'anon'}: n={self.n}, q={self.q})"


def _is_clean(row: dict) -> bool:
    return all(row.values())


def quotient(ambient, relations, field: Field | None = None, order=None) -> QuotientSpace:
    """Quotient of ``ambient`` (a dimension or key list) by relation rows.

    ``relations`` is a :class:`Matrix` whose rows are relation generators, or
    an iterable of sparse rows.
    """
    keys = list(range(ambient)) if isinstance(ambient, int) else list(ambient)
    if isinstance(relations, Matrix):
        if relations.cols != len(keys):
            raise ValueError("relation matrix width differs from ambient dimension")
        field = relations.field
        rows = [{keys[j]: x for j, x in enumerate(r) if x} for r in relations.data]
    else:
        rows = [dict(r) if isinstance(r, dict) else {keys[j]: x for j, x in enumerate(r) if x} for r in relations]
        field = field or QQ
    rows = [vclean({k: field(x) for k, x in r.items()}, field.reduce) for r in rows]
    qs = QuotientSpace(field, keys, rows, order=order, relation_source=lambda: rows)
    return qs


# ---------------------------------------------------------------- inversion


class SparseSolver:
    """Solves M x = y for a square invertible M given by sparse columns."""

    def __init__(self, field: Field, columns: Sequence[Vec]):
        self.field = field
        self.size = len(columns)
        red = field.reduce
        # rows: pivot -> (reduced vector, combination of original columns)
        self._rows: dict = {}
        for j, col in enumerate(columns):
            v, comb = self._reduce(col, {j: 1})
            if not v:
                raise NotBijective("induced matrix is singular", witness=j)
            lead = min(v)
            inv = field.inv(v[lead])
            self._rows[lead] = (vscale(v, inv, red), vscale(comb, inv, red))

    def _reduce(self, v: Vec, comb: Vec) -> tuple[Vec, Vec]:
        rows = self._rows
        red = self.field.reduce
        v = dict(v)
        comb = dict(comb)
        heap = [k for k in v if k in rows]
        heapq.heapify(heap)
        while heap:
            k = heapq.heappop(heap)
            c = v.get(k)
            if not c:
                continue
            rv, rc = rows[k]
            for k2, c2 in rv.items():
                y = red(v.get(k2, 0) - c * c2)
                if y:
                    if k2 not in v and k2 in rows:
                        heapq.heappush(heap, k2)
                    v[k2] = y
                else:
                    v.pop(k2, None)
            vadd(comb, rc, -c, red)
        return v, comb

    def solve(self, y: Vec) -> Vec:
        rem, comb = self._reduce(y, {})
        if rem:
            raise NoSolution("vector outside the image")
        return vscale(comb, -1, self.field.reduce)

    def dense_inverse(self) -> Matrix:
        cols = [self.solve({i: 1}) for i in range(self.size)]
        return Matrix.from_columns(self.field, cols, self.size)


class InducedMap:
    """A linear map between quotient spaces, given on ambient basis keys."""

    def __init__(self, image: Callable[[Hashable], Vec], dom: QuotientSpace, cod: QuotientSpace):
        self.image = image
        self.dom = dom
        self.cod = cod
        self._solver: SparseSolver | None = None
        self._columns: list[Vec] | None = None

    def apply_ambient(self, v: Vec) -> Vec:
        out: dict = {}
        red = self.dom.field.reduce
        for k, c in v.items():
            vadd(out, self.image(k), c, red)
        return out

    def check_well_defined(self) -> None:
        for row in self.dom.relation_rows():
            img = self.apply_ambient(row)
            if not self.cod.is_zero(img):
                raise NotWellDefined("a relation generator maps outside the codomain relations", witness=row)

    def columns(self) -> list[Vec]:
        if self._columns is None:
            self._columns = [self.cod.project(self.image(k)) for k in self.dom.nonpivots]
        return self._columns

    def matrix(self) -> Matrix:
        return Matrix.from_columns(self.dom.field, self.columns(), self.cod.q)

    def invert(self) -> SparseSolver:
        if self.dom.q != self.cod.q:
            raise NotBijective(f"quotient dimensions differ ({self.dom.q} vs {self.cod.q})")
        if self._solver is None:
            self._solver = SparseSolver(self.dom.field, self.columns())
        return self._solver

    def inverse_lift(self, v: Vec) -> Vec:
        """Canonical lift in the domain ambient of the preimage of ``v``."""
        return self.dom.lift(self.invert().solve(self.cod.project(v)))


def invert_between_quotients(f, dom: QuotientSpace, cod: QuotientSpace) -> Matrix:
    """Inverse (in quotient coordinates) of the map induced by ``f``.

    ``f`` is a dense :class:`Matrix` (cod.n x dom.n) acting on ambient
    coordinates, or a callable sending an ambient key to a sparse vector.
    """
    if isinstance(f, Matrix):
        if f.rows != cod.n or f.cols != dom.n:
            raise ValueError("map shape does not match the quotient ambients")
        cols = f.columns_sparse()
        dom_index = {k: i for i, k in enumerate(dom.keys)}
        cod_keys = cod.keys

        def image(k):
            return {cod_keys[i]: c for i, c in cols[dom_index[k]].items()}
    else:
        image = f
    ind = InducedMap(image, dom, cod)
    ind.check_well_defined()
    return ind.invert().dense_inverse()


class SparseSystem:
    """Affine linear system over variables ``0..nvars-1`` with sparse rows.

    ``solution()`` returns a particular solution (free variables zero) and
    ``kernel()`` a basis of the homogeneous solution space, both as sparse
    vectors over the variables.
    """

    def __init__(self, field: Field, nvars: int):
        self.field = field
        self.nvars = nvars
        self._rhs_key = nvars
        self._ech = Echelon(field)
        self.inconsistent = False

    def add(self, coeffs: Vec, rhs: Number = 0) -> None:
        red = self.field.reduce
        row = vclean(coeffs, red)
        r = red(-rhs) if rhs else 0
        if r:
            row[self._rhs_key] = r
        if not row:
            return
        self._ech.add(row)
        if self._rhs_key in self._ech.rows:
            self.inconsistent = True

    def free_variables(self) -> list[int]:
        piv = self._ech.rows
        return [v for v in range(self.nvars) if v not in piv]

    def _back_substitute(self, fixed: Vec, with_rhs: bool) -> Vec:
        red = self.field.reduce
        rows = self._ech.rows
        x: dict = dict(fixed)
        for p in sorted((k for k in rows if k != self._rhs_key), reverse=True):
            acc = 0
            for k, c in rows[p].items():
                if k == p:
                    continue
                if k == self._rhs_key:
                    if with_rhs:
                        acc -= c
                    continue
                v = x.get(k)
                if v:
                    acc -= c * v
            acc = red(acc)
            if acc:
                x[p] = acc
        return x

    def solution(self) -> Vec:
        if self.inconsistent:
            raise NoSolution("inconsistent linear system")
        return self._back_substitute({}, True)

    def kernel(self) -> list[Vec]:
        return [self._back_substitute({f: 1}, False) for f in self.free_variables()]

    @property
    def unique(self) -> bool:
        return not self.free_variables()
