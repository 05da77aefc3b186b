"""Exact rational linear algebra.

Every scalar is a :class:`fractions.Fraction`; nothing here ever rounds.
Vectors are plain tuples of fractions.  Matrices keep a sparse map of
their nonzero entries and switch to a dense row table once more than a
quarter of the entries are nonzero.  Row reduction always produces the
reduced row echelon form, which is unique, so kernel bases and solution
vectors are reproducible for identical inputs.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import DimensionError

Scalar = Fraction
Vector = tuple

DENSE_FILL = 0.25

ZERO = Fraction(0)
ONE = Fraction(1)


def Q(x) -> Fraction:
    """Coerce ints, fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    text = str(text).strip()
    if not text:
        raise ValueError("empty rational literal")
    if "." in text or "e" in text.lower():
        raise ValueError(f"rational literal {text!r} must be p or p/q")
    return Fraction(text)


def format_rational(x) -> str:
    x = Q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# vectors
# ---------------------------------------------------------------------------

def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    v = [ZERO] * n
    v[i] = ONE
    return tuple(v)


def vector(values: Iterable) -> Vector:
    return tuple(Q(x) for x in values)


def vadd(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise DimensionError(f"vector lengths {len(u)} and {len(v)} differ")
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise DimensionError(f"vector lengths {len(u)} and {len(v)} differ")
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u: Sequence) -> Vector:
    c = Q(c)
    return tuple(c * a for a in u)


def vsum(vectors: Iterable[Sequence], n: int) -> Vector:
    acc = [ZERO] * n
    for v in vectors:
        for i, a in enumerate(v):
            if a:
                acc[i] += a
    return tuple(acc)


def lincomb(coeffs: Sequence, vectors: Sequence[Sequence], n: int) -> Vector:
    acc = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if not c:
            continue
        for i, a in enumerate(v):
            if a:
                acc[i] += c * a
    return tuple(acc)


def is_zero(u: Iterable) -> bool:
    return not any(u)


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise DimensionError(f"vector lengths {len(u)} and {len(v)} differ")
    return sum((a * b for a, b in zip(u, v) if a and b), ZERO)


def sparse(v: Sequence) -> dict:
    return {i: a for i, a in enumerate(v) if a}


def densify(d: Mapping[int, Fraction], n: int) -> Vector:
    v = [ZERO] * n
    for i, a in d.items():
        v[i] = a
    return tuple(v)


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

class Matrix:
    """Immutable rational matrix.

    ``entries`` maps ``(row, col)`` to a value; zeros may be passed and are
    dropped.  Storage is a dict of nonzeros unless the fill exceeds
    :data:`DENSE_FILL`, in which case a tuple of row tuples is kept.
    """

    __slots__ = ("rows", "cols", "_sparse", "_dense", "__dict__")

    def __init__(self, rows: int, cols: int, entries: Mapping | None = None):
        if rows < 0 or cols < 0:
            raise DimensionError("negative matrix shape")
        self.rows = rows
        self.cols = cols
        data = {}
        for (i, j), x in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols} matrix")
            x = Q(x)
            if x:
                data[i, j] = x
        size = rows * cols
        if size and len(data) > DENSE_FILL * size:
            table = [[ZERO] * cols for _ in range(rows)]
            for (i, j), x in data.items():
                table[i][j] = x
            self._dense = tuple(tuple(r) for r in table)
            self._sparse = None
        else:
            self._dense = None
            self._sparse = data

    # construction -------------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged row list")
        return cls(len(rows), cols, {(i, j): x for i, r in enumerate(rows) for j, x in enumerate(r) if x})

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        columns = [list(c) for c in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        for c in columns:
            if len(c) != rows:
                raise DimensionError("ragged column list")
        return cls(rows, len(columns), {(i, j): x for j, c in enumerate(columns) for i, x in enumerate(c) if x})

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, {(i, i): ONE for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, {})

    # access -------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_dense(self) -> bool:
        return self._dense is not None

    def __getitem__(self, key) -> Fraction:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols} matrix")
        if self._dense is not None:
            return self._dense[i][j]
        return self._sparse.get((i, j), ZERO)

    def entries(self) -> dict:
        """Nonzero entries as ``{(i, j): value}``."""
        if self._sparse is not None:
            return dict(self._sparse)
        return {(i, j): x for i, r in enumerate(self._dense) for j, x in enumerate(r) if x}

    @cached_property
    def _row_maps(self) -> tuple:
        maps = [dict() for _ in range(self.rows)]
        if self._dense is not None:
            for i, r in enumerate(self._dense):
                maps[i] = {j: x for j, x in enumerate(r) if x}
        else:
            for (i, j), x in self._sparse.items():
                maps[i][j] = x
        return tuple(maps)

    def row_map(self, i: int) -> dict:
        return self._row_maps[i]

    def row(self, i: int) -> Vector:
        return densify(self._row_maps[i], self.cols)

    def column(self, j: int) -> Vector:
        return tuple(self._row_maps[i].get(j, ZERO) for i in range(self.rows))

    def columns(self) -> list[Vector]:
        cols = [[ZERO] * self.rows for _ in range(self.cols)]
        for i, m in enumerate(self._row_maps):
            for j, x in m.items():
                cols[j][i] = x
        return [tuple(c) for c in cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def nnz(self) -> int:
        return sum(len(m) for m in self._row_maps)

    # arithmetic ---------------------------------------------------------
    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, {(j, i): x for (i, j), x in self.entries().items()})

    T = property(transpose)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise DimensionError(f"cannot apply {self.rows}x{self.cols} matrix to length-{len(v)} vector")
        out = []
        for m in self._row_maps:
            s = ZERO
            for j, x in m.items():
                a = v[j]
                if a:
                    s += x * a
            out.append(s)
        return tuple(out)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise DimensionError(f"shape mismatch {self.shape} @ {other.shape}")
            right = other._row_maps
            out = {}
            for i, m in enumerate(self._row_maps):
                acc: dict = {}
                for k, x in m.items():
                    for j, y in right[k].items():
                        acc[j] = acc.get(j, ZERO) + x * y
                for j, z in acc.items():
                    if z:
                        out[i, j] = z
            return Matrix(self.rows, other.cols, out)
        return self.apply(other)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} + {other.shape}")
        acc = self.entries()
        for key, x in other.entries().items():
            acc[key] = acc.get(key, ZERO) + x
        return Matrix(self.rows, self.cols, acc)

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, {k: -x for k, x in self.entries().items()})

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = Q(c)
        return Matrix(self.rows, self.cols, {k: c * x for k, x in self.entries().items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._row_maps == other._row_maps

    __hash__ = None

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == Matrix.identity(self.rows)

    def power(self, k: int) -> "Matrix":
        if self.rows != self.cols:
            raise DimensionError("power of a non-square matrix")
        out = Matrix.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out

    # linear algebra -----------------------------------------------------
    def rank(self) -> int:
        return rank(self)

    def kernel(self) -> list[Vector]:
        return kernel_basis(self)

    def inverse(self) -> "Matrix | None":
        """Two-sided inverse, or None for singular or non-square input."""
        if self.rows != self.cols:
            return None
        n = self.rows
        ech = Echelon(2 * n)
        for i, m in enumerate(self._row_maps):
            row = dict(m)
            row[n + i] = ONE
            ech.add_row(row)
        if any(c >= n for c in ech.pivots) or len(ech.pivots) < n:
            return None
        inv = {}
        for c, r in ech.pivots.items():
            for j, x in r.items():
                if j >= n:
                    inv[c, j - n] = x
        return Matrix(n, n, inv)

    def __repr__(self) -> str:
        kind = "dense" if self.is_dense else "sparse"
        return f"Matrix({self.rows}x{self.cols}, {kind}, nnz={self.nnz})"

    def pretty(self) -> str:
        cells = [[format_rational(x) for x in self.row(i)] for i in range(self.rows)]
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[" + " ".join(c.rjust(width) for c in r) + "]" for r in cells)


def hstack(blocks: Sequence[Matrix]) -> Matrix:
    rows = blocks[0].rows
    out = {}
    off = 0
    for b in blocks:
        if b.rows != rows:
            raise DimensionError("hstack row mismatch")
        for (i, j), x in b.entries().items():
            out[i, j + off] = x
        off += b.cols
    return Matrix(rows, off, out)


def vstack(blocks: Sequence[Matrix]) -> Matrix:
    cols = blocks[0].cols
    out = {}
    off = 0
    for b in blocks:
        if b.cols != cols:
            raise DimensionError("vstack column mismatch")
        for (i, j), x in b.entries().items():
            out[i + off, j] = x
        off += b.rows
    return Matrix(off, cols, out)


# ---------------------------------------------------------------------------
# row reduction
# ---------------------------------------------------------------------------

class Echelon:
    """Incrementally maintained reduced row echelon form.

    Rows are sparse dicts.  Each inserted row is reduced against the
    current pivot rows; if something survives, its leading column becomes a
    new pivot and the existing rows are cleared in that column.  The result
    after any sequence of insertions is the RREF of their span.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict] = {}

    def reduce(self, row: Mapping[int, Fraction]) -> dict:
        r = {j: x for j, x in row.items() if x}
        for c in [c for c in r if c in self.pivots]:
            x = r.get(c)
            if not x:
                continue
            for j, y in self.pivots[c].items():
                z = r.get(j, ZERO) - x * y
                if z:
                    r[j] = z
                else:
                    r.pop(j, None)
        return r

    def add_row(self, row: Mapping[int, Fraction]) -> int | None:
        r = self.reduce(row)
        if not r:
            return None
        lead = min(r)
        inv = ONE / r[lead]
        if inv != ONE:
            r = {j: x * inv for j, x in r.items()}
        for prow in self.pivots.values():
            x = prow.get(lead)
            if x:
                for j, y in r.items():
                    z = prow.get(j, ZERO) - x * y
                    if z:
                        prow[j] = z
                    else:
                        prow.pop(j, None)
        self.pivots[lead] = r
        return lead

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def rows(self) -> list[dict]:
        return [self.pivots[c] for c in sorted(self.pivots)]


def _echelon_of(A: Matrix) -> Echelon:
    ech = Echelon(A.cols)
    for i in range(A.rows):
        m = A.row_map(i)
        if m:
            ech.add_row(m)
            if ech.rank == A.cols:
                break
    return ech


def rref(A: Matrix) -> tuple[Matrix, list[int]]:
    ech = _echelon_of(A)
    piv = sorted(ech.pivots)
    return Matrix(len(piv), A.cols, {(i, j): x for i, c in enumerate(piv) for j, x in ech.pivots[c].items()}), piv


def rank(A: Matrix) -> int:
    return _echelon_of(A).rank


def _kernel_from_echelon(ech: Echelon, n: int) -> list[Vector]:
    free = [j for j in range(n) if j not in ech.pivots]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for c, r in ech.pivots.items():
            x = r.get(f)
            if x:
                v[c] = -x
        basis.append(tuple(v))
    return basis


def kernel_basis(A: Matrix) -> list[Vector]:
    """Null space basis; vector ``k`` has a 1 in the ``k``-th free column and
    zeros in every other free column."""
    return _kernel_from_echelon(_echelon_of(A), A.cols)


def kernel_of_rows(rows: Iterable[Mapping[int, Fraction]], ncols: int) -> list[Vector]:
    """Null space of the system given as an iterable of sparse equations."""
    ech = Echelon(ncols)
    for r in rows:
        if r:
            ech.add_row(r)
    return _kernel_from_echelon(ech, ncols)


def solve_linear(A: Matrix, b: Sequence) -> Vector | None:
    """Some ``x`` with ``A x = b`` (free variables set to zero), or None."""
    if len(b) != A.rows:
        raise DimensionError(f"{A.rows}-row system with length-{len(b)} right-hand side")
    return solve_many(A, [b])[0]


def solve_many(A: Matrix, rhs: Sequence[Sequence]) -> list[Vector | None]:
    """Solve ``A x = b`` for several right-hand sides with one reduction."""
    n = A.cols
    k = len(rhs)
    for b in rhs:
        if len(b) != A.rows:
            raise DimensionError(f"{A.rows}-row system with length-{len(b)} right-hand side")
    ech = Echelon(n + k)
    for i in range(A.rows):
        row = dict(A.row_map(i))
        for t, b in enumerate(rhs):
            x = Q(b[i])
            if x:
                row[n + t] = x
        if row:
            ech.add_row(row)
    bad = set()
    for c, r in ech.pivots.items():
        if c >= n:
            bad.update(j - n for j in r)
    out: list[Vector | None] = []
    for t in range(k):
        if t in bad:
            out.append(None)
            continue
        x = [ZERO] * n
        for c, r in ech.pivots.items():
            if c < n:
                x[c] = r.get(n + t, ZERO)
        out.append(tuple(x))
    for x, b in zip(out, rhs):
        if x is not None and A.apply(x) != tuple(Q(y) for y in b):
            raise AssertionError("back-substitution check failed")
    return out


def span_contains(vectors: Sequence[Sequence], target: Sequence) -> tuple[bool, Vector | None]:
    """Whether ``target`` lies in the span, with coefficients when it does."""
    ok, coeffs = span_contains_many(vectors, [target], len(target))
    return ok[0], coeffs[0]


def span_contains_many(vectors: Sequence[Sequence], targets: Sequence[Sequence], n: int):
    for v in list(vectors) + list(targets):
        if len(v) != n:
            raise DimensionError(f"expected length {n}, got {len(v)}")
    A = Matrix.from_columns(vectors, rows=n) if vectors else Matrix.zeros(n, 0)
    sols = solve_many(A, targets)
    return [s is not None for s in sols], sols


class Subspace:
    """A subspace with a basis that restricts to the identity on ``coord_cols``.

    That normalization makes coordinates a lookup; membership is then a
    single reconstruction check.
    """

    def __init__(self, ambient: int, basis: Sequence[Vector], coord_cols: Sequence[int]):
        self.ambient = ambient
        self.basis = [tuple(b) for b in basis]
        self.coord_cols = list(coord_cols)
        for k, b in enumerate(self.basis):
            if len(b) != ambient:
                raise DimensionError("basis vector of wrong length")
            for t, c in enumerate(self.coord_cols):
                if b[c] != (ONE if t == k else ZERO):
                    raise ValueError("basis is not normalized on its coordinate columns")

    @classmethod
    def kernel(cls, A: Matrix) -> "Subspace":
        ech = _echelon_of(A)
        return cls._from_kernel_echelon(ech, A.cols)

    @classmethod
    def kernel_of_rows(cls, rows: Iterable[Mapping[int, Fraction]], ncols: int) -> "Subspace":
        ech = Echelon(ncols)
        for r in rows:
            if r:
                ech.add_row(r)
        return cls._from_kernel_echelon(ech, ncols)

    @classmethod
    def _from_kernel_echelon(cls, ech: Echelon, n: int) -> "Subspace":
        free = [j for j in range(n) if j not in ech.pivots]
        return cls(n, _kernel_from_echelon(ech, n), free)

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient: int) -> "Subspace":
        ech = Echelon(ambient)
        for v in vectors:
            if len(v) != ambient:
                raise DimensionError("vector of wrong length")
            ech.add_row(sparse(v))
        piv = sorted(ech.pivots)
        return cls(ambient, [densify(ech.pivots[c], ambient) for c in piv], piv)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, v: Sequence) -> Vector | None:
        c = tuple(v[j] for j in self.coord_cols)
        if lincomb(c, self.basis, self.ambient) != tuple(v):
            return None
        return c

    def coords_strict(self, v: Sequence) -> Vector:
        c = self.coords(v)
        if c is None:
            raise ValueError("vector does not lie in the subspace")
        return c

    def contains(self, v: Sequence) -> bool:
        return self.coords(v) is not None

    def element(self, coeffs: Sequence) -> Vector:
        return lincomb(coeffs, self.basis, self.ambient)

    def same_as(self, other: "Subspace") -> bool:
        return self.dim == other.dim and all(other.contains(b) for b in self.basis)

    def basis_matrix(self) -> Matrix:
        """Columns are the basis vectors (the inclusion map)."""
        return Matrix.from_columns(self.basis, rows=self.ambient)


# ---------------------------------------------------------------------------
# sparse 3-tensors
# ---------------------------------------------------------------------------

class Tensor3:
    """Sparse 3-index array with only nonzero entries stored."""

    __slots__ = ("dims", "_entries", "__dict__")

    def __init__(self, dims: tuple[int, int, int], entries: Mapping | None = None):
        self.dims = tuple(dims)
        data = {}
        d1, d2, d3 = self.dims
        for (i, j, k), x in (entries or {}).items():
            if not (0 <= i < d1 and 0 <= j < d2 and 0 <= k < d3):
                raise IndexError(f"entry ({i}, {j}, {k}) outside dims {self.dims}")
            x = Q(x)
            if x:
                data[i, j, k] = data.get((i, j, k), ZERO) + x
        self._entries = {key: x for key, x in data.items() if x}

    @property
    def entries(self) -> dict:
        return self._entries

    def __getitem__(self, key) -> Fraction:
        return self._entries.get(tuple(key), ZERO)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor3):
            return NotImplemented
        return self.dims == other.dims and self._entries == other._entries

    __hash__ = None

    def __len__(self) -> int:
        return len(self._entries)

    @cached_property
    def by_pair(self) -> dict:
        """``(i, j) -> [(k, value), ...]``"""
        out: dict = {}
        for (i, j, k), x in sorted(self._entries.items()):
            out.setdefault((i, j), []).append((k, x))
        return out

    @cached_property
    def by_first(self) -> dict:
        """``i -> [(j, k, value), ...]``"""
        out: dict = {}
        for (i, j, k), x in sorted(self._entries.items()):
            out.setdefault(i, []).append((j, k, x))
        return out

    def pair(self, i: int, j: int) -> list:
        return self.by_pair.get((i, j), [])

    def first(self, i: int) -> list:
        return self.by_first.get(i, [])

    def permuted(self, order: tuple[int, int, int]) -> "Tensor3":
        """Reindex so that new index position ``p`` reads old position ``order[p]``."""
        dims = tuple(self.dims[o] for o in order)
        return Tensor3(dims, {tuple(key[o] for o in order): x for key, x in self._entries.items()})

    def bilinear(self, u: Sequence, v: Sequence) -> Vector:
        """``sum_{i,j} u_i v_j T[i, j, :]``"""
        out = [ZERO] * self.dims[2]
        bp = self.by_pair
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, x in bp.get((i, j), ()):
                    out[k] += ab * x
        return tuple(out)

    def slice_first(self, i: int) -> Matrix:
        """The matrix ``M[k, j] = T[i, j, k]``: how basis ``i`` maps the second slot."""
        return Matrix(self.dims[2], self.dims[1], {(k, j): x for j, k, x in self.first(i)})

    def slice_second(self, j: int) -> Matrix:
        """The matrix ``M[k, i] = T[i, j, k]``."""
        return Matrix(self.dims[2], self.dims[0], {(k, i): x for (i, jj, k), x in self._entries.items() if jj == j})

    def __repr__(self) -> str:
        return f"Tensor3(dims={self.dims}, nnz={len(self._entries)})"
