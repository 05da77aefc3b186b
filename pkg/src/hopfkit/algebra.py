"""Finite-dimensional unital algebras given by structure constants."""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import DimensionError
from .exactlin import (
    ONE,
    ZERO,
    Matrix,
    Tensor3,
    Vector,
    format_rational,
    kernel_basis,
    unit_vector,
    vector,
    vstack,
)
from .report import Report


def element_str(v: Sequence, labels: Sequence[str]) -> str:
    """Human-readable linear combination such as ``x + -1/2*gx``."""
    parts = []
    for x, lab in zip(v, labels):
        if not x:
            continue
        if x == 1:
            parts.append(lab)
        elif x == -1:
            parts.append(f"-{lab}")
        else:
            parts.append(f"{format_rational(x)}*{lab}")
    return " + ".join(parts) if parts else "0"


class UnitalAlgebra:
    """Associative unital algebra on a labelled basis.

    ``mult[i, j, k]`` is the coefficient of ``e_k`` in ``e_i e_j``.
    Nothing is verified on construction; call :meth:`verify`.
    """

    def __init__(self, labels: Sequence[str], mult: Tensor3, unit: Sequence, name: str | None = None):
        self.labels = tuple(str(x) for x in labels)
        n = len(self.labels)
        if mult.dims != (n, n, n):
            raise DimensionError(f"multiplication tensor dims {mult.dims} do not match dimension {n}")
        if len(unit) != n:
            raise DimensionError(f"unit vector has length {len(unit)}, expected {n}")
        self.mult = mult
        self.unit = vector(unit)
        self.name = name

    @property
    def dim(self) -> int:
        return len(self.labels)

    def basis(self, i: int) -> Vector:
        return unit_vector(self.dim, i)

    @property
    def one(self) -> Vector:
        return self.unit

    @property
    def zero(self) -> Vector:
        return (ZERO,) * self.dim

    def mul(self, u: Sequence, v: Sequence) -> Vector:
        return self.mult.bilinear(u, v)

    def mul_basis(self, i: int, j: int) -> Vector:
        out = [ZERO] * self.dim
        for k, x in self.mult.pair(i, j):
            out[k] = x
        return tuple(out)

    def left_matrix(self, u: Sequence) -> Matrix:
        """Matrix of ``v -> u v``."""
        n = self.dim
        ent = {}
        for i, a in enumerate(u):
            if not a:
                continue
            for j in range(n):
                for k, x in self.mult.pair(i, j):
                    ent[k, j] = ent.get((k, j), ZERO) + a * x
        return Matrix(n, n, ent)

    def right_matrix(self, u: Sequence) -> Matrix:
        """Matrix of ``v -> v u``."""
        n = self.dim
        ent = {}
        for j, a in enumerate(u):
            if not a:
                continue
            for i in range(n):
                for k, x in self.mult.pair(i, j):
                    ent[k, i] = ent.get((k, i), ZERO) + a * x
        return Matrix(n, n, ent)

    @cached_property
    def left_basis_matrices(self) -> tuple:
        return tuple(self.left_matrix(self.basis(i)) for i in range(self.dim))

    @cached_property
    def right_basis_matrices(self) -> tuple:
        return tuple(self.right_matrix(self.basis(i)) for i in range(self.dim))

    def is_commutative(self) -> bool:
        return all(self.mul_basis(i, j) == self.mul_basis(j, i) for i in range(self.dim) for j in range(i))

    def same_structure(self, other: "UnitalAlgebra") -> bool:
        return self.dim == other.dim and self.mult == other.mult and self.unit == other.unit

    def opposite(self) -> "UnitalAlgebra":
        return UnitalAlgebra(self.labels, self.mult.permuted((1, 0, 2)), self.unit, name=f"{self.name or 'A'}^op")

    def element_str(self, v: Sequence) -> str:
        return element_str(v, self.labels)

    def verify(self) -> Report:
        """Associativity, two-sided unit and non-degeneracy of the product."""
        rep = Report(f"algebra {self.name or ''}".strip(), data={"dim": self.dim})
        n = self.dim
        prods = [[self.mul_basis(i, j) for j in range(n)] for i in range(n)]
        witness = None
        for i in range(n):
            for j in range(n):
                ij = prods[i][j]
                for k in range(n):
                    left = self.mul(ij, self.basis(k))
                    right = self.mul(self.basis(i), prods[j][k])
                    if left != right:
                        witness = (self.labels[i], self.labels[j], self.labels[k])
                        break
                if witness:
                    break
            if witness:
                break
        rep.add("associativity", witness is None, witness)
        bad = None
        for i in range(n):
            e = self.basis(i)
            if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                bad = self.labels[i]
                break
        rep.add("unit", bad is None, bad)
        rep.add("non-degenerate product", self.is_nondegenerate())
        return rep

    def is_nondegenerate(self) -> bool:
        """Left and right multiplication representations are jointly injective."""
        if self.dim == 0:
            return True
        left = vstack([self.left_basis_matrices[i] for i in range(self.dim)])
        right = vstack([self.right_basis_matrices[i] for i in range(self.dim)])
        return not kernel_basis(left) and not kernel_basis(right)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name or '?'}, dim={self.dim})"


def base_field() -> UnitalAlgebra:
    return UnitalAlgebra(["1"], Tensor3((1, 1, 1), {(0, 0, 0): ONE}), [ONE], name="k")


def tensor_algebra(A: UnitalAlgebra, B: UnitalAlgebra, sep: str = "⊗") -> UnitalAlgebra:
    """``A ⊗ B`` with componentwise product; basis index ``a * dim B + b``."""
    na, nb = A.dim, B.dim
    ent = {}
    for (i, j, k), x in A.mult.entries.items():
        for (p, q, r), y in B.mult.entries.items():
            ent[i * nb + p, j * nb + q, k * nb + r] = x * y
    unit = [ZERO] * (na * nb)
    for i, x in enumerate(A.unit):
        if x:
            for p, y in enumerate(B.unit):
                if y:
                    unit[i * nb + p] = x * y
    labels = [f"{a}{sep}{b}" for a in A.labels for b in B.labels]
    return UnitalAlgebra(labels, Tensor3((na * nb,) * 3, ent), unit, name=f"{A.name or 'A'}{sep}{B.name or 'B'}")


def subalgebra(A: UnitalAlgebra, basis: Sequence[Vector], coords, labels=None, name=None) -> UnitalAlgebra:
    """Structure constants of the subalgebra spanned by ``basis``.

    ``coords`` maps an element of ``A`` to its coordinates in ``basis`` and
    returns None when the element is outside the span.
    """
    r = len(basis)
    ent = {}
    for i in range(r):
        for j in range(r):
            c = coords(A.mul(basis[i], basis[j]))
            if c is None:
                raise ValueError("span is not closed under multiplication")
            for k, x in enumerate(c):
                if x:
                    ent[i, j, k] = x
    u = coords(A.unit)
    if u is None:
        raise ValueError("span does not contain the unit")
    if labels is None:
        labels = [A.element_str(b) for b in basis]
    return UnitalAlgebra(labels, Tensor3((r, r, r), ent), u, name=name)


def algebra_from_table(labels: Sequence[str], products: dict, unit_label: str, name=None) -> UnitalAlgebra:
    """Build an algebra from ``{(label_i, label_j): {label_k: coeff}}``; missing products are zero."""
    idx = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    ent = {}
    for (a, b), out in products.items():
        for c, x in out.items():
            ent[idx[a], idx[b], idx[c]] = Fraction(x)
    return UnitalAlgebra(labels, Tensor3((n, n, n), ent), unit_vector(n, idx[unit_label]), name=name)
