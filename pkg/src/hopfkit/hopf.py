"""Finite-dimensional bialgebras and Hopf algebras.

A bialgebra is stored as structure constants: ``mult[i, j, k]`` is the
coefficient of ``e_k`` in ``e_i e_j`` and ``comult[i, j, k]`` the
coefficient of ``e_j ⊗ e_k`` in ``Δ(e_i)``.  Elements of ``H ⊗ H`` are
flattened as ``j * dim + k``.

The counit and antipode are derived by solving linear systems, never
assumed.  In finite dimension a unital multiplier Hopf algebra is an
ordinary Hopf algebra, its multiplier algebra is itself, and the dual is
the full linear dual; everything below works in that setting.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .algebra import UnitalAlgebra
from .errors import DimensionError, InconsistencyError, NoSolutionError, VerificationError
from .exactlin import (
    ONE,
    ZERO,
    Matrix,
    Subspace,
    Tensor3,
    Vector,
    kernel_of_rows,
    rank,
    solve_linear,
    vector,
)
from .report import Report


class Bialgebra(UnitalAlgebra):
    """Algebra with a comultiplication and an optional counit."""

    def __init__(self, labels, mult: Tensor3, unit, comult: Tensor3, counit=None, name=None):
        super().__init__(labels, mult, unit, name=name)
        n = self.dim
        if comult.dims != (n, n, n):
            raise DimensionError(f"comultiplication tensor dims {comult.dims} do not match dimension {n}")
        self.comult = comult
        if counit is not None and len(counit) != n:
            raise DimensionError(f"counit has length {len(counit)}, expected {n}")
        self.counit = vector(counit) if counit is not None else None

    # tensor-square helpers; elements of H⊗H are dicts {(a, b): coeff}
    def delta(self, i: int) -> dict:
        return {(j, k): x for j, k, x in self.comult.first(i)}

    def delta_of(self, v: Sequence) -> dict:
        out: dict = {}
        for i, a in enumerate(v):
            if a:
                for j, k, x in self.comult.first(i):
                    out[j, k] = out.get((j, k), ZERO) + a * x
        return {key: x for key, x in out.items() if x}

    def tmul(self, X: dict, Y: dict) -> dict:
        """Product in the tensor-square algebra."""
        out: dict = {}
        mp = self.mult.pair
        for (a, b), x in X.items():
            for (c, d), y in Y.items():
                xy = x * y
                left = mp(a, c)
                if not left:
                    continue
                right = mp(b, d)
                for p, s in left:
                    for q, t in right:
                        out[p, q] = out.get((p, q), ZERO) + xy * s * t
        return {key: x for key, x in out.items() if x}

    def flat(self, X: dict) -> Vector:
        n = self.dim
        v = [ZERO] * (n * n)
        for (a, b), x in X.items():
            v[a * n + b] = x
        return tuple(v)

    def is_cocommutative(self) -> bool:
        return all(self.comult[i, j, k] == self.comult[i, k, j] for (i, j, k) in self.comult.entries)

    def same_structure(self, other) -> bool:
        return (
            super().same_structure(other)
            and isinstance(other, Bialgebra)
            and self.comult == other.comult
        )


class HopfAlgebra(Bialgebra):
    """Bialgebra with counit, antipode and inverse antipode.

    The inverse antipode is the antipode of the co-opposite Hopf algebra.
    Use :func:`make_hopf` to derive the maps; the constructor only stores.
    """

    def __init__(self, labels, mult, unit, comult, counit, antipode: Matrix, antipode_inv: Matrix, name=None):
        super().__init__(labels, mult, unit, comult, counit, name=name)
        n = self.dim
        if antipode.shape != (n, n) or antipode_inv.shape != (n, n):
            raise DimensionError("antipode matrices must be square of the algebra dimension")
        self.antipode = antipode
        self.antipode_inv = antipode_inv

    def eps(self, v: Sequence):
        return sum((a * e for a, e in zip(v, self.counit) if a), ZERO)

    def S(self, v: Sequence) -> Vector:
        return self.antipode.apply(v)

    def S_inv(self, v: Sequence) -> Vector:
        return self.antipode_inv.apply(v)

    @cached_property
    def dual(self) -> "HopfAlgebra":
        return dual(self)

    def same_structure(self, other) -> bool:
        return (
            super().same_structure(other)
            and isinstance(other, HopfAlgebra)
            and self.counit == other.counit
            and self.antipode == other.antipode
        )


@dataclass(frozen=True)
class LinearFunctional:
    algebra: UnitalAlgebra
    coords: Vector

    def __call__(self, v: Sequence):
        return sum((a * b for a, b in zip(self.coords, v) if a and b), ZERO)

    def __post_init__(self):
        if len(self.coords) != self.algebra.dim:
            raise DimensionError("functional length does not match algebra dimension")


@dataclass(frozen=True)
class HopfMorphism:
    """Linear map given by ``matrix`` (target.dim x source.dim)."""

    source: HopfAlgebra
    target: HopfAlgebra
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise DimensionError(
                f"morphism matrix is {self.matrix.shape}, expected {(self.target.dim, self.source.dim)}"
            )

    def __call__(self, v: Sequence) -> Vector:
        return self.matrix.apply(v)


# ---------------------------------------------------------------------------
# axioms
# ---------------------------------------------------------------------------

def verify_bialgebra(B: Bialgebra) -> Report:
    """Associativity, unit, coassociativity and multiplicativity of Δ.

    Each failing check carries the first failing basis tuple as witness.
    A supplied counit is checked as well.
    """
    rep = B.verify()
    rep.title = f"bialgebra {B.name or ''}".strip()
    n = B.dim
    lab = B.labels

    witness = None
    for i in range(n):
        d = B.delta(i)
        left: dict = {}
        right: dict = {}
        for (a, b), x in d.items():
            for (c, e), y in B.delta(b).items():
                left[a, c, e] = left.get((a, c, e), ZERO) + x * y
            for (c, e), y in B.delta(a).items():
                right[c, e, b] = right.get((c, e, b), ZERO) + x * y
        left = {k: v for k, v in left.items() if v}
        right = {k: v for k, v in right.items() if v}
        if left != right:
            witness = lab[i]
            break
    rep.add("coassociativity", witness is None, witness)

    unit_delta = B.delta_of(B.unit)
    one_one = {}
    for i, a in enumerate(B.unit):
        for j, b in enumerate(B.unit):
            if a and b:
                one_one[i, j] = a * b
    rep.add("Δ unital", unit_delta == one_one)

    witness = None
    for i in range(n):
        di = B.delta(i)
        for j in range(n):
            lhs = B.delta_of(B.mul_basis(i, j))
            rhs = B.tmul(di, B.delta(j))
            if lhs != rhs:
                witness = (lab[i], lab[j])
                break
        if witness:
            break
    rep.add("Δ multiplicative", witness is None, witness)

    if B.counit is not None:
        rep.add("counit laws", _counit_witness(B, B.counit) is None, _counit_witness(B, B.counit))
    return rep


def _counit_witness(B: Bialgebra, eps: Sequence):
    n = B.dim
    for i in range(n):
        left = [ZERO] * n
        right = [ZERO] * n
        for j, k, x in B.comult.first(i):
            left[k] += eps[j] * x
            right[j] += eps[k] * x
        e = B.basis(i)
        if tuple(left) != e or tuple(right) != e:
            return B.labels[i]
    return None


def solve_counit(B: Bialgebra) -> LinearFunctional:
    """The unique ``ε`` with ``(ε⊗ι)Δ = ι = (ι⊗ε)Δ``."""
    n = B.dim
    rows = []
    rhs = []
    for i in range(n):
        for k in range(n):
            row = [ZERO] * n
            for j, kk, x in B.comult.first(i):
                if kk == k:
                    row[j] += x
            rows.append(row)
            rhs.append(ONE if i == k else ZERO)
        for j in range(n):
            row = [ZERO] * n
            for jj, k, x in B.comult.first(i):
                if jj == j:
                    row[k] += x
            rows.append(row)
            rhs.append(ONE if i == j else ZERO)
    sol = solve_linear(Matrix.from_rows(rows, n), rhs)
    if sol is None:
        raise NoSolutionError(f"{B.name or 'bialgebra'}: no counit solves the counit laws")
    if B.counit is not None and tuple(B.counit) != sol:
        raise NoSolutionError(f"{B.name or 'bialgebra'}: supplied counit contradicts the solved counit {sol}")
    return LinearFunctional(B, sol)


def _antipode_rows(B: Bialgebra, eps: Sequence, side: str):
    """Linear equations on the entries ``S[l, j]`` (variable ``l * n + j``)."""
    n = B.dim
    rows = []
    rhs = []
    for i in range(n):
        acc: dict = {}
        for j, k, c in B.comult.first(i):
            for l in range(n):
                if side == "left":
                    prods = B.mult.pair(l, k)
                    var = l * n + j
                else:
                    prods = B.mult.pair(j, l)
                    var = l * n + k
                for p, m in prods:
                    row = acc.setdefault(p, {})
                    row[var] = row.get(var, ZERO) + c * m
        for p in range(n):
            rows.append(acc.get(p, {}))
            rhs.append(eps[i] * B.unit[p])
    return rows, rhs


def solve_antipode(B: Bialgebra, eps: LinearFunctional | Sequence) -> Matrix:
    """Matrix of the convolution inverse of the identity.

    Both antipode equations are solved as one system.  When only one side
    is solvable the error says which.
    """
    coords = eps.coords if isinstance(eps, LinearFunctional) else vector(eps)
    n = B.dim
    lrows, lrhs = _antipode_rows(B, coords, "left")
    rrows, rrhs = _antipode_rows(B, coords, "right")

    def solve(rows, rhs):
        A = Matrix(len(rows), n * n, {(r, v): x for r, row in enumerate(rows) for v, x in row.items()})
        return solve_linear(A, rhs)

    sol = solve(lrows + rrows, lrhs + rrhs)
    if sol is None:
        left_ok = solve(lrows, lrhs) is not None
        right_ok = solve(rrows, rrhs) is not None
        raise NoSolutionError(
            f"{B.name or 'bialgebra'}: identity has no two-sided convolution inverse "
            f"(left inverse {'exists' if left_ok else 'missing'}, right inverse {'exists' if right_ok else 'missing'})"
        )
    return Matrix(n, n, {(l, j): sol[l * n + j] for l in range(n) for j in range(n) if sol[l * n + j]})


def make_hopf(B: Bialgebra, *, check: bool = True) -> HopfAlgebra:
    """Derive counit, antipode and its inverse; optionally verify the bialgebra axioms first."""
    if check:
        rep = verify_bialgebra(B)
        if not rep.ok:
            raise VerificationError(f"{B.name or 'bialgebra'} fails bialgebra axioms", rep)
    eps = solve_counit(B)
    S = solve_antipode(B, eps)
    S_inv = S.inverse()
    if S_inv is None:
        raise NoSolutionError(f"{B.name or 'bialgebra'}: antipode is not bijective (not regular)")
    return HopfAlgebra(B.labels, B.mult, B.unit, B.comult, eps.coords, S, S_inv, name=B.name)


def galois_maps(H: Bialgebra) -> dict:
    """Matrices of ``T1(x⊗y) = Δ(x)(1⊗y)`` and ``T2(x⊗y) = (x⊗1)Δ(y)`` with bijectivity verdicts."""
    n = H.dim
    t1 = {}
    t2 = {}
    for i in range(n):
        for j in range(n):
            col = i * n + j
            for a, b, c in H.comult.first(i):
                for q, m in H.mult.pair(b, j):
                    key = (a * n + q, col)
                    t1[key] = t1.get(key, ZERO) + c * m
            for a, b, c in H.comult.first(j):
                for p, m in H.mult.pair(i, a):
                    key = (p * n + b, col)
                    t2[key] = t2.get(key, ZERO) + c * m
    T1 = Matrix(n * n, n * n, t1)
    T2 = Matrix(n * n, n * n, t2)
    return {"T1": T1, "T2": T2, "T1_bijective": rank(T1) == n * n, "T2_bijective": rank(T2) == n * n}


def verify_hopf(H: HopfAlgebra) -> Report:
    """Bialgebra axioms plus the four counit/antipode identities on every
    basis pair, Galois map bijectivity, and the standard antipode facts."""
    rep = verify_bialgebra(H)
    rep.title = f"Hopf algebra {H.name or ''}".strip()
    n = H.dim
    lab = H.labels
    S = [H.S(H.basis(i)) for i in range(n)]

    def first_failure(fn):
        for i in range(n):
            for j in range(n):
                if not fn(i, j):
                    return (lab[i], lab[j])
        return None

    def eq1(x, y):
        acc = [ZERO] * n
        for a, b, c in H.comult.first(x):
            if H.counit[a]:
                for k, m in H.mult.pair(b, y):
                    acc[k] += c * H.counit[a] * m
        return tuple(acc) == H.mul_basis(x, y)

    def eq2(x, y):
        acc = [ZERO] * n
        for a, b, c in H.comult.first(y):
            if H.counit[b]:
                for k, m in H.mult.pair(x, a):
                    acc[k] += c * H.counit[b] * m
        return tuple(acc) == H.mul_basis(x, y)

    def eq3(x, y):
        acc = [ZERO] * n
        for a, b, c in H.comult.first(x):
            by = H.mul_basis(b, y)
            for k, v in enumerate(H.mul(S[a], by)):
                acc[k] += c * v
        return tuple(acc) == tuple(H.counit[x] * v for v in H.basis(y))

    def eq4(x, y):
        acc = [ZERO] * n
        for a, b, c in H.comult.first(y):
            xa = H.mul_basis(x, a)
            for k, v in enumerate(H.mul(xa, S[b])):
                acc[k] += c * v
        return tuple(acc) == tuple(H.counit[y] * v for v in H.basis(x))

    for name, fn in [
        ("counit left: (ε⊗ι)(Δ(x)(1⊗y)) = xy", eq1),
        ("counit right: (ι⊗ε)((x⊗1)Δ(y)) = xy", eq2),
        ("antipode left: m(S⊗ι)(Δ(x)(1⊗y)) = ε(x)y", eq3),
        ("antipode right: m(ι⊗S)((x⊗1)Δ(y)) = ε(y)x", eq4),
    ]:
        w = first_failure(fn)
        rep.add(name, w is None, w)

    g = galois_maps(H)
    rep.add("T1 bijective", g["T1_bijective"])
    rep.add("T2 bijective", g["T2_bijective"])

    rep.add("S bijective", rank(H.antipode) == n)
    rep.add("S·S⁻¹ = id", (H.antipode @ H.antipode_inv).is_identity() and (H.antipode_inv @ H.antipode).is_identity())

    w = first_failure(lambda i, j: H.S(H.mul_basis(i, j)) == H.mul(S[j], S[i]))
    rep.add("S antihomomorphism", w is None, w)
    rep.add("S(1) = 1", H.S(H.unit) == H.unit)

    w = None
    for i in range(n):
        if H.eps(S[i]) != H.counit[i]:
            w = lab[i]
            break
    rep.add("ε∘S = ε", w is None, w)

    w = None
    for i in range(n):
        lhs = H.delta_of(S[i])
        rhs: dict = {}
        for a, b, c in H.comult.first(i):
            for p, x in enumerate(S[b]):
                if not x:
                    continue
                for q, y in enumerate(S[a]):
                    if y:
                        rhs[p, q] = rhs.get((p, q), ZERO) + c * x * y
        rhs = {k: v for k, v in rhs.items() if v}
        if lhs != rhs:
            w = lab[i]
            break
    rep.add("Δ∘S = (S⊗S)∘Δ^op", w is None, w)
    return rep


# ---------------------------------------------------------------------------
# integrals and invariant functionals
# ---------------------------------------------------------------------------

def _normalize_first(v: Vector) -> Vector:
    for x in v:
        if x:
            return tuple(a / x for a in v)
    return v


def left_integrals(H: HopfAlgebra) -> list[Vector]:
    """Basis of ``{t : x t = ε(x) t for all x}``."""
    n = H.dim
    rows = []
    for i in range(n):
        eq: dict = {}
        for k in range(n):
            for p, m in H.mult.pair(i, k):
                eq.setdefault(p, {})[k] = eq.get(p, {}).get(k, ZERO) + m
        for p in range(n):
            row = eq.get(p, {})
            row[p] = row.get(p, ZERO) - H.counit[i]
            rows.append(row)
    return [_normalize_first(v) for v in kernel_of_rows(rows, n)]


def right_integrals(H: HopfAlgebra) -> list[Vector]:
    """Basis of ``{t : t x = ε(x) t for all x}``."""
    n = H.dim
    rows = []
    for i in range(n):
        eq: dict = {}
        for k in range(n):
            for p, m in H.mult.pair(k, i):
                eq.setdefault(p, {})[k] = eq.get(p, {}).get(k, ZERO) + m
        for p in range(n):
            row = eq.get(p, {})
            row[p] = row.get(p, ZERO) - H.counit[i]
            rows.append(row)
    return [_normalize_first(v) for v in kernel_of_rows(rows, n)]


def invariant_functionals(H: HopfAlgebra) -> tuple[list[LinearFunctional], list[LinearFunctional]]:
    """Bases of left invariant ``(ι⊗φ)Δ(x) = φ(x)1`` and right invariant
    ``(φ⊗ι)Δ(x) = φ(x)1`` functionals, normalized as by :func:`left_invariant_functional`."""
    n = H.dim
    left_rows = []
    right_rows = []
    for i in range(n):
        lq: dict = {}
        rq: dict = {}
        for j, k, c in H.comult.first(i):
            lq.setdefault(j, {})[k] = lq.get(j, {}).get(k, ZERO) + c
            rq.setdefault(k, {})[j] = rq.get(k, {}).get(j, ZERO) + c
        for p in range(n):
            for eqs, out in ((lq, left_rows), (rq, right_rows)):
                row = dict(eqs.get(p, {}))
                if H.unit[p]:
                    row[i] = row.get(i, ZERO) - H.unit[p]
                out.append(row)
    left = kernel_of_rows(left_rows, n)
    right = kernel_of_rows(right_rows, n)
    t = left_integrals(H)
    return ([LinearFunctional(H, _normalize_on(v, t)) for v in left],
            [LinearFunctional(H, _normalize_on(v, t)) for v in right])


def _normalize_on(v: Vector, integrals: list[Vector]) -> Vector:
    if len(integrals) == 1:
        val = sum((a * b for a, b in zip(v, integrals[0])), ZERO)
        if val:
            return tuple(a / val for a in v)
    return _normalize_first(v)


def left_invariant_functional(H: HopfAlgebra) -> LinearFunctional:
    """The left invariant functional with ``φ(t) = 1`` on the normalized left integral ``t``
    (falling back to first nonzero coordinate 1 if ``φ(t) = 0``)."""
    left, _ = invariant_functionals(H)
    if len(left) != 1:
        raise InconsistencyError(f"{H.name}: left invariant functionals span dimension {len(left)}, expected 1")
    return left[0]


def is_unimodular(H: HopfAlgebra) -> bool:
    """``φ∘S = φ`` for the normalized left invariant functional.

    The integral criterion (equal left and right integral spaces) is
    computed alongside; a disagreement raises :class:`InconsistencyError`.
    """
    phi = left_invariant_functional(H)
    phi_S = tuple(sum((phi.coords[l] * H.antipode[l, j] for l in range(H.dim)), ZERO) for j in range(H.dim))
    functional = phi_S == phi.coords
    lefts = Subspace.span(left_integrals(H), H.dim)
    rights = Subspace.span(right_integrals(H), H.dim)
    integral = lefts.same_as(rights)
    if functional != integral:
        raise InconsistencyError(
            f"{H.name}: φ∘S = φ is {functional} but equality of integral spaces is {integral}"
        )
    return functional


# ---------------------------------------------------------------------------
# duality
# ---------------------------------------------------------------------------

def dual(H: HopfAlgebra, prefix: str = "δ:") -> HopfAlgebra:
    """Linear dual on the dual basis: product = transposed Δ, coproduct =
    transposed product, unit = ε, counit = evaluation at 1, antipode = Sᵀ."""
    mult = H.comult.permuted((1, 2, 0))
    comult = H.mult.permuted((2, 0, 1))
    name = f"dual({H.name})" if H.name else None
    return HopfAlgebra(
        [prefix + lab for lab in H.labels],
        mult,
        H.counit,
        comult,
        H.unit,
        H.antipode.transpose(),
        H.antipode_inv.transpose(),
        name=name,
    )


def dual_morphism(pi: HopfMorphism) -> HopfMorphism:
    """Transpose map ``U* -> H*`` of ``π: H -> U``."""
    return HopfMorphism(pi.target.dual, pi.source.dual, pi.matrix.transpose())


def double_dual_iso(H: HopfAlgebra) -> HopfMorphism:
    """Evaluation map ``H -> H**`` (the identity matrix on matched bases), certified."""
    iso = HopfMorphism(H, dual(dual(H)), Matrix.identity(H.dim))
    rep = verify_morphism(iso)
    if not rep.ok or not is_surjective(iso):
        raise InconsistencyError(f"canonical map into the double dual of {H.name} failed certification")
    return iso


def _minimal_relation(A: UnitalAlgebra, v: Sequence) -> Vector:
    """Coefficients ``c_0..c_d`` (``c_d = 1``) of the minimal polynomial of v."""
    powers = [A.one]
    while True:
        nxt = A.mul(powers[-1], v)
        coeffs = solve_linear(Matrix.from_columns(powers, rows=A.dim), nxt)
        if coeffs is not None:
            return tuple(-c for c in coeffs) + (ONE,)
        powers.append(nxt)


def _satisfies(A: UnitalAlgebra, v: Sequence, rel: Sequence) -> bool:
    acc = [ZERO] * A.dim
    p = A.one
    for c in rel:
        acc = [a + c * x for a, x in zip(acc, p)]
        p = A.mul(p, v)
    return not any(acc)


def algebra_generators(A: UnitalAlgebra) -> list[int]:
    """Basis indices generating A, chosen greedily in basis order."""
    gens: list[int] = []
    for i in range(A.dim):
        if generated_words(A, [A.basis(g) for g in gens])[1].contains(A.basis(i)):
            continue
        gens.append(i)
    return gens


def generated_words(A: UnitalAlgebra, gens: Sequence[Sequence]) -> tuple[list, Subspace]:
    """Words (tuples of generator positions) whose products span the generated subalgebra."""
    words, vecs = [()], [A.one]
    span = Subspace.span(vecs, A.dim)
    frontier = [((), A.one)]
    while frontier:
        nxt = []
        for w, v in frontier:
            for g, gv in enumerate(gens):
                u = A.mul(v, gv)
                if not span.contains(u):
                    words.append(w + (g,))
                    vecs.append(u)
                    span = Subspace.span(vecs, A.dim)
                    nxt.append((w + (g,), u))
        frontier = nxt
    return words, span


def find_isomorphism(H: HopfAlgebra, K: HopfAlgebra, values=(-1, 0, 1)) -> HopfMorphism | None:
    """Search for a Hopf isomorphism ``H → K`` sending algebra generators of
    H to vectors with coordinates in ``values``.

    Candidates must match the counit and minimal polynomial of each
    generator; survivors are extended along spanning words and certified
    with ``verify_morphism`` and a rank check.  ``None`` means no
    isomorphism of this restricted shape exists.
    """
    from itertools import product

    if H.dim != K.dim:
        return None
    n = H.dim
    gens = algebra_generators(H)
    gvecs = [H.basis(g) for g in gens]
    words, _ = generated_words(H, gvecs)
    W = Matrix.from_columns([_word_value(H, w, gvecs) for w in words], rows=n)
    W_inv = W.inverse()
    if W_inv is None:
        return None
    pool = [vector(c) for c in product([vector([x])[0] for x in values], repeat=n)]
    cands = []
    for g, gv in zip(gens, gvecs):
        rel = _minimal_relation(H, gv)
        cands.append([v for v in pool if K.eps(v) == H.counit[g] and _satisfies(K, v, rel)])
    for choice in product(*cands):
        Y = Matrix.from_columns([_word_value(K, w, choice) for w in words], rows=n)
        M = Y @ W_inv
        if rank(M) != n:
            continue
        iso = HopfMorphism(H, K, M)
        if verify_morphism(iso).ok:
            return iso
    return None


def _word_value(A: UnitalAlgebra, word: Sequence[int], gens: Sequence[Sequence]) -> Vector:
    v = A.one
    for g in word:
        v = A.mul(v, gens[g])
    return v


def functional_dual_check(H: HopfAlgebra) -> Report:
    """Compare the ``φ_x = φ(· x)`` presentation of the dual with the transpose construction.

    Checks that the map ``x -> φ_x`` is a bijection onto ``H*`` and that the
    convolution ``φ_x ⋆ φ_y`` evaluated directly on ``Δ`` agrees with the
    product of the transposed dual in coordinates.
    """
    rep = Report(f"functional presentation of dual({H.name})")
    n = H.dim
    phi = left_invariant_functional(H)
    cols = []
    for x in range(n):
        cols.append(tuple(phi(H.mul_basis(z, x)) for z in range(n)))
    F = Matrix.from_columns(cols, rows=n)
    rep.add("x ↦ φ_x bijective", rank(F) == n)
    D = dual(H)
    bad = None
    for x in range(n):
        for y in range(n):
            direct = []
            for z in range(n):
                s = ZERO
                for a, b, c in H.comult.first(z):
                    s += c * cols[x][a] * cols[y][b]
                direct.append(s)
            if tuple(direct) != D.mul(cols[x], cols[y]):
                bad = (H.labels[x], H.labels[y])
                break
        if bad:
            break
    rep.add("φ_x ⋆ φ_y matches transposed product", bad is None, bad)
    return rep


# ---------------------------------------------------------------------------
# morphisms and subgroups
# ---------------------------------------------------------------------------

def verify_morphism(pi: HopfMorphism) -> Report:
    src, tgt = pi.source, pi.target
    rep = Report(f"morphism {src.name} → {tgt.name}", data={"rank": rank(pi.matrix)})
    images = [pi(src.basis(i)) for i in range(src.dim)]
    rep.add("unit preserved", pi(src.unit) == tgt.unit)
    w = None
    for i in range(src.dim):
        for j in range(src.dim):
            if pi(src.mul_basis(i, j)) != tgt.mul(images[i], images[j]):
                w = (src.labels[i], src.labels[j])
                break
        if w:
            break
    rep.add("multiplicative", w is None, w)
    w = None
    for i in range(src.dim):
        lhs = tgt.delta_of(images[i])
        rhs: dict = {}
        for a, b, c in src.comult.first(i):
            for p, x in enumerate(images[a]):
                if not x:
                    continue
                for q, y in enumerate(images[b]):
                    if y:
                        rhs[p, q] = rhs.get((p, q), ZERO) + c * x * y
        if lhs != {k: v for k, v in rhs.items() if v}:
            w = src.labels[i]
            break
    rep.add("Δ intertwined", w is None, w)
    w = None
    for i in range(src.dim):
        if tgt.eps(images[i]) != src.counit[i]:
            w = src.labels[i]
            break
    rep.add("counit preserved", w is None, w)
    return rep


def is_surjective(pi: HopfMorphism) -> bool:
    return rank(pi.matrix) == pi.target.dim


def is_compact_quantum_subgroup(H: HopfAlgebra, U: HopfAlgebra, pi: HopfMorphism) -> Report:
    """Sub-verdicts: U unital (always, recorded), U unimodular, π a morphism, π surjective."""
    rep = Report(f"compact quantum subgroup {U.name} of {H.name}")
    if pi.source.dim != H.dim or pi.target.dim != U.dim:
        rep.add("π has matching source and target", False,
                detail=f"π is {pi.matrix.shape}, expected {(U.dim, H.dim)}")
        return rep
    rep.add("U unital", True, detail="finite-dimensional Hopf algebras are unital")
    rep.add("U unimodular", is_unimodular(U))
    mrep = verify_morphism(HopfMorphism(H, U, pi.matrix))
    rep.add("π morphism", mrep.ok, [c.name for c in mrep.failures()] or None)
    rep.add("π surjective", is_surjective(pi))
    return rep
