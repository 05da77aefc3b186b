"""Module algebras, comodule algebras, smash products and invariants.

Action tensors are stored uniformly: ``action[x, a, b]`` is the coefficient
of ``e_b`` in the result of the Hopf basis element ``x`` acting on the
algebra basis element ``a``.  The ``side`` flag says whether that result
means ``x⇀a`` (left) or ``a↼x`` (right); sides are never flipped
implicitly.

Elements of ``A⊗H`` use the index ``a * dim H + h``; elements of a smash
product ``A#K`` use ``a * dim K + x``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .algebra import UnitalAlgebra, subalgebra, tensor_algebra
from .errors import DimensionError, InconsistencyError, VerificationError
from .exactlin import (
    ZERO,
    Matrix,
    Subspace,
    Tensor3,
    Vector,
    rank,
    vscale,
)
from .hopf import HopfAlgebra, HopfMorphism, is_compact_quantum_subgroup, left_invariant_functional
from .report import Report


def _check_side(side: str) -> str:
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return side


class ModuleAlgebra:
    """An algebra carrying an action of a Hopf algebra on one side."""

    def __init__(self, algebra: UnitalAlgebra, hopf: HopfAlgebra, action: Tensor3, side: str = "left", name=None):
        if action.dims != (hopf.dim, algebra.dim, algebra.dim):
            raise DimensionError(
                f"action tensor dims {action.dims}, expected {(hopf.dim, algebra.dim, algebra.dim)}"
            )
        self.algebra = algebra
        self.hopf = hopf
        self.action = action
        self.side = _check_side(side)
        self.name = name

    @cached_property
    def operators(self) -> tuple:
        """Matrix of the action of each Hopf basis element."""
        nA = self.algebra.dim
        ops = []
        for x in range(self.hopf.dim):
            ent = {}
            for a in range(nA):
                for b, c in self.action.pair(x, a):
                    ent[b, a] = c
            ops.append(Matrix(nA, nA, ent))
        return tuple(ops)

    def operator(self, x: Sequence) -> Matrix:
        nA = self.algebra.dim
        out = Matrix(nA, nA, {})
        for i, c in enumerate(x):
            if c:
                out = out + self.operators[i].scale(c)
        return out

    def act(self, x: Sequence, a: Sequence) -> Vector:
        """The result of ``x`` acting on ``a`` (``x⇀a`` or ``a↼x`` by side)."""
        out = [ZERO] * self.algebra.dim
        for i, c in enumerate(x):
            if not c:
                continue
            for j, v in enumerate(self.operators[i].apply(a)):
                if v:
                    out[j] += c * v
        return tuple(out)

    def act_basis(self, x: int, a: Sequence) -> Vector:
        return self.operators[x].apply(a)

    def __repr__(self) -> str:
        return f"ModuleAlgebra({self.side}, {self.hopf.name} on {self.algebra.name})"


def trivial_action(A: UnitalAlgebra, H: HopfAlgebra, side: str = "left") -> ModuleAlgebra:
    """``x⇀a = ε(x)a``."""
    ent = {(x, a, a): H.counit[x] for x in range(H.dim) for a in range(A.dim) if H.counit[x]}
    return ModuleAlgebra(A, H, Tensor3((H.dim, A.dim, A.dim), ent), side, name="trivial")


def verify_module_algebra(M: ModuleAlgebra) -> Report:
    """Unital module, module associativity, the module-algebra identity and ``x⇀1 = ε(x)1``."""
    A, K = M.algebra, M.hopf
    nA, nK = A.dim, K.dim
    left = M.side == "left"
    rep = Report(f"{M.side} module algebra {M.name or ''}".strip(), data={"dim A": nA, "dim H": nK})
    rep.extend(A.verify())
    ops = M.operators
    lab_a, lab_k = A.labels, K.labels

    w = None
    one_op = M.operator(K.unit)
    if not one_op.is_identity():
        for a in range(nA):
            if one_op.apply(A.basis(a)) != A.basis(a):
                w = lab_a[a]
                break
    rep.add("unital module: 1⇀a = a" if left else "unital module: a↼1 = a", w is None, w)

    w = None
    for x in range(nK):
        for y in range(nK):
            prod = M.operator(K.mul_basis(x, y))
            comp = ops[x] @ ops[y] if left else ops[y] @ ops[x]
            if prod != comp:
                w = (lab_k[x], lab_k[y])
                break
        if w:
            break
    rep.add("module: (xy)⇀a = x⇀(y⇀a)" if left else "module: a↼(xy) = (a↼x)↼y", w is None, w)

    w = None
    for x in range(nK):
        delta = K.delta(x)
        for a in range(nA):
            ea = A.basis(a)
            for b in range(nA):
                lhs = ops[x].apply(A.mul_basis(a, b))
                rhs = [ZERO] * nA
                for (p, q), c in delta.items():
                    prod = A.mul(ops[p].apply(ea), ops[q].apply(A.basis(b)))
                    for k, v in enumerate(prod):
                        if v:
                            rhs[k] += c * v
                if lhs != tuple(rhs):
                    w = (lab_k[x], lab_a[a], lab_a[b])
                    break
            if w:
                break
        if w:
            break
    rep.add(
        "module algebra: x⇀(aa′) = Σ(x₁⇀a)(x₂⇀a′)" if left else "module algebra: (aa′)↼x = Σ(a↼x₁)(a′↼x₂)",
        w is None,
        w,
    )

    w = None
    for x in range(nK):
        if ops[x].apply(A.unit) != vscale(K.counit[x], A.unit):
            w = lab_k[x]
            break
    rep.add("x⇀1 = ε(x)1" if left else "1↼x = ε(x)1", w is None, w)
    return rep


# ---------------------------------------------------------------------------
# coactions
# ---------------------------------------------------------------------------

class Coaction:
    """Coaction ``δ: A → A⊗K`` (right, index ``a * dim K + k``) or
    ``A → K⊗A`` (left, index ``k * dim A + a``) stored as a matrix."""

    def __init__(self, algebra: UnitalAlgebra, hopf: HopfAlgebra, delta: Matrix, side: str = "right", name=None):
        nA, nK = algebra.dim, hopf.dim
        if delta.shape != (nA * nK, nA):
            raise DimensionError(f"coaction matrix is {delta.shape}, expected {(nA * nK, nA)}")
        self.algebra = algebra
        self.hopf = hopf
        self.delta = delta
        self.side = _check_side(side)
        self.name = name

    def index(self, a: int, k: int) -> int:
        if self.side == "right":
            return a * self.hopf.dim + k
        return k * self.algebra.dim + a

    def __repr__(self) -> str:
        return f"Coaction({self.side}, {self.hopf.name} on {self.algebra.name})"


def verify_coaction(C: Coaction) -> Report:
    """Injective unital algebra map, coassociativity and the counit law."""
    A, K = C.algebra, C.hopf
    nA, nK = A.dim, K.dim
    right = C.side == "right"
    rep = Report(f"{C.side} comodule algebra {C.name or ''}".strip())
    D = C.delta
    rep.add("δ injective", rank(D) == nA)
    T = tensor_algebra(A, K) if right else tensor_algebra(K, A)
    images = [D.column(a) for a in range(nA)]
    w = None
    for a in range(nA):
        for b in range(nA):
            if D.apply(A.mul_basis(a, b)) != T.mul(images[a], images[b]):
                w = (A.labels[a], A.labels[b])
                break
        if w:
            break
    rep.add("δ multiplicative", w is None, w)
    rep.add("δ unital", D.apply(A.unit) == T.unit)

    w = None
    for a in range(nA):
        lhs: dict = {}
        rhs: dict = {}
        for a0 in range(nA):
            for k in range(nK):
                c = D[C.index(a0, k), a]
                if not c:
                    continue
                if right:
                    # (δ⊗ι)δ versus (ι⊗Δ)δ, keys (a', k1, k2)
                    for a1 in range(nA):
                        for k1 in range(nK):
                            d = D[C.index(a1, k1), a0]
                            if d:
                                lhs[a1, k1, k] = lhs.get((a1, k1, k), ZERO) + c * d
                    for k1, k2, e in K.comult.first(k):
                        rhs[a0, k1, k2] = rhs.get((a0, k1, k2), ZERO) + c * e
                else:
                    # (ι⊗δ)δ versus (Δ⊗ι)δ, keys (k1, k2, a')
                    for a1 in range(nA):
                        for k2 in range(nK):
                            d = D[C.index(a1, k2), a0]
                            if d:
                                lhs[k, k2, a1] = lhs.get((k, k2, a1), ZERO) + c * d
                    for k1, k2, e in K.comult.first(k):
                        rhs[k1, k2, a0] = rhs.get((k1, k2, a0), ZERO) + c * e
        if {k: v for k, v in lhs.items() if v} != {k: v for k, v in rhs.items() if v}:
            w = A.labels[a]
            break
    rep.add("coassociative", w is None, w)

    w = None
    for a in range(nA):
        out = [ZERO] * nA
        for a0 in range(nA):
            for k in range(nK):
                out[a0] += D[C.index(a0, k), a] * K.counit[k]
        if tuple(out) != A.basis(a):
            w = A.labels[a]
            break
    rep.add("counit law", w is None, w)
    return rep


def coaction_to_action(C: Coaction) -> ModuleAlgebra:
    """Right K-coaction → left K̂-action ``α⇀a = Σ α(a₁)a₀``; left coaction →
    right K̂-action ``a↼α = Σ α(a₋₁)a₀``.  K̂ is ``C.hopf.dual``."""
    nA, nK = C.algebra.dim, C.hopf.dim
    ent = {}
    for (row, a), c in C.delta.entries().items():
        if C.side == "right":
            b, k = divmod(row, nK)
        else:
            k, b = divmod(row, nA)
        ent[k, a, b] = c
    side = "left" if C.side == "right" else "right"
    return ModuleAlgebra(C.algebra, C.hopf.dual, Tensor3((nK, nA, nA), ent), side, name=C.name)


def action_to_coaction(M: ModuleAlgebra) -> Coaction:
    """Inverse of :func:`coaction_to_action`: a left L-action becomes a right
    L*-coaction and a right action a left coaction, with L* = ``M.hopf.dual``."""
    nA, nK = M.algebra.dim, M.hopf.dim
    side = "right" if M.side == "left" else "left"
    ent = {}
    for (k, a, b), c in M.action.entries.items():
        row = b * nK + k if side == "right" else k * nA + b
        ent[row, a] = c
    return Coaction(M.algebra, M.hopf.dual, Matrix(nA * nK, nA, ent), side, name=M.name)


def coaction_round_trip(M: ModuleAlgebra) -> Report:
    """Action → coaction → action must reproduce the tensor and the Hopf structure."""
    C = action_to_coaction(M)
    back = coaction_to_action(C)
    rep = Report(f"action/coaction round trip {M.name or ''}".strip())
    rep.add("coaction verifies", verify_coaction(C).ok)
    rep.add("action tensor identical", back.action == M.action)
    rep.add("acting Hopf algebra identical", back.hopf.same_structure(M.hopf))
    rep.add("side preserved", back.side == M.side)
    C2 = action_to_coaction(back)
    rep.add("coaction matrix identical", C2.delta == C.delta)
    return rep


def regular_coaction(H: HopfAlgebra) -> Coaction:
    """H as a right H-comodule algebra over itself through Δ."""
    n = H.dim
    ent = {(j * n + k, i): c for (i, j, k), c in H.comult.entries.items()}
    return Coaction(H, H, Matrix(n * n, n, ent), "right", name=f"Δ on {H.name}")


def regular_actions(H: HopfAlgebra) -> tuple[ModuleAlgebra, ModuleAlgebra]:
    """Left ``α⇀h = Σ h₁α(h₂)`` and right ``h↼μ = Σ μ(h₁)h₂`` actions of Ĥ on H."""
    n = H.dim
    left = {(k, i, j): c for (i, j, k), c in H.comult.entries.items()}
    right = {(j, i, k): c for (i, j, k), c in H.comult.entries.items()}
    D = H.dual
    return (
        ModuleAlgebra(H, D, Tensor3((n, n, n), left), "left", name=f"Ĥ⇀{H.name}"),
        ModuleAlgebra(H, D, Tensor3((n, n, n), right), "right", name=f"{H.name}↼Ĥ"),
    )


def regular_action_crosscheck(H: HopfAlgebra) -> Report:
    """Compare the contraction formula for the left regular action with
    ``φ^y⇀x = (ι⊗φ)((1⊗y)Δ(x))`` and the dual of the regular coaction."""
    rep = Report(f"regular Ĥ-action on {H.name}")
    left, right = regular_actions(H)
    rep.add("equals dual of Δ-coaction", coaction_to_action(regular_coaction(H)).action == left.action)
    phi = left_invariant_functional(H)
    n = H.dim
    alphas = []
    w = None
    for y in range(n):
        alpha = tuple(phi(H.mul_basis(y, z)) for z in range(n))
        alphas.append(alpha)
        for x in range(n):
            direct = [ZERO] * n
            for j, k, c in H.comult.first(x):
                direct[j] += c * phi(H.mul_basis(y, k))
            if left.act(alpha, H.basis(x)) != tuple(direct):
                w = (H.labels[y], H.labels[x])
                break
        if w:
            break
    rep.add("φ^y⇀x = (ι⊗φ)((1⊗y)Δ(x))", w is None, w)
    rep.add("functionals φ^y span Ĥ", rank(Matrix.from_rows(alphas, n)) == n)
    w = None
    for a in range(n):
        for b in range(n):
            if left.operators[a] @ right.operators[b] != right.operators[b] @ left.operators[a]:
                w = (H.dual.labels[a], H.dual.labels[b])
                break
        if w:
            break
    rep.add("left and right regular actions commute", w is None, w)
    return rep


# ---------------------------------------------------------------------------
# subgroup-induced actions
# ---------------------------------------------------------------------------

def restriction_coaction(H: HopfAlgebra, U: HopfAlgebra, pi: HopfMorphism) -> Coaction:
    """The left U-coaction ``λ_U = (π⊗ι)Δ`` on H."""
    nH, nU = H.dim, U.dim
    ent: dict = {}
    for (i, j, k), c in H.comult.entries.items():
        for u in range(nU):
            p = pi.matrix[u, j]
            if p:
                key = (u * nH + k, i)
                ent[key] = ent.get(key, ZERO) + c * p
    return Coaction(H, U, Matrix(nU * nH, nH, ent), "left", name=f"λ on {H.name}")


def subgroup_restriction_action(H: HopfAlgebra, U: HopfAlgebra, pi: HopfMorphism, check: bool = True) -> ModuleAlgebra:
    """Right Û-action ``x↼β = Σ β(π(x₁))x₂`` on H."""
    if check:
        rep = is_compact_quantum_subgroup(H, U, pi)
        if not rep.ok:
            raise VerificationError(f"{U.name} is not a compact quantum subgroup of {H.name}", rep, stage="subgroup")
    nH, nU = H.dim, U.dim
    ent: dict = {}
    for (i, j, k), c in H.comult.entries.items():
        for u in range(nU):
            p = pi.matrix[u, j]
            if p:
                ent[u, i, k] = ent.get((u, i, k), ZERO) + c * p
    ent = {k: v for k, v in ent.items() if v}
    return ModuleAlgebra(H, U.dual, Tensor3((nU, nH, nH), ent), "right", name=f"{H.name}↼Û")


def tensor_action(M: ModuleAlgebra, H: HopfAlgebra, pi: HopfMorphism, check: bool = True) -> ModuleAlgebra:
    """Right Û-action ``a⊗h↼β = Σ S̄(β₁)⇀a ⊗ h↼β₂`` on ``A⊗H``; S̄ is the inverse antipode of Û."""
    if M.side != "left":
        raise ValueError("tensor_action needs a left Û-module algebra")
    U = pi.target
    if not M.hopf.same_structure(U.dual):
        raise VerificationError(f"acting Hopf algebra {M.hopf.name} is not the dual of {U.name}", stage="input")
    R = subgroup_restriction_action(H, U, pi, check=check)
    Uhat = M.hopf
    A = M.algebra
    nA, nH, nU = A.dim, H.dim, Uhat.dim
    sbar = [Uhat.S_inv(Uhat.basis(p)) for p in range(nU)]
    sbar_ops = [M.operator(v) for v in sbar]
    ent: dict = {}
    for b in range(nU):
        for p, q, c in Uhat.comult.first(b):
            Sop = sbar_ops[p]
            Rop = R.operators[q]
            for a in range(nA):
                acol = Sop.column(a)
                for h in range(nH):
                    hcol = Rop.column(h)
                    src = a * nH + h
                    for a2, x in enumerate(acol):
                        if not x:
                            continue
                        for h2, y in enumerate(hcol):
                            if y:
                                key = (b, src, a2 * nH + h2)
                                ent[key] = ent.get(key, ZERO) + c * x * y
    ent = {k: v for k, v in ent.items() if v}
    AH = tensor_algebra(A, H)
    return ModuleAlgebra(AH, Uhat, Tensor3((nU, nA * nH, nA * nH), ent), "right", name=f"{A.name}⊗{H.name}↼Û")


def hat_action_on_tensor(A: UnitalAlgebra, H: HopfAlgebra) -> ModuleAlgebra:
    """Left Ĥ-action ``α⇀(a⊗h) = a⊗(α⇀h)`` on ``A⊗H``."""
    nA, nH = A.dim, H.dim
    ent = {}
    for (i, j, k), c in H.comult.entries.items():
        for a in range(nA):
            ent[k, a * nH + i, a * nH + j] = c
    return ModuleAlgebra(tensor_algebra(A, H), H.dual, Tensor3((nH, nA * nH, nA * nH), ent), "left",
                         name=f"Ĥ⇀{A.name}⊗{H.name}")


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------

@dataclass
class Invariants:
    """Invariant subalgebra of a module algebra with its inclusion."""

    module: ModuleAlgebra
    space: Subspace
    algebra: UnitalAlgebra
    bimodule_space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def basis(self) -> list:
        return list(self.space.basis)

    @cached_property
    def inclusion(self) -> Matrix:
        return Matrix.from_columns(self.space.basis, rows=self.space.ambient)

    def coords(self, v: Sequence) -> Vector | None:
        return self.space.coords(v)

    def element(self, coeffs: Sequence) -> Vector:
        return self.space.element(coeffs)


def _epsilon_rows(M: ModuleAlgebra) -> list:
    K = M.hopf
    n = M.algebra.dim
    rows = []
    for x in range(K.dim):
        op = M.operators[x]
        for i in range(n):
            row = dict(op.row_map(i))
            if K.counit[x]:
                row[i] = row.get(i, ZERO) - K.counit[x]
            rows.append(row)
    return rows


def _bimodule_rows(M: ModuleAlgebra) -> list:
    """Linear conditions on m for ``(my)·β = m(y·β)`` and ``(ym)·β = (y·β)m``."""
    A, K = M.algebra, M.hopf
    n = A.dim
    rows = []
    for y in range(n):
        Ry = A.right_basis_matrices[y]   # m ↦ m y
        Ly = A.left_basis_matrices[y]    # m ↦ y m
        for x in range(K.dim):
            op = M.operators[x]
            yb = op.column(y)
            lhs1 = op @ Ry
            rhs1 = A.right_matrix(yb)
            lhs2 = op @ Ly
            rhs2 = A.left_matrix(yb)
            for lhs, rhs in ((lhs1, rhs1), (lhs2, rhs2)):
                diff = lhs - rhs
                for i in range(n):
                    row = diff.row_map(i)
                    if row:
                        rows.append(row)
    return rows


def invariants(M: ModuleAlgebra, labels=None) -> Invariants:
    """``{m : β·m = ε(β)m for all β}``, cross-checked against the
    bimodule description ``(my)·β = m(y·β)``, ``(ym)·β = (y·β)m``."""
    n = M.algebra.dim
    eps_space = Subspace.kernel_of_rows(_epsilon_rows(M), n)
    bim_space = Subspace.kernel_of_rows(_bimodule_rows(M), n)
    if not eps_space.same_as(bim_space):
        raise InconsistencyError(
            f"ε-condition invariants (dim {eps_space.dim}) differ from bimodule-condition invariants "
            f"(dim {bim_space.dim})"
        )
    if labels is None:
        labels = [f"m{i}" for i in range(eps_space.dim)]
    try:
        alg = subalgebra(M.algebra, eps_space.basis, eps_space.coords, labels=labels,
                         name=f"({M.algebra.name})^inv")
    except ValueError as exc:
        raise InconsistencyError(f"invariant space is not a unital subalgebra: {exc}") from None
    return Invariants(M, eps_space, alg, bim_space)


def induced_hat_action(inv: Invariants, A: UnitalAlgebra, H: HopfAlgebra) -> ModuleAlgebra:
    """Left Ĥ-action on ``(A⊗H)^Û`` obtained by restricting ``α⇀(a⊗h) = a⊗(α⇀h)``."""
    full = hat_action_on_tensor(A, H)
    if full.algebra.dim != inv.space.ambient:
        raise DimensionError("invariants do not live in A⊗H")
    r = inv.dim
    ent = {}
    for k in range(H.dim):
        op = full.operators[k]
        for i, m in enumerate(inv.space.basis):
            c = inv.space.coords(op.apply(m))
            if c is None:
                raise InconsistencyError(
                    f"Ĥ-action does not preserve invariants: {H.dual.labels[k]}⇀{inv.algebra.labels[i]}"
                )
            for j, x in enumerate(c):
                if x:
                    ent[k, i, j] = x
    return ModuleAlgebra(inv.algebra, H.dual, Tensor3((H.dim, r, r), ent), "left", name="induced Ĥ-action")


def induced_action_formulas(inv: Invariants, A: UnitalAlgebra, H: HopfAlgebra) -> Report:
    """Evaluate ``(α⇀m)x = Σ α₁⇀(m(S(α₂)⇀x))`` and
    ``x(α⇀m) = Σ α₂⇀((S⁻¹(α₁)⇀x)m)`` on all basis triples and compare
    with the restricted action."""
    full = hat_action_on_tensor(A, H)
    T = full.algebra
    D = H.dual
    n = T.dim
    rep = Report("induced Ĥ-action formulas", data={"triples": D.dim * inv.dim * n})
    S_ops = [full.operator(D.S(D.basis(p))) for p in range(D.dim)]
    Sinv_ops = [full.operator(D.S_inv(D.basis(p))) for p in range(D.dim)]
    w1 = w2 = None
    for k in range(D.dim):
        delta = D.delta(k)
        for i, m in enumerate(inv.space.basis):
            am = full.operators[k].apply(m)
            for x in range(n):
                ex = T.basis(x)
                lhs1 = T.mul(am, ex)
                lhs2 = T.mul(ex, am)
                rhs1 = [ZERO] * n
                rhs2 = [ZERO] * n
                for (p, q), c in delta.items():
                    v1 = full.operators[p].apply(T.mul(m, S_ops[q].apply(ex)))
                    v2 = full.operators[q].apply(T.mul(Sinv_ops[p].apply(ex), m))
                    for j in range(n):
                        if v1[j]:
                            rhs1[j] += c * v1[j]
                        if v2[j]:
                            rhs2[j] += c * v2[j]
                if w1 is None and lhs1 != tuple(rhs1):
                    w1 = (D.labels[k], inv.algebra.labels[i], T.labels[x])
                if w2 is None and lhs2 != tuple(rhs2):
                    w2 = (D.labels[k], inv.algebra.labels[i], T.labels[x])
    rep.add("(α⇀m)x = Σ α₁⇀(m(S(α₂)⇀x))", w1 is None, w1)
    rep.add("x(α⇀m) = Σ α₂⇀((S⁻¹(α₁)⇀x)m)", w2 is None, w2)
    return rep


# ---------------------------------------------------------------------------
# smash products
# ---------------------------------------------------------------------------

class SmashProduct(UnitalAlgebra):
    """``A#K`` for a left K-module algebra A; basis ``a#x`` at ``a * dim K + x``."""

    def __init__(self, base: ModuleAlgebra):
        if base.side != "left":
            raise ValueError("smash products need a left module algebra")
        A, K = base.algebra, base.hopf
        nA, nK = A.dim, K.dim
        ent: dict = {}
        for x in range(nK):
            pieces = K.comult.first(x)
            for a2 in range(nA):
                for p, q, c in pieces:
                    acted = base.operators[p].column(a2)
                    for b, v in enumerate(acted):
                        if not v:
                            continue
                        for a in range(nA):
                            for d, s in A.mult.pair(a, b):
                                for y in range(nK):
                                    for z, t in K.mult.pair(q, y):
                                        key = (a * nK + x, a2 * nK + y, d * nK + z)
                                        ent[key] = ent.get(key, ZERO) + c * v * s * t
        ent = {k: v for k, v in ent.items() if v}
        unit = [ZERO] * (nA * nK)
        for a, u in enumerate(A.unit):
            for x, w in enumerate(K.unit):
                if u and w:
                    unit[a * nK + x] = u * w
        labels = [f"{la}#{lk}" for la in A.labels for lk in K.labels]
        super().__init__(labels, Tensor3((nA * nK,) * 3, ent), unit, name=f"{A.name}#{K.name}")
        self.base = base

    def element(self, a: Sequence, x: Sequence) -> Vector:
        """``a#x`` for vectors ``a`` in A and ``x`` in K."""
        nK = self.base.hopf.dim
        out = [ZERO] * self.dim
        for i, u in enumerate(a):
            if u:
                for j, v in enumerate(x):
                    if v:
                        out[i * nK + j] = u * v
        return tuple(out)

    def split(self, v: Sequence) -> dict:
        """``{(a, x): coeff}`` for the basis terms of ``v``."""
        nK = self.base.hopf.dim
        return {divmod(i, nK): c for i, c in enumerate(v) if c}


def smash_product(M: ModuleAlgebra) -> SmashProduct:
    return SmashProduct(M)


# ---------------------------------------------------------------------------
# modules, endomorphisms, homs
# ---------------------------------------------------------------------------

class FiniteModule:
    """A module over a finite-dimensional algebra given by action matrices.

    For a right module ``ops[r]`` is the matrix of ``m ↦ m·e_r``; for a
    left module it is ``m ↦ e_r·m``.
    """

    def __init__(self, ring: UnitalAlgebra, dim: int, ops: Sequence[Matrix], side: str = "right", labels=None, name=None):
        if len(ops) != ring.dim or any(op.shape != (dim, dim) for op in ops):
            raise DimensionError("module needs one dim x dim matrix per ring basis element")
        self.ring = ring
        self.dim = dim
        self.ops = tuple(ops)
        self.side = _check_side(side)
        self.labels = tuple(labels) if labels is not None else tuple(f"m{i}" for i in range(dim))
        self.name = name

    def operator(self, r: Sequence) -> Matrix:
        out = Matrix(self.dim, self.dim, {})
        for i, c in enumerate(r):
            if c:
                out = out + self.ops[i].scale(c)
        return out

    def act(self, r: Sequence, m: Sequence) -> Vector:
        """``m·r`` for a right module, ``r·m`` for a left one."""
        out = [ZERO] * self.dim
        for i, c in enumerate(r):
            if c:
                for j, v in enumerate(self.ops[i].apply(m)):
                    if v:
                        out[j] += c * v
        return tuple(out)

    def __repr__(self) -> str:
        return f"FiniteModule({self.side}, dim={self.dim}, over {self.ring.name})"


def verify_module(Mod: FiniteModule) -> Report:
    R = Mod.ring
    rep = Report(f"{Mod.side} module {Mod.name or ''}".strip(), data={"dim": Mod.dim, "ring dim": R.dim})
    rep.add("unit acts as identity", Mod.operator(R.unit).is_identity())
    w = None
    for r in range(R.dim):
        for s in range(R.dim):
            lhs = Mod.operator(R.mul_basis(r, s))
            rhs = Mod.ops[s] @ Mod.ops[r] if Mod.side == "right" else Mod.ops[r] @ Mod.ops[s]
            if lhs != rhs:
                w = (R.labels[r], R.labels[s])
                break
        if w:
            break
    rep.add("(m·r)·s = m·(rs)" if Mod.side == "right" else "r·(s·m) = (rs)·m", w is None, w)
    return rep


def regular_module(R: UnitalAlgebra, side: str = "right") -> FiniteModule:
    ops = R.right_basis_matrices if side == "right" else R.left_basis_matrices
    return FiniteModule(R, R.dim, ops, side, labels=R.labels, name=f"{R.name} over itself")


def free_module(R: UnitalAlgebra, rank_: int, side: str = "right") -> FiniteModule:
    """``R^n`` with coordinates ``copy * dim R + r``."""
    base = R.right_basis_matrices if side == "right" else R.left_basis_matrices
    n = R.dim
    ops = []
    for op in base:
        ent = {}
        for (i, j), x in op.entries().items():
            for c in range(rank_):
                ent[c * n + i, c * n + j] = x
        ops.append(Matrix(n * rank_, n * rank_, ent))
    return FiniteModule(R, n * rank_, ops, side, name=f"{R.name}^{rank_}")


def smash_module(M: ModuleAlgebra, H: HopfAlgebra, pi: HopfMorphism, check: bool = True):
    """``A⊗H`` as a right ``A#Û``-module: ``a⊗h↼b#β = Σ S̄(β₁)⇀(ab) ⊗ h↼β₂``.

    Returns ``(smash algebra, module, tensor action)``.
    """
    TA = tensor_action(M, H, pi, check=check)
    R = smash_product(M)
    A = M.algebra
    nA, nH, nU = A.dim, H.dim, M.hopf.dim
    AH = TA.algebra
    ops = []
    for b in range(nA):
        right_b = AH.right_matrix(tuple(A.basis(b)[i] * H.unit[h] for i in range(nA) for h in range(nH)))
        for beta in range(nU):
            ops.append(TA.operators[beta] @ right_b)
    return R, FiniteModule(R, nA * nH, ops, "right", labels=AH.labels, name=f"{A.name}⊗{H.name}"), TA


class EndAlgebra(UnitalAlgebra):
    """Commutant ``End_R(M)`` with composition product; elements act on M on the left."""

    def __init__(self, module: FiniteModule, space: Subspace):
        n = module.dim
        self.module = module
        self.space = space
        mats = [self._mat(v, n) for v in space.basis]
        self.matrices = mats
        ent = {}
        for i, Ti in enumerate(mats):
            for j, Tj in enumerate(mats):
                c = space.coords(self._vec(Ti @ Tj))
                if c is None:
                    raise InconsistencyError("commutant not closed under composition")
                for k, x in enumerate(c):
                    if x:
                        ent[i, j, k] = x
        unit = space.coords(self._vec(Matrix.identity(n)))
        if unit is None:
            raise InconsistencyError("identity is missing from the commutant")
        r = space.dim
        super().__init__([f"T{i}" for i in range(r)], Tensor3((r, r, r), ent), unit, name=f"End({module.name})")

    @staticmethod
    def _mat(v: Sequence, n: int) -> Matrix:
        return Matrix(n, n, {divmod(i, n): x for i, x in enumerate(v) if x})

    @staticmethod
    def _vec(T: Matrix) -> Vector:
        n = T.cols
        out = [ZERO] * (T.rows * n)
        for (i, j), x in T.entries().items():
            out[i * n + j] = x
        return tuple(out)

    def to_matrix(self, coeffs: Sequence) -> Matrix:
        return self._mat(self.space.element(coeffs), self.module.dim)

    def coords_of(self, T: Matrix) -> Vector | None:
        return self.space.coords(self._vec(T))


def commutant_rows(module: FiniteModule) -> list:
    """Rows of ``T·op_r − op_r·T = 0`` in the row-major entries of T."""
    n = module.dim
    rows = []
    for op in module.ops:
        cols_by_row = [op.row_map(l) for l in range(n)]
        col_entries = {}
        for (l, j), x in op.entries().items():
            col_entries.setdefault(j, []).append((l, x))
        for i in range(n):
            for j in range(n):
                row: dict = {}
                for l, x in col_entries.get(j, ()):
                    key = i * n + l
                    row[key] = row.get(key, ZERO) + x
                for l, x in cols_by_row[i].items():
                    key = l * n + j
                    row[key] = row.get(key, ZERO) - x
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    return rows


def endomorphism_algebra(module: FiniteModule) -> EndAlgebra:
    """``End_R(M)`` by solving the commutant system exactly."""
    space = Subspace.kernel_of_rows(commutant_rows(module), module.dim ** 2)
    return EndAlgebra(module, space)


class HomSpace:
    """``Hom_R(M, R)`` for a right R-module M, as ``dim R × dim M`` matrices.

    Left R-action ``(r⇀f)(m) = r f(m)``; right End-action ``(f↼T)(m) = f(T(m))``.
    """

    def __init__(self, module: FiniteModule):
        if module.side != "right":
            raise ValueError("HomSpace expects a right module")
        R = module.ring
        nR, nM = R.dim, module.dim
        rows = []
        for r in range(nR):
            op = module.ops[r]           # m ↦ m·e_r
            Rr = R.right_basis_matrices[r]  # x ↦ x·e_r
            # F·op − Rr·F = 0
            for p in range(nR):
                for m in range(nM):
                    row: dict = {}
                    for l in range(nM):
                        x = op[l, m]
                        if x:
                            row[p * nM + l] = row.get(p * nM + l, ZERO) + x
                    for q, x in Rr.row_map(p).items():
                        row[q * nM + m] = row.get(q * nM + m, ZERO) - x
                    row = {k: v for k, v in row.items() if v}
                    if row:
                        rows.append(row)
        self.module = module
        self.ring = R
        self.space = Subspace.kernel_of_rows(rows, nR * nM)
        self.basis = [self.to_matrix(v) for v in self.space.basis]

    @property
    def dim(self) -> int:
        return self.space.dim

    def to_matrix(self, v: Sequence) -> Matrix:
        nM = self.module.dim
        return Matrix(self.ring.dim, nM, {divmod(i, nM): x for i, x in enumerate(v) if x})

    def vec(self, F: Matrix) -> Vector:
        nM = self.module.dim
        out = [ZERO] * (self.ring.dim * nM)
        for (i, j), x in F.entries().items():
            out[i * nM + j] = x
        return tuple(out)

    def contains(self, F: Matrix) -> bool:
        return self.space.contains(self.vec(F))

    def element(self, coeffs: Sequence) -> Matrix:
        return self.to_matrix(self.space.element(coeffs))

    def left_act(self, r: Sequence, F: Matrix) -> Matrix:
        return self.ring.left_matrix(r) @ F

    def right_act(self, F: Matrix, T: Matrix) -> Matrix:
        return F @ T


def hom_module(module: FiniteModule) -> HomSpace:
    return HomSpace(module)


def verify_hom_bimodule(N: HomSpace, End: EndAlgebra | None = None) -> Report:
    """Closure of Hom under both actions and the bimodule associativity on basis elements."""
    rep = Report("Hom bimodule", data={"dim": N.dim})
    R = N.ring
    w = None
    for r in range(R.dim):
        for i, F in enumerate(N.basis):
            if not N.contains(N.left_act(R.basis(r), F)):
                w = (R.labels[r], i)
                break
        if w:
            break
    rep.add("r⇀f is R-linear", w is None, w)
    if End is not None:
        w = None
        for t, T in enumerate(End.matrices):
            for i, F in enumerate(N.basis):
                if not N.contains(N.right_act(F, T)):
                    w = (End.labels[t], i)
                    break
            if w:
                break
        rep.add("f↼T is R-linear", w is None, w)
        w = None
        for r in range(R.dim):
            for t, T in enumerate(End.matrices):
                for F in N.basis:
                    if N.right_act(N.left_act(R.basis(r), F), T) != N.left_act(R.basis(r), N.right_act(F, T)):
                        w = (R.labels[r], End.labels[t])
                        break
                if w:
                    break
            if w:
                break
        rep.add("(r⇀f)↼T = r⇀(f↼T)", w is None, w)
    return rep
