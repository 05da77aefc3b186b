"""Concrete finite groups, quantum groups, surjections and actions.

Everything here is a fixture generator: group algebras ``ℂG``, function
algebras ``C(G)``, the four-dimensional Sweedler algebra, restriction
maps onto subgroups, and a few small module algebras used throughout the
test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Callable, Sequence

from .algebra import UnitalAlgebra, algebra_from_table
from .errors import VerificationError
from .exactlin import ONE, Matrix, Tensor3, unit_vector
from .hopf import Bialgebra, HopfAlgebra, HopfMorphism, make_hopf


class FiniteGroup:
    """Group given by a multiplication table on element indices.

    ``table[i][j]`` is the index of ``elements[i] * elements[j]``.  The
    identity must come first.  Axioms are checked on construction.
    """

    def __init__(self, elements: Sequence[str], table: Sequence[Sequence[int]], name: str | None = None):
        self.elements = tuple(str(x) for x in elements)
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.name = name
        n = len(self.elements)
        if n == 0 or len(self.table) != n or any(len(r) != n for r in self.table):
            raise VerificationError(f"group table must be {n}x{n}")
        if len(set(self.elements)) != n:
            raise VerificationError("group element labels must be distinct")
        if any(not 0 <= x < n for r in self.table for x in r):
            raise VerificationError("group table entry out of range")
        if any(self.table[0][i] != i or self.table[i][0] != i for i in range(n)):
            raise VerificationError("first element must be the identity")
        for a in range(n):
            for b in range(n):
                ab = self.table[a][b]
                for c in range(n):
                    if self.table[ab][c] != self.table[a][self.table[b][c]]:
                        raise VerificationError(
                            f"group table not associative at {(self.elements[a], self.elements[b], self.elements[c])}"
                        )
        inv = []
        for a in range(n):
            found = [b for b in range(n) if self.table[a][b] == 0]
            if len(found) != 1 or self.table[found[0]][a] != 0:
                raise VerificationError(f"{self.elements[a]} has no two-sided inverse")
            inv.append(found[0])
        self.inverses = tuple(inv)

    identity = 0

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def index(self, label: str) -> int:
        return self.elements.index(label)

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(n))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"


def group_from_operation(elements: Sequence, op: Callable, labels: Sequence[str], name=None) -> FiniteGroup:
    """Tabulate ``op`` on ``elements`` (identity first)."""
    index = {x: i for i, x in enumerate(elements)}
    table = [[index[op(a, b)] for b in elements] for a in elements]
    return FiniteGroup(labels, table, name=name)


def _power_label(base: str, k: int) -> str:
    if k == 0:
        return "e"
    return base if k == 1 else f"{base}^{k}"


def cyclic(n: int) -> FiniteGroup:
    """ℤ/n with elements e, g, g^2, ..."""
    return group_from_operation(
        list(range(n)), lambda a, b: (a + b) % n, [_power_label("g", k) for k in range(n)], name=f"Z{n}"
    )


def trivial_group() -> FiniteGroup:
    return FiniteGroup(["e"], [[0]], name="1")


def direct_product(G: FiniteGroup, K: FiniteGroup) -> FiniteGroup:
    pairs = [(a, b) for a in range(G.order) for b in range(K.order)]
    labels = []
    for a, b in pairs:
        if a == 0 and b == 0:
            labels.append("e")
        else:
            labels.append(f"({G.elements[a]},{K.elements[b]})")
    return group_from_operation(
        pairs, lambda x, y: (G.mul(x[0], y[0]), K.mul(x[1], y[1])), labels, name=f"{G.name}x{K.name}"
    )


def klein4() -> FiniteGroup:
    G = direct_product(cyclic(2), cyclic(2))
    G.name = "Z2xZ2"
    return G


def _cycle_label(perm: tuple) -> str:
    seen = set()
    cycles = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        nxt = perm[start]
        while nxt != start:
            cyc.append(nxt)
            seen.add(nxt)
            nxt = perm[nxt]
        cycles.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
    return "".join(cycles) or "e"


def symmetric(n: int) -> FiniteGroup:
    """S_n on lexicographically ordered permutations, cycle-notation labels.

    The product is composition ``(στ)(i) = σ(τ(i))``.
    """
    perms = list(permutations(range(n)))
    return group_from_operation(
        perms, lambda s, t: tuple(s[t[i]] for i in range(n)), [_cycle_label(p) for p in perms], name=f"S{n}"
    )


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n with elements r^k s^ε and srs = r⁻¹."""
    elems = [(k, e) for e in (0, 1) for k in range(n)]

    def op(x, y):
        (a, p), (b, q) = x, y
        return ((a + (b if p == 0 else -b)) % n, p ^ q)

    labels = []
    for k, e in elems:
        r = "" if k == 0 else ("r" if k == 1 else f"r^{k}")
        lab = r + ("s" if e else "")
        labels.append(lab or "e")
    return group_from_operation(elems, op, labels, name=f"D{n}")


@dataclass(frozen=True)
class SubgroupEmbedding:
    subgroup: FiniteGroup
    ambient: FiniteGroup
    element_map: tuple

    def __post_init__(self):
        m = self.element_map
        H, G = self.subgroup, self.ambient
        if len(m) != H.order or len(set(m)) != H.order:
            raise VerificationError("subgroup map must be injective")
        if m[0] != 0:
            raise VerificationError("subgroup map must send identity to identity")
        for a in range(H.order):
            for b in range(H.order):
                if G.mul(m[a], m[b]) != m[H.mul(a, b)]:
                    raise VerificationError(
                        f"subgroup map not multiplicative at {(H.elements[a], H.elements[b])}"
                    )

    @property
    def image(self) -> tuple:
        return self.element_map


def subgroup(G: FiniteGroup, labels: Sequence[str], name: str | None = None) -> SubgroupEmbedding:
    """Subgroup of ``G`` on the listed elements, labels inherited from ``G``."""
    idx = [G.index(lab) for lab in labels]
    if idx[0] != 0:
        if 0 not in idx:
            raise VerificationError("subgroup must contain the identity")
        idx.remove(0)
        idx.insert(0, 0)
    pos = {g: i for i, g in enumerate(idx)}
    table = []
    for a in idx:
        row = []
        for b in idx:
            ab = G.mul(a, b)
            if ab not in pos:
                raise VerificationError(f"{G.elements[a]}·{G.elements[b]} leaves the subset")
            row.append(pos[ab])
        table.append(row)
    if name is None:
        name = "<" + ",".join(G.elements[i] for i in idx) + ">"
    H = FiniteGroup([G.elements[i] for i in idx], table, name=name)
    return SubgroupEmbedding(H, G, tuple(idx))


# ---------------------------------------------------------------------------
# Hopf algebras
# ---------------------------------------------------------------------------

def group_algebra(G: FiniteGroup) -> HopfAlgebra:
    """ℂG: basis the group elements, Δ(g) = g⊗g."""
    n = G.order
    mult = Tensor3((n, n, n), {(a, b, G.mul(a, b)): ONE for a in range(n) for b in range(n)})
    comult = Tensor3((n, n, n), {(a, a, a): ONE for a in range(n)})
    B = Bialgebra(G.elements, mult, unit_vector(n, 0), comult, name=f"C[{G.name}]")
    return make_hopf(B)


def function_algebra(G: FiniteGroup) -> HopfAlgebra:
    """C(G): basis χ_g, pointwise product, Δ(χ_g) = Σ_l χ_l⊗χ_{l⁻¹g}."""
    n = G.order
    mult = Tensor3((n, n, n), {(a, a, a): ONE for a in range(n)})
    comult = Tensor3((n, n, n), {(G.mul(l, m), l, m): ONE for l in range(n) for m in range(n)})
    unit = (ONE,) * n
    B = Bialgebra([f"χ_{x}" for x in G.elements], mult, unit, comult, name=f"C({G.name})")
    return make_hopf(B)


SWEEDLER_LABELS = ("1", "g", "x", "gx")


def sweedler4() -> HopfAlgebra:
    """The four-dimensional Sweedler algebra: g² = 1, x² = 0, xg = −gx,
    Δ(g) = g⊗g, Δ(x) = x⊗1 + g⊗x."""
    products = {
        ("1", "1"): {"1": 1}, ("1", "g"): {"g": 1}, ("1", "x"): {"x": 1}, ("1", "gx"): {"gx": 1},
        ("g", "1"): {"g": 1}, ("g", "g"): {"1": 1}, ("g", "x"): {"gx": 1}, ("g", "gx"): {"x": 1},
        ("x", "1"): {"x": 1}, ("x", "g"): {"gx": -1},
        ("gx", "1"): {"gx": 1}, ("gx", "g"): {"x": -1},
    }
    A = algebra_from_table(SWEEDLER_LABELS, products, "1")
    i = {lab: k for k, lab in enumerate(SWEEDLER_LABELS)}
    deltas = {
        "1": [("1", "1", 1)],
        "g": [("g", "g", 1)],
        "x": [("x", "1", 1), ("g", "x", 1)],
        "gx": [("gx", "g", 1), ("1", "gx", 1)],
    }
    comult = Tensor3((4, 4, 4), {(i[a], i[b], i[c]): Fraction(v) for a, lst in deltas.items() for b, c, v in lst})
    B = Bialgebra(SWEEDLER_LABELS, A.mult, A.unit, comult, name="H4")
    return make_hopf(B)


def trivial_hopf() -> HopfAlgebra:
    """The base field as a one-dimensional Hopf algebra."""
    return group_algebra(trivial_group())


# ---------------------------------------------------------------------------
# morphisms
# ---------------------------------------------------------------------------

def restriction_morphism(emb: SubgroupEmbedding, source: HopfAlgebra | None = None,
                         target: HopfAlgebra | None = None) -> HopfMorphism:
    """π: C(G) → C(H), χ_g ↦ χ_g for g in H and 0 otherwise."""
    source = source or function_algebra(emb.ambient)
    target = target or function_algebra(emb.subgroup)
    ent = {(i, g): ONE for i, g in enumerate(emb.element_map)}
    return HopfMorphism(source, target, Matrix(target.dim, source.dim, ent))


def group_inclusion(emb: SubgroupEmbedding, source: HopfAlgebra | None = None,
                    target: HopfAlgebra | None = None) -> HopfMorphism:
    """ℂH → ℂG, the transpose of the restriction map."""
    source = source or group_algebra(emb.subgroup)
    target = target or group_algebra(emb.ambient)
    ent = {(g, i): ONE for i, g in enumerate(emb.element_map)}
    return HopfMorphism(source, target, Matrix(target.dim, source.dim, ent))


def extension_by_zero(emb: SubgroupEmbedding) -> Matrix:
    """Linear section C(H) → C(G) of the restriction map (not a Hopf map)."""
    G, H = emb.ambient, emb.subgroup
    return Matrix(G.order, H.order, {(g, i): ONE for i, g in enumerate(emb.element_map)})


def sweedler_projection(H4: HopfAlgebra | None = None, U: HopfAlgebra | None = None) -> HopfMorphism:
    """π: H₄ → ℂ[ℤ/2], 1 ↦ e, g ↦ g, x ↦ 0, gx ↦ 0."""
    H4 = H4 or sweedler4()
    U = U or group_algebra(cyclic(2))
    return HopfMorphism(H4, U, Matrix(2, 4, {(0, 0): ONE, (1, 1): ONE}))


def identity_morphism(H: HopfAlgebra) -> HopfMorphism:
    return HopfMorphism(H, H, Matrix.identity(H.dim))


def counit_morphism(H: HopfAlgebra) -> HopfMorphism:
    """H → base field given by the counit."""
    return HopfMorphism(H, trivial_hopf(), Matrix.from_rows([H.counit], H.dim))


# ---------------------------------------------------------------------------
# module algebra data (action tensors, left actions: (x, a) -> a')
# ---------------------------------------------------------------------------

def translation_action_tensor(G: FiniteGroup) -> Tensor3:
    """ℂG acting on C(G) by ``(t⇀f)(x) = f(xt)``, i.e. ``t⇀χ_a = χ_{a t⁻¹}``."""
    n = G.order
    return Tensor3((n, n, n), {(t, a, G.mul(a, G.inv(t))): ONE for t in range(n) for a in range(n)})


def dual_numbers() -> UnitalAlgebra:
    """k[y]/(y²) with basis 1, y."""
    return algebra_from_table(["1", "y"], {("1", "1"): {"1": 1}, ("1", "y"): {"y": 1}, ("y", "1"): {"y": 1}},
                              "1", name="k[y]/(y^2)")


def parity_action_tensor() -> Tensor3:
    """ℂ[ℤ/2] on k[y]/(y²): e acts trivially, g⇀1 = 1, g⇀y = −y."""
    return Tensor3((2, 2, 2), {(0, 0, 0): ONE, (0, 1, 1): ONE, (1, 0, 0): ONE, (1, 1, 1): -ONE})


def grading_action_tensor() -> Tensor3:
    """C(ℤ/2) on k[y]/(y²) by degree projections: χ_e keeps 1, χ_g keeps y."""
    return Tensor3((2, 2, 2), {(0, 0, 0): ONE, (1, 1, 1): ONE})


def trivial_action_tensor(H: HopfAlgebra, A: UnitalAlgebra) -> Tensor3:
    """x⇀a = ε(x)a."""
    return Tensor3((H.dim, A.dim, A.dim), {(x, a, a): H.counit[x] for x in range(H.dim) for a in range(A.dim)
                                           if H.counit[x]})


def swap_algebra() -> UnitalAlgebra:
    """The split algebra k² with idempotent basis p, q."""
    return UnitalAlgebra(["p", "q"], Tensor3((2, 2, 2), {(0, 0, 0): ONE, (1, 1, 1): ONE}), (ONE, ONE), name="k^2")


def swap_action_tensor() -> Tensor3:
    """ℂ[ℤ/2] on k² with g swapping the two idempotents."""
    return Tensor3((2, 2, 2), {(0, 0, 0): ONE, (0, 1, 1): ONE, (1, 0, 1): ONE, (1, 1, 0): ONE})


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

def _parse_group(spec: str) -> FiniteGroup:
    kind, _, arg = spec.partition(":")
    if kind == "cyclic":
        return cyclic(int(arg))
    if kind == "symmetric":
        return symmetric(int(arg))
    if kind == "dihedral":
        return dihedral(int(arg))
    if kind == "klein":
        return klein4()
    if kind == "trivial":
        return trivial_group()
    raise KeyError(spec)


def finite_group(spec: str) -> FiniteGroup:
    """Group by registry name: ``cyclic:n``, ``symmetric:n``, ``dihedral:n``, ``klein``, ``trivial``."""
    return _parse_group(spec)


def hopf_by_name(name: str) -> HopfAlgebra:
    """``group-algebra:<group>``, ``function-algebra:<group>``, ``sweedler4``, ``field``."""
    if name == "sweedler4":
        return sweedler4()
    if name == "field":
        return trivial_hopf()
    kind, _, grp = name.partition(":")
    if kind == "group-algebra":
        return group_algebra(_parse_group(grp))
    if kind == "function-algebra":
        return function_algebra(_parse_group(grp))
    raise KeyError(name)


HOPF_NAMES = (
    "group-algebra:cyclic:2", "group-algebra:cyclic:3", "group-algebra:cyclic:4", "group-algebra:klein",
    "group-algebra:symmetric:3", "function-algebra:cyclic:2", "function-algebra:cyclic:3",
    "function-algebra:cyclic:4", "function-algebra:klein", "function-algebra:symmetric:3", "sweedler4", "field",
)

CATALOG_GROUPS = ("cyclic:2", "cyclic:3", "cyclic:4", "klein", "symmetric:3")


def catalog_hopf_algebras() -> list[HopfAlgebra]:
    """ℂG and C(G) for the catalog groups, plus the Sweedler algebra."""
    out = []
    for spec in CATALOG_GROUPS:
        G = _parse_group(spec)
        out.append(group_algebra(G))
        out.append(function_algebra(G))
    out.append(sweedler4())
    return out
