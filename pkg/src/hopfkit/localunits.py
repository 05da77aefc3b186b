"""Finitely supported functions on groups and the Morita context for ``Ind``.

Groups are given operationally by a :class:`GroupOracle` (elements are
hashable canonical tokens), so infinite groups such as the infinite
dihedral group or free groups are handled without enumeration.  All
computations act on finite supports.

For a finite subgroup H of G and a left ℂH-module algebra A this module
implements

* ``C_c(G,A)`` as :class:`FinSuppFunc` with the right ℂH-action
  ``(f↼h)(g) = h⁻¹⇀f(hg)`` and the left ℂG-action ``(t⇀f)(g) = f(gt)``;
* the invariants ``Ind = C_c(G,A)^{ℂH}`` and the smash product
  ``Ind#ℂG``, a ring with local units;
* the Morita context between ``Ind#ℂG`` and ``A#ℂH`` with bimodules
  ``C_c(G,A)`` and ``A⊗ℂG``, and explicit preimages proving both pairings
  surjective.
"""

from __future__ import annotations

import random
import re
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

from .actions import ModuleAlgebra
from .algebra import UnitalAlgebra
from .catalog import FiniteGroup, SubgroupEmbedding, function_algebra, restriction_morphism
from .errors import FormatError, VerificationError
from .exactlin import ZERO, Matrix, Vector, rank, unit_vector
from .morita import InducedSetup, MoritaContext, SurjectivityCertificate, theorem_context, verify_bimodule_maps, verify_compatibility
from .report import Report

DEFAULT_BOUND = 6
DEFAULT_SAMPLES = 200


# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------

class GroupOracle:
    """A group given by its operations on canonical tokens.

    ``generators`` are used to draw random words; ``elements`` is set for
    finite groups.  ``key`` orders tokens for deterministic output.
    """

    def __init__(self, name: str, identity: Hashable, mul: Callable, inv: Callable, *,
                 canon: Callable | None = None, fmt: Callable = str, parse: Callable | None = None,
                 generators: Sequence = (), elements: Sequence | None = None, key: Callable | None = None):
        self.name = name
        self.identity = identity
        self._mul = mul
        self._inv = inv
        self.canon = canon or (lambda x: x)
        self.fmt = fmt
        self._parse = parse
        self.generators = tuple(generators)
        self.elements = tuple(elements) if elements is not None else None
        self.key = key or (lambda x: x)

    @property
    def is_finite(self) -> bool:
        return self.elements is not None

    def mul(self, x, y):
        return self._mul(x, y)

    def inv(self, x):
        return self._inv(x)

    def prod(self, *xs):
        out = self.identity
        for x in xs:
            out = self._mul(out, x)
        return out

    def parse(self, text: str):
        if self._parse is None:
            raise FormatError(f"group {self.name} has no element parser")
        return self.canon(self._parse(text.strip()))

    def random_element(self, rng: random.Random, bound: int = DEFAULT_BOUND):
        if self.elements is not None:
            return rng.choice(self.elements)
        out = self.identity
        for _ in range(rng.randint(0, bound)):
            g = rng.choice(self.generators)
            out = self._mul(out, g if rng.random() < 0.5 else self._inv(g))
        return out

    def spot_check(self, seed: int = 0, samples: int = 50, bound: int = DEFAULT_BOUND) -> Report:
        """Group axioms and canonical-form idempotence on seeded random triples."""
        rng = random.Random(seed)
        rep = Report(f"group oracle {self.name}", data={"seed": seed, "samples": samples, "bound": bound})
        bad = {"associativity": None, "identity": None, "inverse": None, "canonical form idempotent": None}
        e = self.identity
        for _ in range(samples):
            x, y, z = (self.random_element(rng, bound) for _ in range(3))
            if bad["associativity"] is None and self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)):
                bad["associativity"] = tuple(map(self.fmt, (x, y, z)))
            if bad["identity"] is None and not (self.mul(e, x) == x == self.mul(x, e)):
                bad["identity"] = self.fmt(x)
            if bad["inverse"] is None and not (self.mul(x, self.inv(x)) == e == self.mul(self.inv(x), x)):
                bad["inverse"] = self.fmt(x)
            if bad["canonical form idempotent"] is None and self.canon(self.canon(x)) != self.canon(x):
                bad["canonical form idempotent"] = self.fmt(x)
        for name, w in bad.items():
            rep.add(name, w is None, w)
        return rep

    def __repr__(self) -> str:
        return f"GroupOracle({self.name})"


def finite_oracle(G: FiniteGroup) -> GroupOracle:
    """Wrap a table group; tokens are the element labels."""
    idx = {lab: i for i, lab in enumerate(G.elements)}
    els = G.elements

    def parse(text):
        if text not in idx:
            raise FormatError(f"{text!r} is not an element of {G.name}")
        return text

    return GroupOracle(
        G.name or "G", els[0],
        lambda x, y: els[G.mul(idx[x], idx[y])],
        lambda x: els[G.inv(idx[x])],
        parse=parse, generators=els, elements=els, key=lambda x: idx[x],
    )


_DIHEDRAL_FACTOR = re.compile(r"\s*(r(?:\^(-?\d+))?|s|e)\s*")


def infinite_dihedral() -> GroupOracle:
    """⟨r, s | s² = 1, srs = r⁻¹⟩ with tokens ``(n, ε)`` meaning ``r^n s^ε``."""

    def mul(x, y):
        n, a = x
        m, b = y
        return (n + (-m if a else m), a ^ b)

    def inv(x):
        n, a = x
        return (n, 1) if a else (-n, 0)

    def fmt(x):
        n, a = x
        if n == 0:
            return "s" if a else "e"
        r = "r" if n == 1 else f"r^{n}"
        return r + ("s" if a else "")

    def parse(text):
        pos, out = 0, (0, 0)
        if not text:
            raise FormatError("empty group element")
        while pos < len(text):
            m = _DIHEDRAL_FACTOR.match(text, pos)
            if not m or m.end() == pos:
                raise FormatError(f"cannot parse {text!r} at position {pos}")
            tok = m.group(1)
            if tok == "s":
                f = (0, 1)
            elif tok == "e":
                f = (0, 0)
            else:
                f = (int(m.group(2)) if m.group(2) else 1, 0)
            out = mul(out, f)
            pos = m.end()
        return out

    return GroupOracle("infinite-dihedral", (0, 0), mul, inv, fmt=fmt, parse=parse,
                       generators=((1, 0), (0, 1)))


_FREE_LETTERS = "abcdfghijklmnopqrstuvwxyz"


def free_group(k: int) -> GroupOracle:
    """Free group on ``k`` letters; tokens are reduced words of nonzero ints (``-i`` is the inverse of ``i``)."""
    if not 1 <= k <= len(_FREE_LETTERS):
        raise ValueError(f"free group rank must be between 1 and {len(_FREE_LETTERS)}")
    letters = _FREE_LETTERS[:k]

    def reduce(word):
        out = []
        for x in word:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
        return tuple(out)

    def fmt(w):
        if not w:
            return "e"
        return "".join(letters[abs(x) - 1] if x > 0 else letters[abs(x) - 1].upper() for x in w)

    def parse(text):
        if text == "e":
            return ()
        word = []
        for ch in text:
            low = ch.lower()
            if low not in letters:
                raise FormatError(f"{ch!r} is not a generator of the free group on {letters}")
            i = letters.index(low) + 1
            word.append(i if ch == low else -i)
        return reduce(word)

    return GroupOracle(f"free:{k}", (), lambda x, y: reduce(x + y), lambda x: tuple(-y for y in reversed(x)),
                       canon=reduce, fmt=fmt, parse=parse, generators=tuple((i,) for i in range(1, k + 1)),
                       key=lambda w: (len(w), w))


def group_oracle(spec: str) -> GroupOracle:
    """Registry: ``cyclic:n``, ``symmetric:n``, ``dihedral:n``, ``klein``, ``infinite-dihedral``, ``free:k``."""
    from .catalog import finite_group

    if spec == "infinite-dihedral":
        return infinite_dihedral()
    kind, _, arg = spec.partition(":")
    if kind == "free":
        return free_group(int(arg))
    try:
        return finite_oracle(finite_group(spec))
    except (KeyError, ValueError) as exc:
        raise FormatError(f"unknown group {spec!r}") from exc


# ---------------------------------------------------------------------------
# coefficients
# ---------------------------------------------------------------------------

class CoefficientAction:
    """A left ℂH-module algebra A for a finite subgroup H of an oracle group.

    ``ops[h]`` is the matrix of ``a ↦ h⇀a``.
    """

    def __init__(self, group: GroupOracle, subgroup: Sequence, algebra: UnitalAlgebra, ops: dict, name=None):
        self.group = group
        self.subgroup = tuple(group.canon(h) for h in subgroup)
        self.algebra = algebra
        self.ops = {group.canon(h): m for h, m in ops.items()}
        self.name = name or f"{algebra.name} over ⟨{', '.join(group.fmt(h) for h in self.subgroup)}⟩"
        if set(self.ops) != set(self.subgroup):
            raise VerificationError("one action matrix is needed per subgroup element")

    @property
    def order(self) -> int:
        return len(self.subgroup)

    def contains(self, h) -> bool:
        return h in self.ops

    def act(self, h, a: Sequence) -> Vector:
        if h not in self.ops:
            raise ValueError(f"{self.group.fmt(h)} is not in the subgroup")
        return self.ops[h].apply(a)

    def verify(self) -> Report:
        G, A = self.group, self.algebra
        rep = Report(f"coefficient action {self.name}", data={"|H|": self.order, "dim A": A.dim})
        hs = self.subgroup
        rep.add("identity in subgroup", G.identity in self.ops)
        closed = all(G.mul(h, k) in self.ops for h in hs for k in hs) and all(G.inv(h) in self.ops for h in hs)
        rep.add("subgroup closed", closed)
        if not closed:
            return rep
        rep.add("e acts as identity", self.ops[G.identity].is_identity())
        w = None
        for h in hs:
            for k in hs:
                if self.ops[G.mul(h, k)] != self.ops[h] @ self.ops[k]:
                    w = (G.fmt(h), G.fmt(k))
                    break
            if w:
                break
        rep.add("(hk)⇀a = h⇀(k⇀a)", w is None, w)
        w = None
        for h in hs:
            for i in range(A.dim):
                for j in range(A.dim):
                    if self.act(h, A.mul_basis(i, j)) != A.mul(self.act(h, A.basis(i)), self.act(h, A.basis(j))):
                        w = (G.fmt(h), A.labels[i], A.labels[j])
                        break
                if w:
                    break
            if w:
                break
        rep.add("h⇀(ab) = (h⇀a)(h⇀b)", w is None, w)
        rep.add("h⇀1 = 1", all(self.act(h, A.unit) == A.unit for h in hs))
        return rep


def coefficient_action_from_module(group: GroupOracle, subgroup: Sequence, M: ModuleAlgebra) -> CoefficientAction:
    """Read a ℂH-module algebra whose Hopf basis is grouplike, in the order of ``subgroup``."""
    K = M.hopf
    hs = [group.canon(h) for h in subgroup]
    if M.side != "left" or K.dim != len(hs):
        raise VerificationError("need a left action of a Hopf algebra with one basis element per subgroup element")
    pos = {h: i for i, h in enumerate(hs)}
    for i in range(K.dim):
        if dict(K.delta(i)) != {(i, i): 1}:
            raise VerificationError(f"Hopf basis element {K.labels[i]} is not grouplike")
        for j in range(K.dim):
            hk = group.mul(hs[i], hs[j])
            if hk not in pos or K.mul_basis(i, j) != unit_vector(K.dim, pos[hk]):
                raise VerificationError("Hopf basis products do not match the subgroup")
    return CoefficientAction(group, hs, M.algebra, {h: M.operators[i] for i, h in enumerate(hs)})


# ---------------------------------------------------------------------------
# finitely supported functions
# ---------------------------------------------------------------------------

class FinSuppFunc:
    """A finitely supported map ``G → A``, stored as ``{g: f(g)}`` without zeros.

    The same carrier represents sums ``Σ a_g⊗g`` in ``A⊗ℂG`` and, with
    support in H, elements ``Σ a_h#h`` of ``A#ℂH``.
    """

    __slots__ = ("group", "algebra", "values")

    def __init__(self, group: GroupOracle, algebra: UnitalAlgebra, values: dict | Iterable = ()):
        self.group = group
        self.algebra = algebra
        items = values.items() if isinstance(values, dict) else values
        out: dict = {}
        n = algebra.dim
        for g, v in items:
            g = group.canon(g)
            if len(v) != n:
                raise ValueError(f"value of length {len(v)} for an algebra of dimension {n}")
            cur = out.get(g)
            out[g] = tuple(v) if cur is None else tuple(x + y for x, y in zip(cur, v))
        self.values = {g: v for g, v in out.items() if any(v)}

    @classmethod
    def point(cls, group, algebra, g, a: Sequence) -> "FinSuppFunc":
        """``χ_g·a``."""
        return cls(group, algebra, [(g, tuple(a))])

    def like(self, values) -> "FinSuppFunc":
        return FinSuppFunc(self.group, self.algebra, values)

    @property
    def support(self) -> list:
        return sorted(self.values, key=self.group.key)

    def value(self, g) -> Vector:
        return self.values.get(self.group.canon(g), self.algebra.zero)

    def is_zero(self) -> bool:
        return not self.values

    def __add__(self, other: "FinSuppFunc") -> "FinSuppFunc":
        return self.like(list(self.values.items()) + list(other.values.items()))

    def __sub__(self, other: "FinSuppFunc") -> "FinSuppFunc":
        return self + other.scale(-1)

    def scale(self, c) -> "FinSuppFunc":
        return self.like([(g, tuple(c * x for x in v)) for g, v in self.values.items()])

    def __mul__(self, other: "FinSuppFunc") -> "FinSuppFunc":
        """Pointwise product."""
        A = self.algebra
        return self.like([(g, A.mul(v, other.values[g])) for g, v in self.values.items() if g in other.values])

    def restrict(self, points: Iterable) -> "FinSuppFunc":
        """``f·χ_S``."""
        pts = {self.group.canon(p) for p in points}
        return self.like([(g, v) for g, v in self.values.items() if g in pts])

    def __eq__(self, other) -> bool:
        return isinstance(other, FinSuppFunc) and self.values == other.values

    def __hash__(self):
        return hash(frozenset(self.values.items()))

    def __str__(self) -> str:
        if not self.values:
            return "0"
        return " + ".join(f"χ_{self.group.fmt(g)}·({self.algebra.element_str(self.values[g])})" for g in self.support)

    __repr__ = __str__


class IndElement(FinSuppFunc):
    """An H-equivariant function: ``f(hg) = h⇀f(g)`` for every h in H."""

    __slots__ = ()

    @classmethod
    def certify(cls, f: FinSuppFunc, coeff: CoefficientAction) -> "IndElement":
        w = equivariance_witness(f, coeff)
        if w is not None:
            raise VerificationError(f"not H-equivariant at (h, g) = {w}")
        return cls(f.group, f.algebra, f.values)


def equivariance_witness(f: FinSuppFunc, coeff: CoefficientAction):
    """First ``(h, g)`` with ``f(hg) ≠ h⇀f(g)``, or None.  Checking g on the
    support and its H-saturation covers every point where either side is nonzero."""
    G = f.group
    pts = saturate(coeff, f.values)
    for g in sorted(pts, key=G.key):
        for h in coeff.subgroup:
            if f.value(G.mul(h, g)) != coeff.act(h, f.value(g)):
                return (G.fmt(h), G.fmt(g))
    return None


def saturate(coeff: CoefficientAction, points: Iterable) -> set:
    """``⋃_{h∈H} h·points``; finite because H is."""
    G = coeff.group
    return {G.mul(h, g) for g in points for h in coeff.subgroup}


class CCSmash:
    """An element ``Σ_t F_t#t`` of ``Ind#ℂG``, stored as ``{t: F_t}``."""

    __slots__ = ("group", "algebra", "terms")

    def __init__(self, group: GroupOracle, algebra: UnitalAlgebra, terms: dict | Iterable = ()):
        self.group = group
        self.algebra = algebra
        items = terms.items() if isinstance(terms, dict) else terms
        out: dict = {}
        for t, F in items:
            t = group.canon(t)
            out[t] = F if t not in out else out[t] + F
        self.terms = {t: F for t, F in out.items() if not F.is_zero()}

    def __add__(self, other: "CCSmash") -> "CCSmash":
        return CCSmash(self.group, self.algebra, list(self.terms.items()) + list(other.terms.items()))

    def scale(self, c) -> "CCSmash":
        return CCSmash(self.group, self.algebra, [(t, F.scale(c)) for t, F in self.terms.items()])

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, CCSmash) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        ts = sorted(self.terms, key=self.group.key)
        return " + ".join(f"[{self.terms[t]}]#{self.group.fmt(t)}" for t in ts)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# actions, invariants, local units, products
# ---------------------------------------------------------------------------

def cc_right_action(coeff: CoefficientAction, f: FinSuppFunc, h) -> FinSuppFunc:
    """``(f↼h)(g) = h⁻¹⇀f(hg)``; the support moves by ``s ↦ h⁻¹s``."""
    G = coeff.group
    h = G.canon(h)
    if not coeff.contains(h):
        raise ValueError(f"{G.fmt(h)} is not in the subgroup")
    hi = G.inv(h)
    return f.like([(G.mul(hi, s), coeff.act(hi, v)) for s, v in f.values.items()])


def cc_left_action(f: FinSuppFunc, t) -> FinSuppFunc:
    """``(t⇀f)(g) = f(gt)``; the support moves by ``s ↦ st⁻¹``."""
    G = f.group
    ti = G.inv(G.canon(t))
    return f.like([(G.mul(s, ti), v) for s, v in f.values.items()])


def symmetrize(coeff: CoefficientAction, f: FinSuppFunc) -> IndElement:
    """``(1/|H|) Σ_h f↼h``, certified H-equivariant."""
    total = FinSuppFunc(f.group, f.algebra)
    for h in coeff.subgroup:
        total = total + cc_right_action(coeff, f, h)
    return IndElement.certify(total.scale(Fraction(1, coeff.order)), coeff)


def _indicator(coeff: CoefficientAction, points: Iterable) -> FinSuppFunc:
    G, A = coeff.group, coeff.algebra
    return FinSuppFunc(G, A, [(g, A.unit) for g in points])


def local_unit_for(coeff: CoefficientAction, elements: Iterable) -> CCSmash:
    """An idempotent ``u#e`` of ``Ind#ℂG`` acting as identity on ``elements``.

    ``elements`` may mix smash elements (two-sided identity), functions of
    ``C_c(G,A)`` (left action) and sums in ``A⊗ℂG`` (right action).  ``u``
    is the indicator of the H-saturation of every point that must be
    fixed; it is invariant because ``h⇀1 = 1``.  An empty request yields
    the indicator of the saturation of the identity.
    """
    G = coeff.group
    pts: set = set()
    for x in elements:
        if isinstance(x, CCSmash):
            for t, F in x.terms.items():
                pts.update(F.values)
                pts.update(G.mul(s, t) for s in F.values)
        elif isinstance(x, FinSuppFunc):
            pts.update(x.values)
        else:
            raise TypeError(f"cannot build a local unit for {type(x).__name__}")
    if not pts:
        pts = {G.identity}
    u = _indicator(coeff, saturate(coeff, pts))
    return CCSmash(G, coeff.algebra, [(G.identity, IndElement.certify(u, coeff))])


def smash_ccg_product(x: CCSmash, y: CCSmash) -> CCSmash:
    """``(F#t)(F′#t′) = F·(t⇀F′) # tt′``."""
    G = x.group
    out = []
    for t, F in x.terms.items():
        for t2, F2 in y.terms.items():
            out.append((G.mul(t, t2), F * cc_left_action(F2, t)))
    return CCSmash(G, x.algebra, out)


def ah_product(coeff: CoefficientAction, x: FinSuppFunc, y: FinSuppFunc) -> FinSuppFunc:
    """Product in ``A#ℂH``: ``(a#h)(b#k) = a(h⇀b)#hk``."""
    G, A = coeff.group, coeff.algebra
    out = []
    for h, a in x.values.items():
        for k, b in y.values.items():
            out.append((G.mul(h, k), A.mul(a, coeff.act(h, b))))
    return x.like(out)


def ah_unit(coeff: CoefficientAction) -> FinSuppFunc:
    return FinSuppFunc.point(coeff.group, coeff.algebra, coeff.group.identity, coeff.algebra.unit)


# ---------------------------------------------------------------------------
# the bimodules and pairings
# ---------------------------------------------------------------------------

def p_act_s(coeff: CoefficientAction, f: FinSuppFunc, x: FinSuppFunc) -> FinSuppFunc:
    """``(f↼a#h)(g) = h⁻¹⇀(f(hg)a)``."""
    G, A = coeff.group, coeff.algebra
    out = []
    for h, a in x.values.items():
        hi = G.inv(h)
        for s, v in f.values.items():
            out.append((G.mul(hi, s), coeff.act(hi, A.mul(v, a))))
    return f.like(out)


def r_act_p(r: CCSmash, f: FinSuppFunc) -> FinSuppFunc:
    """``(F#t⇀f)(g) = F(g)f(gt)``."""
    total = FinSuppFunc(f.group, f.algebra)
    for t, F in r.terms.items():
        total = total + F * cc_left_action(f, t)
    return total


def s_act_q(coeff: CoefficientAction, x: FinSuppFunc, q: FinSuppFunc) -> FinSuppFunc:
    """``b#h⇀a⊗g = b(h⇀a)⊗hg``."""
    G, A = coeff.group, coeff.algebra
    out = []
    for h, b in x.values.items():
        for g, a in q.values.items():
            out.append((G.mul(h, g), A.mul(b, coeff.act(h, a))))
    return q.like(out)


def q_act_r(q: FinSuppFunc, r: CCSmash) -> FinSuppFunc:
    """``a⊗g↼F#t = aF(g)⊗gt``."""
    G, A = q.group, q.algebra
    out = []
    for t, F in r.terms.items():
        for g, a in q.values.items():
            Fg = F.values.get(g)
            if Fg is not None:
                out.append((G.mul(g, t), A.mul(a, Fg)))
    return q.like(out)


def lam(coeff: CoefficientAction, q: FinSuppFunc, f: FinSuppFunc) -> FinSuppFunc:
    """``Λ((a⊗t)⊗f) = Σ_h a(h⇀f(h⁻¹t))#h``."""
    G, A = coeff.group, coeff.algebra
    out = []
    for t, a in q.values.items():
        for h in coeff.subgroup:
            v = f.values.get(G.mul(G.inv(h), t))
            if v is not None:
                out.append((h, A.mul(a, coeff.act(h, v))))
    return FinSuppFunc(G, A, out)


def gamma_term(coeff: CoefficientAction, f: FinSuppFunc, s, a: Sequence) -> IndElement:
    """``F_{s,a}``: the invariant function with ``F(hs) = h⇀(f(s)a)``."""
    G, A = coeff.group, coeff.algebra
    fa = A.mul(f.value(s), a)
    return IndElement(G, A, [(G.mul(h, s), coeff.act(h, fa)) for h in coeff.subgroup])


def gamma(coeff: CoefficientAction, f: FinSuppFunc, q: FinSuppFunc) -> CCSmash:
    """``Γ(f⊗(a⊗t)) = Σ_{s∈supp f} F_{s,a}#s⁻¹t``."""
    G = coeff.group
    out = []
    for t, a in q.values.items():
        for s in f.values:
            out.append((G.mul(G.inv(s), t), gamma_term(coeff, f, s, a)))
    return CCSmash(G, coeff.algebra, out)


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

def _random_scalar(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-3, 3), rng.choice((1, 1, 1, 2, 3)))


def random_vector(rng: random.Random, n: int) -> Vector:
    return tuple(_random_scalar(rng) for _ in range(n))


def random_function(coeff: CoefficientAction, rng: random.Random, bound: int = DEFAULT_BOUND,
                    max_support: int = 3) -> FinSuppFunc:
    G, A = coeff.group, coeff.algebra
    return FinSuppFunc(G, A, [(G.random_element(rng, bound), random_vector(rng, A.dim))
                              for _ in range(rng.randint(1, max_support))])


def random_ind(coeff: CoefficientAction, rng: random.Random, bound: int = DEFAULT_BOUND) -> IndElement:
    return symmetrize(coeff, random_function(coeff, rng, bound, max_support=2))


def random_smash(coeff: CoefficientAction, rng: random.Random, bound: int = DEFAULT_BOUND) -> CCSmash:
    G = coeff.group
    return CCSmash(G, coeff.algebra, [(G.random_element(rng, bound), random_ind(coeff, rng, bound))
                                      for _ in range(rng.randint(1, 2))])


def random_ah(coeff: CoefficientAction, rng: random.Random) -> FinSuppFunc:
    return FinSuppFunc(coeff.group, coeff.algebra,
                       [(h, random_vector(rng, coeff.algebra.dim)) for h in coeff.subgroup if rng.random() < 0.7])


def prop32_context(coeff: CoefficientAction, bound: int = DEFAULT_BOUND) -> MoritaContext:
    """The context between ``Ind#ℂG`` (R) and ``A#ℂH`` (S) with
    ``P = C_c(G,A)`` and ``Q = A⊗ℂG``; checked by sampling."""
    return MoritaContext(
        name=f"Ind#ℂG vs A#ℂH over {coeff.group.name}",
        r_mul=smash_ccg_product,
        s_mul=lambda x, y: ah_product(coeff, x, y),
        r_act_p=r_act_p,
        p_act_s=lambda f, x: p_act_s(coeff, f, x),
        s_act_q=lambda x, q: s_act_q(coeff, x, q),
        q_act_r=q_act_r,
        gamma=lambda f, q: gamma(coeff, f, q),
        lam=lambda q, f: lam(coeff, q, f),
        sampler={
            "R": lambda rng: random_smash(coeff, rng, bound),
            "S": lambda rng: random_ah(coeff, rng),
            "P": lambda rng: random_function(coeff, rng, bound),
            "Q": lambda rng: random_function(coeff, rng, bound),
        },
    )


# ---------------------------------------------------------------------------
# surjectivity witnesses
# ---------------------------------------------------------------------------

def lam_witness(coeff: CoefficientAction, target: FinSuppFunc) -> list:
    """``a#h = Λ((a⊗h)⊗(1_A⊗χ_e))``, summed over the terms of ``target``."""
    G, A = coeff.group, coeff.algebra
    one_e = FinSuppFunc.point(G, A, G.identity, A.unit)
    return [(FinSuppFunc.point(G, A, h, a), one_e, Fraction(1)) for h, a in sorted(target.values.items(),
                                                                                  key=lambda kv: G.key(kv[0]))]


def gamma_witness(coeff: CoefficientAction, target: CCSmash) -> list:
    """``f#k = (1/|H|) Σ_{s∈supp f} Γ(fχ_s ⊗ (1_A⊗sk))`` for invariant f.

    Each orbit ``Hx`` meets the support of an invariant f in exactly
    |H| points, so the unscaled sum gives ``|H|·(f#k)``.
    """
    G, A = coeff.group, coeff.algebra
    c = Fraction(1, coeff.order)
    out = []
    for k in sorted(target.terms, key=G.key):
        f = target.terms[k]
        for s in f.support:
            out.append((f.restrict([s]), FinSuppFunc.point(G, A, G.mul(s, k), A.unit), c))
    return out


def _evaluate(pairs: list, pairing: Callable, zero):
    total = zero
    for x, y, c in pairs:
        total = total + pairing(x, y).scale(c)
    return total


def prop32_witnesses(coeff: CoefficientAction, lam_targets: Sequence[FinSuppFunc],
                     gamma_targets: Sequence[CCSmash]) -> tuple[SurjectivityCertificate, SurjectivityCertificate]:
    """Build and evaluate the explicit preimages for every requested target."""
    G, A = coeff.group, coeff.algebra

    def certify(name, targets, witness, pairing, zero):
        rows, ok = [], True
        for t in targets:
            pre = witness(coeff, t)
            if _evaluate(pre, pairing, zero) != t:
                ok = False
            rows.append((str(t), [(str(x), str(y), c) for x, y, c in pre]))
        return SurjectivityCertificate(name, rows, ok)

    lcert = certify("Λ", lam_targets, lam_witness, lambda q, f: lam(coeff, q, f), FinSuppFunc(G, A))
    gcert = certify("Γ", gamma_targets, gamma_witness, lambda f, q: gamma(coeff, f, q), CCSmash(G, A))
    return gcert, lcert


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def verify_actions(coeff: CoefficientAction, samples: int = 50, seed: int = 0, bound: int = DEFAULT_BOUND) -> Report:
    """Module laws for both actions on C_c(G,A), their commutation and symmetrize."""
    G = coeff.group
    rng = random.Random(seed)
    rep = Report("actions on C_c(G,A)", data={"samples": samples, "seed": seed, "bound": bound})
    bad: dict = {}

    def note(name, ok, w):
        if not ok and name not in bad:
            bad[name] = w

    names = ["f↼e = f", "(f↼h)↼h′ = f↼(hh′)", "e⇀f = f", "t⇀(t′⇀f) = (tt′)⇀f",
             "t⇀(f↼h) = (t⇀f)↼h", "symmetrize is equivariant and idempotent"]
    for i in range(samples):
        f = random_function(coeff, rng, bound)
        h, h2 = rng.choice(coeff.subgroup), rng.choice(coeff.subgroup)
        t, t2 = G.random_element(rng, bound), G.random_element(rng, bound)
        note(names[0], cc_right_action(coeff, f, G.identity) == f, i)
        note(names[1], cc_right_action(coeff, cc_right_action(coeff, f, h), h2)
             == cc_right_action(coeff, f, G.mul(h, h2)), i)
        note(names[2], cc_left_action(f, G.identity) == f, i)
        note(names[3], cc_left_action(cc_left_action(f, t2), t) == cc_left_action(f, G.mul(t, t2)), i)
        note(names[4], cc_left_action(cc_right_action(coeff, f, h), t)
             == cc_right_action(coeff, cc_left_action(f, t), h), i)
        try:
            p = symmetrize(coeff, f)
            note(names[5], symmetrize(coeff, p) == p, i)
        except VerificationError:
            note(names[5], False, i)
    for name in names:
        rep.add(name, name not in bad, bad.get(name))
    return rep


def verify_local_units(coeff: CoefficientAction, samples: int = 50, seed: int = 0,
                       bound: int = DEFAULT_BOUND) -> Report:
    """Local units are idempotent and fix their request sets on both sides."""
    rng = random.Random(seed)
    rep = Report("local units", data={"samples": samples, "seed": seed, "bound": bound})
    bad = {}
    names = ["u is idempotent", "ur = ru = r", "u⇀p = p", "q↼u = q", "1#e is the unit of A#ℂH"]
    one = ah_unit(coeff)
    for i in range(samples):
        r, p, q = random_smash(coeff, rng, bound), random_function(coeff, rng, bound), random_function(coeff, rng, bound)
        s = random_ah(coeff, rng)
        u = local_unit_for(coeff, [r, p, q])
        checks = [smash_ccg_product(u, u) == u,
                  smash_ccg_product(u, r) == r == smash_ccg_product(r, u),
                  r_act_p(u, p) == p,
                  q_act_r(q, u) == q,
                  ah_product(coeff, one, s) == s == ah_product(coeff, s, one)
                  and p_act_s(coeff, p, one) == p and s_act_q(coeff, one, q) == q]
        for name, ok in zip(names, checks):
            if not ok and name not in bad:
                bad[name] = i
    for name in names:
        rep.add(name, name not in bad, bad.get(name))
    return rep


def verify_prop32(coeff: CoefficientAction, samples: int = DEFAULT_SAMPLES, seed: int = 42, targets: int = 50,
                  bound: int = DEFAULT_BOUND) -> Report:
    """Sampled compatibility and bimodule checks plus evaluated witnesses."""
    rep = Report(f"Morita context Ind#ℂG ~ A#ℂH over {coeff.group.name}",
                 data={"group": coeff.group.name, "subgroup": [coeff.group.fmt(h) for h in coeff.subgroup],
                       "A": coeff.algebra.name, "samples": samples, "seed": seed, "targets": targets, "bound": bound})
    rep.extend(coeff.verify())
    if not rep.ok:
        return rep
    if not coeff.group.is_finite:
        rep.extend(coeff.group.spot_check(seed, samples=min(samples, 100), bound=bound))
    rep.extend(verify_actions(coeff, samples=min(samples, 50), seed=seed, bound=bound))
    rep.extend(verify_local_units(coeff, samples=min(samples, 50), seed=seed, bound=bound))
    ctx = prop32_context(coeff, bound)
    rep.extend(verify_compatibility(ctx, samples=samples, seed=seed))
    rep.extend(verify_bimodule_maps(ctx, samples=samples, seed=seed))
    rng = random.Random(seed + 7)
    lam_targets = [random_ah(coeff, rng) for _ in range(targets)]
    gam_targets = [random_smash(coeff, rng, bound) for _ in range(targets)]
    gcert, lcert = prop32_witnesses(coeff, lam_targets, gam_targets)
    w = Report("surjectivity witnesses")
    w.add("Λ witnesses a#h = Λ((a⊗h)⊗(1_A⊗χ_e)) evaluate to their targets", lcert.surjective,
          detail=f"{len(lam_targets)} targets")
    w.add("Γ witnesses f#k = (1/|H|)Σ_s Γ(fχ_s⊗(1_A⊗sk)) evaluate to their targets", gcert.surjective,
          detail=f"{len(gam_targets)} targets")
    w.data["certificates"] = [gcert.to_dict(), lcert.to_dict()]
    rep.extend(w)
    return rep


# ---------------------------------------------------------------------------
# finite groups: agreement with the finite-dimensional construction
# ---------------------------------------------------------------------------

class FiniteComparison:
    """Coordinates identifying the operational context for a finite G with
    the finite-dimensional context for ``H = C(G)``, ``U = C(K)``.

    ``M`` must be a left module algebra over the dual of ``C(K)``, whose
    basis ``δ:χ_k`` multiplies like the group elements ``k``.  Elements
    of ``A⊗ℂG`` are identified with Hom through ``q ↦ Λ(q, ·)``.
    """

    def __init__(self, emb: SubgroupEmbedding, M: ModuleAlgebra):
        G, K = emb.ambient, emb.subgroup
        self.emb = emb
        self.oracle = finite_oracle(G)
        self.H = function_algebra(G)
        self.U = function_algebra(K)
        pi = restriction_morphism(emb, self.H, self.U)
        self.setup = InducedSetup(M, self.H, pi)
        self.ctx = theorem_context(self.setup)
        sub = [G.elements[i] for i in emb.element_map]
        self.coeff = coefficient_action_from_module(self.oracle, sub, M)
        self.sub_index = {h: i for i, h in enumerate(sub)}
        self.A = M.algebra
        self.nG = G.order

    def p_vec(self, f: FinSuppFunc) -> Vector:
        nG = self.nG
        out = [ZERO] * (self.A.dim * nG)
        for g, v in f.values.items():
            gi = self.oracle.key(g)
            for a, x in enumerate(v):
                out[a * nG + gi] = x
        return tuple(out)

    def p_from_vec(self, v: Sequence) -> FinSuppFunc:
        nG, els = self.nG, self.oracle.elements
        vals: dict = {}
        for idx, x in enumerate(v):
            if x:
                a, g = divmod(idx, nG)
                cur = list(vals.get(els[g], self.A.zero))
                cur[a] += x
                vals[els[g]] = tuple(cur)
        return FinSuppFunc(self.oracle, self.A, vals)

    def s_vec(self, x: FinSuppFunc) -> Vector:
        nU = len(self.sub_index)
        out = [ZERO] * (self.A.dim * nU)
        for h, v in x.values.items():
            for a, c in enumerate(v):
                out[a * nU + self.sub_index[h]] = c
        return tuple(out)

    def r_vec(self, r: CCSmash) -> Vector:
        inv = self.setup.inv
        nG = self.nG
        out = [ZERO] * (inv.dim * nG)
        for t, F in r.terms.items():
            c = inv.coords(self.p_vec(F))
            if c is None:
                raise VerificationError(f"{F} is not invariant")
            ti = self.oracle.key(t)
            for i, x in enumerate(c):
                out[i * nG + ti] = x
        return tuple(out)

    def hom_matrix(self, q: FinSuppFunc) -> Matrix:
        n = self.setup.module.dim
        cols = [self.s_vec(lam(self.coeff, q, self.p_from_vec(unit_vector(n, m)))) for m in range(n)]
        return Matrix.from_columns(cols, rows=self.setup.R.dim)

    def q_vec(self, q: FinSuppFunc) -> Vector:
        N = self.setup.hom
        c = N.space.coords(N.vec(self.hom_matrix(q)))
        if c is None:
            raise VerificationError(f"Λ({q}, ·) is not A#Û-linear")
        return c


def compare_with_finite(emb: SubgroupEmbedding, M: ModuleAlgebra, samples: int = 100, seed: int = 0) -> Report:
    """Evaluate every structure map both ways on seeded elements."""
    cmp = FiniteComparison(emb, M)
    coeff, ctx = cmp.coeff, cmp.ctx
    rep = Report(f"operational vs finite-dimensional context for {emb.ambient.name}",
                 data={"samples": samples, "seed": seed})
    rep.extend(coeff.verify())
    A = cmp.A
    qs = [FinSuppFunc.point(cmp.oracle, A, g, A.basis(a)) for a in range(A.dim) for g in cmp.oracle.elements]
    qm = [cmp.q_vec(q) for q in qs]
    rep.add("q ↦ Λ(q, ·) identifies A⊗ℂG with Hom", len(qs) == ctx.dims["Q"] and rank(Matrix.from_columns(qm)) == len(qs))
    rng = random.Random(seed)
    checks = {
        "R product": lambda p, p2, q, r, r2, s, s2: cmp.r_vec(smash_ccg_product(r, r2)) == ctx.r_mul(cmp.r_vec(r), cmp.r_vec(r2)),
        "S product": lambda p, p2, q, r, r2, s, s2: cmp.s_vec(ah_product(coeff, s, s2)) == ctx.s_mul(cmp.s_vec(s), cmp.s_vec(s2)),
        "R⇀P": lambda p, p2, q, r, r2, s, s2: cmp.p_vec(r_act_p(r, p)) == ctx.r_act_p(cmp.r_vec(r), cmp.p_vec(p)),
        "P↼S": lambda p, p2, q, r, r2, s, s2: cmp.p_vec(p_act_s(coeff, p, s)) == ctx.p_act_s(cmp.p_vec(p), cmp.s_vec(s)),
        "S⇀Q": lambda p, p2, q, r, r2, s, s2: cmp.q_vec(s_act_q(coeff, s, q)) == ctx.s_act_q(cmp.s_vec(s), cmp.q_vec(q)),
        "Q↼R": lambda p, p2, q, r, r2, s, s2: cmp.q_vec(q_act_r(q, r)) == ctx.q_act_r(cmp.q_vec(q), cmp.r_vec(r)),
        "Γ": lambda p, p2, q, r, r2, s, s2: cmp.r_vec(gamma(coeff, p, q)) == ctx.gamma(cmp.p_vec(p), cmp.q_vec(q)),
        "Λ": lambda p, p2, q, r, r2, s, s2: cmp.s_vec(lam(coeff, q, p)) == ctx.lam(cmp.q_vec(q), cmp.p_vec(p)),
    }
    bad: dict = {}
    for i in range(samples):
        args = (random_function(coeff, rng), random_function(coeff, rng), random_function(coeff, rng),
                random_smash(coeff, rng), random_smash(coeff, rng), random_ah(coeff, rng), random_ah(coeff, rng))
        for name, fn in checks.items():
            if name not in bad and not fn(*args):
                bad[name] = i
    for name in checks:
        rep.add(f"{name} agrees", name not in bad, bad.get(name), detail=f"{samples} samples")
    return rep
