"""JSON file formats for groups, algebras, Hopf algebras, morphisms and actions.

Every file is a JSON object; a ``format`` tag is written and checked when
present.  Coefficients are strings ``"p"`` or ``"p/q"`` (plain integers
are accepted).  Basis elements in tensor entries may be given by index or
by label.

* algebra: ``basis`` (labels), ``unit`` (coordinate list), ``mult``
  entries ``[i, j, k, c]`` meaning ``e_i e_j`` has ``c`` on ``e_k``;
* Hopf algebra: additionally ``comult`` entries ``[i, j, k, c]`` meaning
  ``Δ(e_i)`` has ``c`` on ``e_j⊗e_k``, optional ``counit`` (coordinate
  list), ``antipode`` and ``antipode_inverse`` (row-major matrices whose
  column i is the image of ``e_i``); missing maps are solved for;
* morphism: ``source``, ``target`` (names) and a row-major ``matrix``;
* module algebra: ``algebra`` (inline), ``hopf`` (inline, optional when
  the command supplies it), ``side`` and ``action`` entries
  ``[x, a, b, c]`` meaning ``x⇀e_a`` has ``c`` on ``e_b``;
* group: ``elements`` (identity first) and ``table`` of index rows;
* group module algebra (for the Ind context): ``algebra`` and ``action``
  mapping element names to row-major matrices; the identity may be omitted.

A Hopf file may instead be ``{"ref": NAME}`` with a catalog name such as
``sweedler4`` or ``function-algebra:symmetric:3``.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .actions import ModuleAlgebra
from .algebra import UnitalAlgebra
from .catalog import FiniteGroup, hopf_by_name
from .errors import FormatError, NoSolutionError, VerificationError
from .exactlin import ZERO, Matrix, Tensor3, format_rational, parse_rational
from .hopf import Bialgebra, HopfAlgebra, HopfMorphism, make_hopf

GROUP = "hopfkit/group"
ALGEBRA = "hopfkit/algebra"
HOPF = "hopfkit/hopf"
MORPHISM = "hopfkit/morphism"
MODULE_ALGEBRA = "hopfkit/module-algebra"
GROUP_MODULE_ALGEBRA = "hopfkit/group-module-algebra"


# ---------------------------------------------------------------------------
# files
# ---------------------------------------------------------------------------

def read_text(path: str | Path) -> str:
    return Path(path).read_text(encoding="utf-8")


def parse_json(text: str, source: str = "<input>") -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(obj, dict):
        raise FormatError(f"{source}: top level must be a JSON object")
    return obj


def load_json(path: str | Path) -> dict:
    return parse_json(read_text(path), str(path))


def digest(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _encode(obj: Any, indent: int) -> str:
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(obj, dict) and obj:
        items = [f"{inner}{json.dumps(str(k), ensure_ascii=False)}: {_encode(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list) and any(isinstance(x, (dict, list)) for x in obj):
        return "[\n" + ",\n".join(inner + _encode(x, indent + 1) for x in obj) + "\n" + pad + "]"
    return json.dumps(obj, ensure_ascii=False)


def dumps(obj: Any) -> str:
    """Canonical JSON text: two-space indent with flat lists of scalars on one line, trailing newline."""
    return _encode(obj, 0) + "\n"


def _expect(d: dict, fmt: str) -> None:
    got = d.get("format", fmt)
    if got != fmt:
        raise FormatError(f"expected format {fmt!r}, found {got!r}")


def _coeff(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise FormatError(f"coefficient {x!r} must be an integer or a string p/q")
    try:
        return parse_rational(str(x))
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad coefficient {x!r}: {exc}") from exc


def _index(labels: list, where: str) -> dict:
    if len(set(labels)) != len(labels):
        raise FormatError(f"{where}: duplicate labels")
    return {lab: i for i, lab in enumerate(labels)}


def _lookup(idx: dict, key, where: str) -> int:
    """A basis index given as an integer position or a label."""
    if isinstance(key, int) and not isinstance(key, bool):
        if 0 <= key < len(idx):
            return key
        raise FormatError(f"{where}: index {key} out of range 0..{len(idx) - 1}")
    if isinstance(key, str) and key in idx:
        return idx[key]
    raise FormatError(f"{where}: unknown basis element {key!r}")


def _vector_from(v, n: int, where: str) -> tuple:
    if not isinstance(v, list) or len(v) != n:
        raise FormatError(f"{where}: expected a coordinate list of length {n}")
    return tuple(_coeff(x) for x in v)


def _vector_to(v) -> list:
    return [format_rational(x) for x in v]


def _tensor_from(entries, idxs: list, where: str) -> Tensor3:
    if not isinstance(entries, list):
        raise FormatError(f"{where}: expected a list of entries")
    ent: dict = {}
    for e in entries:
        if not isinstance(e, list) or len(e) != 4:
            raise FormatError(f"{where}: entry {e!r} must be [i, j, k, coeff]")
        key = tuple(_lookup(idx, lab, where) for idx, lab in zip(idxs, e[:3]))
        ent[key] = ent.get(key, ZERO) + _coeff(e[3])
    return Tensor3(tuple(len(i) for i in idxs), {k: v for k, v in ent.items() if v})


def _tensor_to(T: Tensor3) -> list:
    return [[i, j, k, format_rational(x)] for (i, j, k), x in sorted(T.entries.items())]


def _matrix_from(rows, n_rows: int, n_cols: int, where: str) -> Matrix:
    """A row-major list of rows; column i is the image of basis element i."""
    if not isinstance(rows, list) or len(rows) != n_rows:
        raise FormatError(f"{where}: expected {n_rows} rows")
    ent = {}
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n_cols:
            raise FormatError(f"{where}: row {r} must have {n_cols} entries")
        for c, x in enumerate(row):
            x = _coeff(x)
            if x:
                ent[r, c] = x
    return Matrix(n_rows, n_cols, ent)


def _matrix_to(M: Matrix) -> list:
    return [[format_rational(M[r, c]) for c in range(M.cols)] for r in range(M.rows)]


# ---------------------------------------------------------------------------
# groups and algebras
# ---------------------------------------------------------------------------

def group_from_dict(d: dict) -> FiniteGroup:
    _expect(d, GROUP)
    els = d.get("elements")
    table = d.get("table")
    if not isinstance(els, list) or not all(isinstance(x, str) for x in els):
        raise FormatError("group: 'elements' must be a list of strings")
    if not isinstance(table, list) or len(table) != len(els):
        raise FormatError(f"group: 'table' must have {len(els)} rows")
    idx = _index(els, "group")
    rows = []
    for r, row in enumerate(table):
        if not isinstance(row, list) or len(row) != len(els):
            raise FormatError(f"group: table row {r} must have {len(els)} entries")
        rows.append([_lookup(idx, x, f"group table row {r}") for x in row])
    try:
        return FiniteGroup(els, rows, name=d.get("name"))
    except VerificationError as exc:
        raise FormatError(f"group: {exc}") from exc


def group_to_dict(G: FiniteGroup) -> dict:
    n = len(G.elements)
    return {"format": GROUP, "name": G.name, "elements": list(G.elements),
            "table": [[G.mul(i, j) for j in range(n)] for i in range(n)]}


def _labels(d: dict, where: str) -> list:
    labels = d.get("basis")
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise FormatError(f"{where}: 'basis' must be a list of strings")
    return labels


def algebra_from_dict(d: dict) -> UnitalAlgebra:
    _expect(d, ALGEBRA)
    labels = _labels(d, "algebra")
    idx = _index(labels, "algebra")
    mult = _tensor_from(d.get("mult", []), [idx] * 3, "algebra mult")
    unit = _vector_from(d.get("unit"), len(labels), "algebra unit")
    return UnitalAlgebra(labels, mult, unit, name=d.get("name"))


def algebra_to_dict(A: UnitalAlgebra) -> dict:
    return {"format": ALGEBRA, "name": A.name, "basis": list(A.labels),
            "unit": _vector_to(A.unit), "mult": _tensor_to(A.mult)}


def bialgebra_from_dict(d: dict) -> tuple[Bialgebra, Matrix | None, Matrix | None]:
    """The bialgebra of a Hopf file plus its supplied antipode and inverse, if any."""
    _expect(d, HOPF)
    if "ref" in d:
        try:
            H = hopf_by_name(d["ref"])
        except KeyError as exc:
            raise FormatError(f"unknown catalog Hopf algebra {d['ref']!r}") from exc
        return H, H.antipode, H.antipode_inv
    labels = _labels(d, "hopf")
    idx = _index(labels, "hopf")
    n = len(labels)
    mult = _tensor_from(d.get("mult", []), [idx] * 3, "hopf mult")
    unit = _vector_from(d.get("unit"), n, "hopf unit")
    comult = _tensor_from(d.get("comult", []), [idx] * 3, "hopf comult")
    counit = _vector_from(d["counit"], n, "hopf counit") if "counit" in d else None
    S = _matrix_from(d["antipode"], n, n, "hopf antipode") if "antipode" in d else None
    S_inv = _matrix_from(d["antipode_inverse"], n, n, "hopf antipode_inverse") if "antipode_inverse" in d else None
    return Bialgebra(labels, mult, unit, comult, counit, name=d.get("name")), S, S_inv


def hopf_from_dict(d: dict) -> HopfAlgebra:
    """Use the supplied counit and antipode, deriving whatever is missing."""
    B, S, S_inv = bialgebra_from_dict(d)
    if isinstance(B, HopfAlgebra):
        return B
    if S is None or B.counit is None:
        return make_hopf(B)
    if S_inv is None:
        S_inv = S.inverse()
        if S_inv is None:
            raise NoSolutionError(f"{B.name or 'hopf'}: supplied antipode is not invertible")
    return HopfAlgebra(B.labels, B.mult, B.unit, B.comult, B.counit, S, S_inv, name=B.name)


def hopf_to_dict(H: HopfAlgebra) -> dict:
    return {
        "format": HOPF, "name": H.name, "basis": list(H.labels),
        "unit": _vector_to(H.unit),
        "mult": _tensor_to(H.mult),
        "comult": _tensor_to(H.comult),
        "counit": _vector_to(H.counit),
        "antipode": _matrix_to(H.antipode),
        "antipode_inverse": _matrix_to(H.antipode_inv),
    }


# ---------------------------------------------------------------------------
# morphisms and actions
# ---------------------------------------------------------------------------

def morphism_from_dict(d: dict, source: HopfAlgebra, target: HopfAlgebra) -> HopfMorphism:
    _expect(d, MORPHISM)
    M = _matrix_from(d.get("matrix"), target.dim, source.dim, "morphism matrix")
    return HopfMorphism(source, target, M)


def morphism_to_dict(pi: HopfMorphism) -> dict:
    return {"format": MORPHISM, "source": pi.source.name, "target": pi.target.name,
            "matrix": _matrix_to(pi.matrix)}


def module_algebra_from_dict(d: dict, hopf: HopfAlgebra | None = None) -> ModuleAlgebra:
    """``hopf`` overrides (or replaces) the acting Hopf algebra in the file."""
    _expect(d, MODULE_ALGEBRA)
    if "algebra" not in d:
        raise FormatError("module-algebra: missing 'algebra'")
    A = algebra_from_dict(d["algebra"])
    if hopf is None:
        if not isinstance(d.get("hopf"), dict):
            raise FormatError("module-algebra: missing 'hopf' and none supplied")
        hopf = hopf_from_dict(d["hopf"])
    hidx = _index(list(hopf.labels), "acting hopf")
    aidx = _index(list(A.labels), "algebra")
    T = _tensor_from(d.get("action", []), [hidx, aidx, aidx], "action")
    side = d.get("side", "left")
    if side not in ("left", "right"):
        raise FormatError(f"side must be 'left' or 'right', not {side!r}")
    return ModuleAlgebra(A, hopf, T, side=side, name=d.get("name"))


def module_algebra_to_dict(M: ModuleAlgebra, include_hopf: bool = True) -> dict:
    d = {"format": MODULE_ALGEBRA, "name": M.name, "side": M.side, "algebra": algebra_to_dict(M.algebra)}
    d["hopf"] = hopf_to_dict(M.hopf) if include_hopf else M.hopf.name
    d["action"] = _tensor_to(M.action)
    return d


def group_module_from_dict(d: dict, group, subgroup: list):
    """A ℂH-module algebra for the Ind context: ``action`` maps element
    names to row-major matrices; the identity may be omitted."""
    from .localunits import CoefficientAction

    _expect(d, GROUP_MODULE_ALGEBRA)
    if "algebra" not in d:
        raise FormatError("group-module-algebra: missing 'algebra'")
    A = algebra_from_dict(d["algebra"])
    acts = d.get("action", {})
    if not isinstance(acts, dict):
        raise FormatError("group-module-algebra: 'action' must map element names to matrices")
    ops = {}
    for name, rows in acts.items():
        ops[group.parse(name)] = _matrix_from(rows, A.dim, A.dim, f"action of {name}")
    if group.identity not in ops:
        ops[group.identity] = Matrix.identity(A.dim)
    sub = [group.canon(h) for h in subgroup]
    missing = [group.fmt(h) for h in sub if h not in ops]
    if missing:
        raise FormatError(f"group-module-algebra: no action given for {missing}")
    extra = [group.fmt(h) for h in ops if h not in sub]
    if extra:
        raise FormatError(f"group-module-algebra: {extra} are not in the subgroup")
    return CoefficientAction(group, sub, A, ops, name=d.get("name"))


def group_module_to_dict(coeff) -> dict:
    G = coeff.group
    return {"format": GROUP_MODULE_ALGEBRA, "name": coeff.name, "algebra": algebra_to_dict(coeff.algebra),
            "action": {G.fmt(h): _matrix_to(coeff.ops[h]) for h in coeff.subgroup if h != G.identity}}
