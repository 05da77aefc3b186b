"""Acceptance gate: one test per criterion, each recorded as a PASS/FAIL line."""

import io as _io
import os
import subprocess
import sys

import pytest
import sympy

from hopfkit.actions import (
    ModuleAlgebra,
    coaction_round_trip,
    invariants,
    regular_actions,
    subgroup_restriction_action,
    tensor_action,
    trivial_action,
)
from hopfkit.algebra import base_field
from hopfkit.catalog import (
    CATALOG_GROUPS,
    HOPF_NAMES,
    dual_numbers,
    finite_group,
    function_algebra,
    group_algebra,
    hopf_by_name,
    parity_action_tensor,
    sweedler4,
    swap_action_tensor,
    swap_algebra,
)
from hopfkit.cli import main
from hopfkit.exactlin import Matrix, Subspace, unit_vector
from hopfkit.fixtures import parity_module, s3_restriction, theorem_fixtures, translation_module
from hopfkit.hopf import (
    double_dual_iso,
    dual,
    is_surjective,
    is_unimodular,
    left_integrals,
    left_invariant_functional,
    right_integrals,
    verify_bialgebra,
    verify_hopf,
    verify_morphism,
)
from hopfkit.localunits import CoefficientAction, compare_with_finite, infinite_dihedral, verify_prop32
from hopfkit.morita import verify_theorem_morita


def test_criterion_1_axiom_suite(criterion):
    with criterion(1, "axiom suite on every catalog Hopf algebra", budget=10) as c:
        failed = []
        for name in HOPF_NAMES:
            H = hopf_by_name(name)
            if not (verify_bialgebra(H).ok and verify_hopf(H).ok):
                failed.append(name)
        c.detail = f"failed: {failed}"
        c.ok = not failed and len(HOPF_NAMES) >= 11


def test_criterion_2_duality(criterion):
    with criterion(2, "dual(C(G)) = ℂG entrywise; double dual iso") as c:
        bad = []
        for spec in CATALOG_GROUPS:
            G = finite_group(spec)
            D, CG = dual(function_algebra(G)), group_algebra(G)
            same = (D.mult == CG.mult and D.comult == CG.comult and D.unit == CG.unit
                    and D.counit == CG.counit and D.antipode == CG.antipode)
            if not same:
                bad.append(f"dual {spec}")
        for name in HOPF_NAMES:
            iso = double_dual_iso(hopf_by_name(name))
            if not (verify_morphism(iso).ok and is_surjective(iso)):
                bad.append(f"double dual {name}")
        c.detail = f"failed: {bad}"
        c.ok = not bad


def test_criterion_3_integrals(criterion):
    with criterion(3, "integrals, invariant functionals, H4 non-unimodular") as c:
        bad = []
        for spec in CATALOG_GROUPS:
            G = finite_group(spec)
            C = function_algebra(G)
            chi_e = unit_vector(C.dim, 0)
            if not Subspace.span(left_integrals(C), C.dim).same_as(Subspace.span([chi_e], C.dim)):
                bad.append(f"integrals C({spec})")
            CG = group_algebra(G)
            if left_invariant_functional(CG).coords != unit_vector(CG.dim, 0):
                bad.append(f"functional ℂ{spec}")
        H = sweedler4()
        left, right = left_integrals(H), right_integrals(H)
        distinct = not Subspace.span(left, 4).same_as(Subspace.span(right, 4))
        if is_unimodular(H) or len(left) != 1 or len(right) != 1 or not distinct:
            bad.append("H4")
        c.detail = f"failed: {bad}"
        c.ok = not bad


def _round_trip_fixtures():
    out = []
    for name in ("sweedler4", "function-algebra:symmetric:3", "group-algebra:klein", "group-algebra:cyclic:4"):
        out.extend(regular_actions(hopf_by_name(name)))
    emb, H, U, pi = s3_restriction()
    out.append(subgroup_restriction_action(H, U, pi))
    out.append(translation_module(U))
    out.append(parity_module())
    out.append(ModuleAlgebra(swap_algebra(), group_algebra(finite_group("cyclic:2")), swap_action_tensor()))
    out.append(tensor_action(translation_module(U), H, pi))
    return out


def test_criterion_4_action_coaction_round_trip(criterion):
    with criterion(4, "action/coaction round trip on module-algebra fixtures") as c:
        fixtures = _round_trip_fixtures()
        bad = [M.name for M in fixtures if not coaction_round_trip(M).ok]
        c.detail = f"failed: {bad}"
        c.ok = len(fixtures) >= 5 and not bad


def _sympy_kernel_dim(M):
    """Independent oracle: nullity of the stacked ``β - ε(β)`` operators."""
    n = M.algebra.dim
    rows = []
    for x in range(M.hopf.dim):
        op = M.operators[x]
        eps = M.hopf.counit[x]
        for i in range(n):
            rows.append([sympy.Rational(op[i, j].numerator, op[i, j].denominator) - (eps if i == j else 0)
                         for j in range(n)])
    return n - sympy.Matrix(rows).rank()


def test_criterion_5_invariant_subalgebra(criterion):
    with criterion(5, "dim C(S3)^(ℂℤ/2) = 3; ε-invariants = bimodule invariants") as c:
        emb, H, U, pi = s3_restriction()
        T = tensor_action(trivial_action(base_field(), U.dual), H, pi)
        inv = invariants(T)
        dims_ok = inv.dim == 3 == _sympy_kernel_dim(T) == emb.ambient.order // emb.subgroup.order
        modules = [T] + [tensor_action(M, Hf, p) for _, M, Hf, p in theorem_fixtures()]
        modules += [M for M in _round_trip_fixtures() if M.side == "left"]
        mismatched = []
        for M in modules:
            inv = invariants(M)
            if not inv.space.same_as(inv.bimodule_space) or inv.dim != _sympy_kernel_dim(M):
                mismatched.append(M.name)
        c.detail = f"dims_ok={dims_ok}, mismatched={mismatched}"
        c.ok = dims_ok and not mismatched


@pytest.mark.parametrize("index", range(3))
def test_criterion_6_induced_morita_end_to_end(criterion, index):
    name, M, H, pi = theorem_fixtures()[index]
    with criterion(6, f"induced Morita equivalence, fixture {name}", budget=60, part=name) as c:
        rep = verify_theorem_morita(M, H, pi, strategy="direct")
        theorem = rep.child("stage: theorem context")
        certs = theorem.data["certificates"]
        compat = theorem.children[0]
        c.detail = "; ".join(f.name for f in rep.failures())
        c.ok = (rep.ok and theorem.check("Γ surjective").ok and theorem.check("Λ surjective").ok
                and len(certs) == 2 and all(x["surjective"] for x in certs) and compat.ok
                and rep.child("stage: smash_to_end").ok and rep.child("stage: decomposition").ok)


def parity_coefficients(group):
    A = dual_numbers()
    s = group.parse("s")
    ops = {group.identity: Matrix.identity(2), s: Matrix.from_rows([[1, 0], [0, -1]])}
    return CoefficientAction(group, [group.identity, s], A, ops, name="parity")


def test_criterion_7_local_units_context(criterion):
    with criterion(7, "Ind context over the infinite dihedral group", budget=30) as c:
        rep = verify_prop32(parity_coefficients(infinite_dihedral()), samples=200, seed=42, targets=50)
        c.detail = "; ".join(f.name for f in rep.failures())
        c.ok = rep.ok


def test_criterion_8_cross_module_consistency(criterion):
    with criterion(8, "operational and finite-dimensional contexts agree for S3") as c:
        emb, H, U, pi = s3_restriction()
        parity = ModuleAlgebra(dual_numbers(), U.dual, parity_action_tensor(), name="parity")
        reps = [compare_with_finite(emb, M, samples=100, seed=0) for M in (parity, translation_module(U))]
        c.detail = "; ".join(f.name for r in reps for f in r.failures())
        c.ok = all(r.ok for r in reps)


def _cli(args, cwd):
    env = dict(os.environ)
    env.pop("PYTHONHASHSEED", None)
    proc = subprocess.run([sys.executable, "-m", "hopfkit.cli", *args], cwd=cwd, env=env,
                          capture_output=True, timeout=120)
    return proc.returncode, proc.stdout


def test_criterion_9_determinism(criterion, tmp_path):
    with criterion(9, "repeated CLI runs are byte-identical") as c:
        assert main(["catalog", "--out", str(tmp_path / "fx")], out=_io.StringIO()) == 0
        runs = [
            ["integrals", "fx/sweedler4.json", "--format", "json"],
            ["dual", "fx/function-algebra_symmetric_3.json"],
            ["invariants", "--algebra", "fx/A-translation-s3.json", "--hopf", "fx/function-algebra_symmetric_3.json",
             "--subgroup", "fx/U-s3-sub.json", "--pi", "fx/pi-s3-sub.json", "--format", "json"],
            ["morita", "--algebra", "fx/A-graded-sweedler.json", "--hopf", "fx/sweedler4.json",
             "--subgroup", "fx/U-sweedler.json", "--pi", "fx/pi-sweedler.json", "--format", "json"],
            ["prop32", "--group", "infinite-dihedral", "--subgroup", "e,s", "--coeff", "fx/coeff-parity.json",
             "--samples", "40", "--targets", "10", "--format", "json"],
        ]
        differing = []
        for args in runs:
            first, second = _cli(args, tmp_path), _cli(args, tmp_path)
            if first != second or first[0] != 0:
                differing.append(args[0])
        c.detail = f"differing or failing: {differing}"
        c.ok = not differing
