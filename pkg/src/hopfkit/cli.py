"""Command-line interface.

Exit codes: 0 when every check passes, 1 on a verification failure, 2 on
usage, parse or I/O errors.  Output depends only on the inputs and flags.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from . import io
from .actions import (
    coaction_round_trip,
    invariants,
    smash_product,
    tensor_action,
    verify_module_algebra,
)
from .catalog import HOPF_NAMES, hopf_by_name
from .errors import FormatError, HopfkitError
from .exactlin import format_rational
from .fixtures import fixture_files
from .hopf import (
    dual,
    double_dual_iso,
    find_isomorphism,
    invariant_functionals,
    is_compact_quantum_subgroup,
    is_unimodular,
    left_integrals,
    right_integrals,
    solve_antipode,
    solve_counit,
    verify_bialgebra,
    verify_hopf,
)
from .localunits import DEFAULT_BOUND, DEFAULT_SAMPLES, finite_oracle, group_oracle, verify_prop32
from .morita import STRATEGIES, verify_theorem_morita
from .report import Report

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

class Run:
    """Collects input digests and renders the final report."""

    def __init__(self, command: str, args):
        self.command = command
        self.args = args
        self.inputs: list = []

    def load(self, path: str) -> dict:
        d = io.load_json(path)
        self.inputs.append((path, io.digest(path)))
        return d

    def envelope(self, report: Report) -> dict:
        env = {"tool": "hopfkit", "version": __version__, "command": self.command,
               "inputs": [{"path": p, "sha256": h} for p, h in self.inputs]}
        if getattr(self.args, "seed", None) is not None:
            env["seed"] = self.args.seed
        env["ok"] = report.ok
        env["report"] = report.to_dict()
        return env

    def emit(self, report: Report, out) -> int:
        if self.args.format == "json":
            out.write(io.dumps(self.envelope(report)))
        else:
            lines = [f"hopfkit {__version__} {self.command}"]
            lines += [f"input {p} sha256={h}" for p, h in self.inputs]
            if getattr(self.args, "seed", None) is not None:
                lines.append(f"seed {self.args.seed}")
            lines.append(report.render())
            lines.append(f"verdict: {'PASS' if report.ok else 'FAIL'}")
            out.write("\n".join(lines) + "\n")
        return EXIT_OK if report.ok else EXIT_FAIL


def parse_report(text: str) -> Report:
    """Read back the report of a ``--format json`` run."""
    env = io.parse_json(text)
    if env.get("tool") != "hopfkit" or "report" not in env:
        raise FormatError("not a hopfkit report")
    return Report.from_dict(env["report"])


def _vec_str(A, v) -> str:
    return A.element_str(v)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_verify_hopf(run: Run) -> Report:
    d = run.load(run.args.file)
    B, S, _ = io.bialgebra_from_dict(d)
    rep = Report(f"Hopf algebra {B.name or run.args.file}", data={"dim": B.dim})
    brep = verify_bialgebra(B)
    rep.extend(brep)
    if not brep.ok:
        return rep
    try:
        eps = solve_counit(B)
        S_solved = solve_antipode(B, eps)
    except HopfkitError as exc:
        rep.add("counit and antipode exist", False, detail=str(exc))
        return rep
    if S is not None:
        rep.add("supplied antipode equals the solved antipode", S == S_solved)
    H = io.hopf_from_dict(d)
    rep.extend(verify_hopf(H))
    rep.data["commutative"] = H.is_commutative()
    rep.data["cocommutative"] = H.is_cocommutative()
    rep.data["unimodular"] = is_unimodular(H)
    return rep


def cmd_dual(run: Run) -> Report:
    H = io.hopf_from_dict(run.load(run.args.file))
    D = dual(H)
    rep = Report(f"dual of {H.name or run.args.file}", data={"dim": D.dim})
    rep.extend(verify_hopf(D))
    iso = double_dual_iso(H)
    rep.add("canonical map into the double dual is a bijective Hopf morphism", True)
    self_iso = find_isomorphism(H, D) if H.dim <= 4 else None
    rep.data["self-dual (small-coefficient search)"] = (
        "not searched" if H.dim > 4 else ("iso found" if self_iso else "no iso with coefficients in {-1,0,1}"))
    if run.args.out:
        Path(run.args.out).write_text(io.dumps(io.hopf_to_dict(D)), encoding="utf-8")
        rep.data["written"] = run.args.out
    if run.args.iso_out:
        Path(run.args.iso_out).write_text(io.dumps(io.morphism_to_dict(iso)), encoding="utf-8")
        rep.data["iso written"] = run.args.iso_out
    return rep


def cmd_integrals(run: Run) -> Report:
    H = io.hopf_from_dict(run.load(run.args.file))
    left, right = left_integrals(H), right_integrals(H)
    lf, rf = invariant_functionals(H)
    uni = is_unimodular(H)
    rep = Report(f"integrals of {H.name or run.args.file}", data={
        "left integrals": [_vec_str(H, v) for v in left],
        "right integrals": [_vec_str(H, v) for v in right],
        "left invariant functional": [format_rational(x) for x in lf[0].coords] if lf else None,
        "right invariant functional": [format_rational(x) for x in rf[0].coords] if rf else None,
        "unimodular": uni,
    })
    rep.add("left integral space is one-dimensional", len(left) == 1)
    rep.add("right integral space is one-dimensional", len(right) == 1)
    return rep


def _subgroup_inputs(run: Run):
    a = run.args
    H = io.hopf_from_dict(run.load(a.hopf))
    U = io.hopf_from_dict(run.load(a.subgroup))
    pi_d = run.load(a.pi)
    return H, U, pi_d


def cmd_subgroup_check(run: Run) -> Report:
    H, U, pi_d = _subgroup_inputs(run)
    try:
        pi = io.morphism_from_dict(pi_d, H, U)
    except FormatError as exc:
        rep = Report(f"compact quantum subgroup {U.name} of {H.name}")
        rep.add("π matches H and U", False, detail=str(exc))
        return rep
    return is_compact_quantum_subgroup(H, U, pi)


def cmd_verify_action(run: Run) -> Report:
    d = run.load(run.args.file)
    hopf = io.hopf_from_dict(run.load(run.args.hopf)) if run.args.hopf else None
    M = io.module_algebra_from_dict(d, hopf)
    rep = Report(f"module algebra {M.name or run.args.file}",
                 data={"algebra": M.algebra.name, "hopf": M.hopf.name, "side": M.side})
    mrep = verify_module_algebra(M)
    rep.extend(mrep)
    if mrep.ok:
        rep.extend(coaction_round_trip(M))
    return rep


def _theorem_inputs(run: Run):
    """(M, H, π) or a failed input report."""
    H, U, pi_d = _subgroup_inputs(run)
    try:
        pi = io.morphism_from_dict(pi_d, H, U)
    except FormatError as exc:
        rep = Report("stage: inputs")
        rep.add("π matches H and U", False, detail=str(exc))
        return None, rep
    M = io.module_algebra_from_dict(run.load(run.args.algebra), U.dual)
    return (M, H, pi), None


def cmd_invariants(run: Run) -> Report:
    data, bad = _theorem_inputs(run)
    if bad is not None:
        return bad
    M, H, pi = data
    rep = Report("invariants of A⊗H")
    sub = is_compact_quantum_subgroup(H, pi.target, pi)
    rep.extend(sub)
    if not sub.ok:
        return rep
    TA = tensor_action(M, H, pi)
    inv = invariants(TA)
    rep.data["dim A⊗H"] = TA.algebra.dim
    rep.data["dim invariants"] = inv.dim
    rep.data["basis"] = [TA.algebra.element_str(v) for v in inv.basis]
    rep.add("ε-condition and bimodule condition give the same subspace", inv.space.same_as(inv.bimodule_space))
    return rep


def cmd_smash(run: Run) -> Report:
    d = run.load(run.args.file)
    hopf = io.hopf_from_dict(run.load(run.args.hopf)) if run.args.hopf else None
    M = io.module_algebra_from_dict(d, hopf)
    rep = Report(f"smash product {M.algebra.name}#{M.hopf.name}")
    mrep = verify_module_algebra(M)
    rep.extend(mrep)
    if not mrep.ok:
        return rep
    R = smash_product(M)
    rep.data["dim"] = R.dim
    rep.extend(R.verify())
    if run.args.out:
        Path(run.args.out).write_text(io.dumps(io.algebra_to_dict(R)), encoding="utf-8")
        rep.data["written"] = run.args.out
    return rep


def cmd_morita(run: Run) -> Report:
    data, bad = _theorem_inputs(run)
    if bad is not None:
        rep = Report("induced Morita equivalence A#Û ~ (A⊗H)^Û#Ĥ")
        rep.extend(bad)
        return rep
    M, H, pi = data
    return verify_theorem_morita(M, H, pi, strategy=run.args.strategy, seed=run.args.seed,
                                 random_endomorphisms=run.args.samples if run.args.samples is not None else 3)


def cmd_prop32(run: Run) -> Report:
    a = run.args
    if a.group.endswith(".json"):
        G = finite_oracle(io.group_from_dict(run.load(a.group)))
    else:
        G = group_oracle(a.group)
    sub = [G.parse(x) for x in a.subgroup.split(",") if x.strip()]
    coeff = io.group_module_from_dict(run.load(a.coeff), G, sub)
    return verify_prop32(coeff, samples=a.samples if a.samples is not None else DEFAULT_SAMPLES,
                         seed=a.seed, targets=a.targets, bound=a.bound)


def cmd_catalog(run: Run):
    """Verify the catalog, or return the file for one named entry."""
    if run.args.name:
        files = fixture_files()
        fname = run.args.name if run.args.name in files else run.args.name.replace(":", "_") + ".json"
        if fname not in files:
            try:
                return io.hopf_to_dict(hopf_by_name(run.args.name))
            except KeyError as exc:
                raise FormatError(f"unknown catalog entry {run.args.name!r}") from exc
        return files[fname]
    rep = Report("catalog")
    for name in HOPF_NAMES:
        H = hopf_by_name(name)
        r = verify_hopf(H)
        rep.add(f"{name} (dim {H.dim})", r.ok)
    if run.args.out:
        out = Path(run.args.out)
        out.mkdir(parents=True, exist_ok=True)
        files = fixture_files()
        for fname in sorted(files):
            (out / fname).write_text(io.dumps(files[fname]), encoding="utf-8")
        rep.data["written"] = sorted(files)
    return rep


COMMANDS = {
    "verify-hopf": cmd_verify_hopf,
    "verify-action": cmd_verify_action,
    "dual": cmd_dual,
    "integrals": cmd_integrals,
    "subgroup-check": cmd_subgroup_check,
    "invariants": cmd_invariants,
    "smash": cmd_smash,
    "morita": cmd_morita,
    "prop32": cmd_prop32,
    "catalog": cmd_catalog,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--samples", type=int, default=None)

    p = _Parser(prog="hopfkit", description="Exact checks for finite Hopf algebras, actions and Morita contexts.")
    p.add_argument("--version", action="version", version=f"hopfkit {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("verify-hopf", parents=[common], help="bialgebra and Hopf axioms of a structure-constant file")
    s.add_argument("file")
    s = sub.add_parser("verify-action", parents=[common], help="module-algebra axioms and the coaction round trip")
    s.add_argument("file")
    s.add_argument("--hopf", help="acting Hopf algebra, when the file does not embed one")
    s = sub.add_parser("dual", parents=[common], help="dual Hopf algebra")
    s.add_argument("file")
    s.add_argument("--out", help="write the dual here")
    s.add_argument("--iso-out", help="write the canonical map into the double dual here")
    s = sub.add_parser("integrals", parents=[common], help="integrals, invariant functionals, unimodularity")
    s.add_argument("file")
    for name, helptext in (("subgroup-check", "compact quantum subgroup predicate"),
                           ("invariants", "invariant subalgebra of A⊗H"),
                           ("morita", "Morita equivalence A#Û ~ (A⊗H)^Û#Ĥ with certificates")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        if name != "subgroup-check":
            s.add_argument("--algebra", required=True, help="left module algebra over the dual of U")
        s.add_argument("--hopf", required=True)
        s.add_argument("--subgroup", required=True)
        s.add_argument("--pi", required=True)
        if name == "morita":
            s.add_argument("--strategy", choices=STRATEGIES, default="direct")
    s = sub.add_parser("smash", parents=[common], help="smash product of a left module algebra")
    s.add_argument("file")
    s.add_argument("--hopf")
    s.add_argument("--out")
    s = sub.add_parser("prop32", parents=[common], help="Morita context Ind#ℂG ~ A#ℂH over a group oracle")
    s.add_argument("--group", required=True)
    s.add_argument("--subgroup", required=True, help="comma-separated subgroup elements")
    s.add_argument("--coeff", required=True)
    s.add_argument("--targets", type=int, default=50)
    s.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    s = sub.add_parser("catalog", parents=[common],
                       help="print the file for a catalog entry, or verify the catalog and optionally write fixture files")
    s.add_argument("name", nargs="?", help="catalog name (e.g. sweedler4) or fixture file name")
    s.add_argument("--out")
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        err.write(f"hopfkit: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    if args.seed is None:
        args.seed = 42 if args.command == "prop32" else 0
    run = Run(args.command, args)
    try:
        report = COMMANDS[args.command](run)
        if isinstance(report, dict):
            out.write(io.dumps(report))
            return EXIT_OK
    except FormatError as exc:
        err.write(f"hopfkit: format error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        err.write(f"hopfkit: I/O error: {exc}\n")
        return EXIT_USAGE
    except HopfkitError as exc:
        stage = getattr(exc, "stage", None)
        report = Report(f"{args.command} failed")
        report.add(f"stage {stage}" if stage else "computation", False, detail=f"{type(exc).__name__}: {exc}")
        if getattr(exc, "report", None) is not None:
            report.extend(exc.report)
    return run.emit(report, out)


if __name__ == "__main__":
    sys.exit(main())
