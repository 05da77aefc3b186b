"""Standard inputs for the induced-algebra pipeline and the CLI.

Each theorem fixture is ``(name, M, H, π)`` with M a left module algebra
over the dual of ``U = π.target``.
"""

from __future__ import annotations

from .actions import ModuleAlgebra, trivial_action
from .algebra import base_field
from .catalog import (
    HOPF_NAMES,
    cyclic,
    dual_numbers,
    function_algebra,
    grading_action_tensor,
    group_algebra,
    hopf_by_name,
    parity_action_tensor,
    restriction_morphism,
    subgroup,
    sweedler4,
    sweedler_projection,
    symmetric,
    translation_action_tensor,
)
from .hopf import HopfAlgebra, HopfMorphism

THEOREM_FIXTURES = ("field-s3", "translation-s3", "graded-sweedler")


def s3_restriction() -> tuple:
    """``C(S₃) → C(ℤ/2)`` restricting to the subgroup ``{e, (1 2)}``."""
    emb = subgroup(symmetric(3), ["e", "(1 2)"])
    H = function_algebra(emb.ambient)
    U = function_algebra(emb.subgroup)
    return emb, H, U, restriction_morphism(emb, H, U)


def translation_module(U: HopfAlgebra) -> ModuleAlgebra:
    """``C(ℤ/2)`` with the translation action of ``Û``, whose basis ``δ:χ_h`` multiplies like ℤ/2."""
    Z2 = cyclic(2)
    return ModuleAlgebra(function_algebra(Z2), U.dual, translation_action_tensor(Z2), name="translation")


def graded_module(U: HopfAlgebra) -> ModuleAlgebra:
    """``k[y]/(y²)`` graded by ``Û = C(ℤ/2)``: χ_e keeps 1, χ_g keeps y."""
    return ModuleAlgebra(dual_numbers(), U.dual, grading_action_tensor(), name="graded")


def theorem_fixture(name: str) -> tuple[str, ModuleAlgebra, HopfAlgebra, HopfMorphism]:
    if name == "field-s3":
        _, H, U, pi = s3_restriction()
        return name, trivial_action(base_field(), U.dual), H, pi
    if name == "translation-s3":
        _, H, U, pi = s3_restriction()
        return name, translation_module(U), H, pi
    if name == "graded-sweedler":
        H = sweedler4()
        pi = sweedler_projection(H)
        return name, graded_module(pi.target), H, pi
    raise KeyError(name)


def theorem_fixtures() -> list:
    return [theorem_fixture(n) for n in THEOREM_FIXTURES]


def parity_module() -> ModuleAlgebra:
    """``k[y]/(y²)`` over ℂ[ℤ/2] with ``g⇀y = −y``."""
    return ModuleAlgebra(dual_numbers(), group_algebra(cyclic(2)), parity_action_tensor(), name="parity")


def _file_name(name: str) -> str:
    return name.replace(":", "_") + ".json"


def fixture_files() -> dict:
    """``{file name: JSON object}`` for the catalog and the theorem fixtures."""
    from . import io

    files = {}
    for name in HOPF_NAMES:
        files[_file_name(name)] = io.hopf_to_dict(hopf_by_name(name))
    emb, H, U, pi = s3_restriction()
    files["U-s3-sub.json"] = io.hopf_to_dict(U)
    files["pi-s3-sub.json"] = io.morphism_to_dict(pi)
    sp = sweedler_projection()
    files["U-sweedler.json"] = io.hopf_to_dict(sp.target)
    files["pi-sweedler.json"] = io.morphism_to_dict(sp)
    for name in THEOREM_FIXTURES:
        _, M, _, _ = theorem_fixture(name)
        files[f"A-{name}.json"] = io.module_algebra_to_dict(M, include_hopf=False)
    files["group-s3.json"] = io.group_to_dict(emb.ambient)
    P = parity_module()
    files["A-parity.json"] = io.module_algebra_to_dict(P)
    files["coeff-parity.json"] = {
        "format": io.GROUP_MODULE_ALGEBRA,
        "name": "k[y]/(y^2) with s⇀y = -y",
        "algebra": io.algebra_to_dict(P.algebra),
        "action": {"s": [["1", "0"], ["0", "-1"]]},
    }
    return files
