import pytest

from hopfkit.catalog import (
    CATALOG_GROUPS,
    HOPF_NAMES,
    FiniteGroup,
    cyclic,
    dihedral,
    direct_product,
    extension_by_zero,
    finite_group,
    function_algebra,
    group_algebra,
    group_inclusion,
    hopf_by_name,
    identity_morphism,
    klein4,
    restriction_morphism,
    subgroup,
    sweedler4,
    sweedler_projection,
    symmetric,
    trivial_group,
)
from hopfkit.errors import VerificationError
from hopfkit.exactlin import unit_vector
from hopfkit.hopf import (
    dual,
    dual_morphism,
    invariant_functionals,
    is_compact_quantum_subgroup,
    is_surjective,
    is_unimodular,
    verify_hopf,
    verify_morphism,
)

SMALL_GROUPS = [cyclic(2), cyclic(3), cyclic(4), klein4(), symmetric(3), dihedral(4), cyclic(8),
                direct_product(cyclic(2), cyclic(4))]


def test_group_tables_are_checked():
    with pytest.raises(VerificationError):
        FiniteGroup(["e", "a"], [[0, 1], [1, 1]])
    with pytest.raises(VerificationError):
        FiniteGroup(["a", "e"], [[1, 0], [0, 1]])


def test_named_groups():
    assert symmetric(3).order == 6 and not symmetric(3).is_abelian()
    assert dihedral(4).order == 8 and klein4().is_abelian()
    assert trivial_group().order == 1
    for spec in CATALOG_GROUPS:
        assert finite_group(spec).order in (2, 3, 4, 6)


def test_group_algebra_examples():
    CG = group_algebra(cyclic(2))
    assert CG.dim == 2 and dict(CG.delta(1)) == {(1, 1): 1}
    left, _ = invariant_functionals(CG)
    assert left[0].coords == (1, 0)
    assert is_unimodular(group_algebra(symmetric(3)))
    K = group_algebra(trivial_group())
    assert K.dim == 1 and verify_hopf(K).ok


def test_function_algebra_examples():
    G = cyclic(3)
    C = function_algebra(G)
    assert all(i == j == k for (i, j, k) in C.mult.entries)
    # Δ(χ_0) = χ_0⊗χ_0 + χ_1⊗χ_2 + χ_2⊗χ_1
    assert dict(C.delta(0)) == {(0, 0): 1, (1, 2): 1, (2, 1): 1}
    assert function_algebra(trivial_group()).dim == 1


@pytest.mark.parametrize("G", SMALL_GROUPS, ids=lambda G: G.name)
def test_group_and_function_algebras_are_dual(G):
    C, CG = function_algebra(G), group_algebra(G)
    assert dual(C).same_structure(CG)
    assert dual(CG).same_structure(C)
    assert C.is_commutative() and CG.is_cocommutative()
    assert verify_hopf(C).ok and verify_hopf(CG).ok


def test_sweedler_algebra():
    H = sweedler4()
    assert H.labels == ("1", "g", "x", "gx")
    g, x = H.basis(1), H.basis(2)
    assert H.mul(g, g) == H.one
    assert H.mul(x, x) == H.zero
    assert H.mul(x, g) == tuple(-c for c in H.mul(g, x))
    assert dict(H.delta(2)) == {(2, 0): 1, (1, 2): 1}
    assert not H.is_commutative() and not H.is_cocommutative()


@pytest.mark.parametrize("labels", [["e", "(1 2)"], ["e"], ["e", "(2 3)", "(1 2)", "(1 2 3)", "(1 3 2)", "(1 3)"],
                                    ["e", "(1 2 3)", "(1 3 2)"]])
def test_restriction_morphisms(labels):
    emb = subgroup(symmetric(3), labels)
    pi = restriction_morphism(emb)
    assert verify_morphism(pi).ok and is_surjective(pi)
    assert is_compact_quantum_subgroup(pi.source, pi.target, pi).ok
    # the dual of the inclusion ℂK → ℂG is the restriction, and extension by zero is a section
    incl = group_inclusion(emb)
    assert verify_morphism(incl).ok
    assert dual_morphism(incl).matrix == pi.matrix
    assert (pi.matrix @ extension_by_zero(emb)).is_identity()
    if len(labels) == 6:
        assert pi.matrix.is_identity()
    if len(labels) == 1:
        assert pi(unit_vector(6, 0)) == (1,)


def test_subgroup_rejects_non_subgroups():
    with pytest.raises(VerificationError):
        subgroup(symmetric(3), ["e", "(1 2)", "(2 3)"])


def test_sweedler_projection():
    sp = sweedler_projection()
    assert sp.matrix.to_rows() == [[1, 0, 0, 0], [0, 1, 0, 0]]
    assert verify_morphism(sp).ok and is_surjective(sp)
    assert is_compact_quantum_subgroup(sp.source, sp.target, sp).ok


def test_identity_morphism_of_sweedler_is_not_a_subgroup():
    H = sweedler4()
    assert not is_compact_quantum_subgroup(H, H, identity_morphism(H)).ok


def test_catalog_names_resolve():
    for name in HOPF_NAMES:
        assert hopf_by_name(name).dim >= 1
    with pytest.raises(KeyError):
        hopf_by_name("no-such-algebra")
