from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfkit.actions import (
    Coaction,
    ModuleAlgebra,
    action_to_coaction,
    coaction_round_trip,
    coaction_to_action,
    commutant_rows,
    endomorphism_algebra,
    free_module,
    hat_action_on_tensor,
    hom_module,
    induced_action_formulas,
    induced_hat_action,
    invariants,
    regular_action_crosscheck,
    regular_actions,
    regular_coaction,
    regular_module,
    restriction_coaction,
    smash_module,
    smash_product,
    subgroup_restriction_action,
    tensor_action,
    trivial_action,
    verify_coaction,
    verify_hom_bimodule,
    verify_module,
    verify_module_algebra,
)
from hopfkit.algebra import base_field, tensor_algebra
from hopfkit.catalog import (
    counit_morphism,
    cyclic,
    dual_numbers,
    function_algebra,
    group_algebra,
    hopf_by_name,
    restriction_morphism,
    subgroup,
    swap_action_tensor,
    swap_algebra,
    sweedler4,
    sweedler_projection,
    symmetric,
    trivial_hopf,
)
from hopfkit.exactlin import Matrix, Subspace, Tensor3, unit_vector
from hopfkit.fixtures import graded_module, parity_module, s3_restriction, translation_module

Z2 = cyclic(2)


def swap_module():
    return ModuleAlgebra(swap_algebra(), group_algebra(Z2), swap_action_tensor(), name="swap")


def broken_swap_module():
    """g⇀p = p + 2q, g⇀q = −q: an involution fixing 1 that is not multiplicative."""
    T = Tensor3((2, 2, 2), {(0, 0, 0): F(1), (0, 1, 1): F(1), (1, 0, 0): F(1), (1, 0, 1): F(2), (1, 1, 1): F(-1)})
    return ModuleAlgebra(swap_algebra(), group_algebra(Z2), T, name="broken swap")


def sympy_nullity(rows, ncols):
    M = sympy.zeros(len(rows), ncols)
    for i, row in enumerate(rows):
        for j, x in row.items():
            M[i, j] = sympy.Rational(x.numerator, x.denominator)
    return ncols - M.rank()


# module algebras -----------------------------------------------------------

@pytest.mark.parametrize("name", ["sweedler4", "function-algebra:symmetric:3", "group-algebra:cyclic:3"])
def test_trivial_action_is_module_algebra(name):
    assert verify_module_algebra(trivial_action(dual_numbers(), hopf_by_name(name))).ok


def test_swap_action():
    assert verify_module_algebra(swap_module()).ok


def test_broken_swap_fails_with_witness():
    rep = verify_module_algebra(broken_swap_module())
    check = rep.check("module algebra: x⇀(aa′) = Σ(x₁⇀a)(x₂⇀a′)")
    assert not check.ok and check.witness[0] == "g"
    assert rep.check("module: (xy)⇀a = x⇀(y⇀a)").ok


def test_non_unital_action_is_reported():
    T = Tensor3((2, 2, 2), {(1, 0, 0): F(1), (1, 1, 1): F(1)})
    rep = verify_module_algebra(ModuleAlgebra(swap_algebra(), group_algebra(Z2), T))
    assert not rep.check("unital module: 1⇀a = a").ok


# coactions -----------------------------------------------------------------

def test_coaction_round_trips():
    for M in (swap_module(), parity_module(), *regular_actions(sweedler4())):
        assert coaction_round_trip(M).ok


def test_regular_coaction_gives_regular_action():
    H = sweedler4()
    C = regular_coaction(H)
    assert verify_coaction(C).ok
    assert coaction_to_action(C).action == regular_actions(H)[0].action


def test_trivial_coaction_gives_trivial_action():
    A, K = dual_numbers(), group_algebra(Z2)
    ent = {(a * 2 + 0, a): F(1) for a in range(2)}  # δ(a) = a⊗1
    C = Coaction(A, K, Matrix(4, 2, ent), side="right")
    M = coaction_to_action(C)
    # δ_x⇀a = δ_x(1)a
    for alpha in range(2):
        assert M.operators[alpha] == Matrix.identity(2).scale(K.unit[alpha])
    assert action_to_coaction(M).delta == C.delta


def test_regular_action_examples():
    H = group_algebra(Z2)
    left, right = regular_actions(H)
    e, g = H.basis(0), H.basis(1)
    delta_g = unit_vector(2, 1)
    assert left.act(delta_g, g) == g
    assert left.act(delta_g, e) == (0, 0)
    eps_hat = H.dual.unit
    for M in (left, right):
        for h in range(2):
            assert M.act(eps_hat, H.basis(h)) == H.basis(h)


@pytest.mark.parametrize("name", ["function-algebra:cyclic:2", "sweedler4", "group-algebra:symmetric:3"])
def test_regular_actions_agree_with_integral_formula(name):
    assert regular_action_crosscheck(hopf_by_name(name)).ok


def test_regular_actions_commute():
    left, right = regular_actions(sweedler4())
    for a in left.operators:
        for b in right.operators:
            assert a @ b == b @ a


# restriction and tensor actions ----------------------------------------------

def test_restriction_action_translates():
    emb, H, U, pi = s3_restriction()
    M = subgroup_restriction_action(H, U, pi)
    G = emb.ambient
    h = emb.element_map[1]
    for g in range(G.order):
        # χ_g ↼ h = χ_{h⁻¹g}
        assert M.operators[1].column(g) == unit_vector(6, G.mul(G.inv(h), g))
    assert M.operator(U.dual.unit).is_identity()


@pytest.mark.parametrize("case", ["s3", "sweedler"])
def test_restriction_action_matches_coaction(case):
    if case == "s3":
        _, H, U, pi = s3_restriction()
    else:
        pi = sweedler_projection()
        H, U = pi.source, pi.target
    via_coaction = coaction_to_action(restriction_coaction(H, U, pi))
    direct = subgroup_restriction_action(H, U, pi)
    assert direct.action == via_coaction.action and direct.side == "right"


def test_tensor_action_with_trivial_coefficients():
    emb, H, U, pi = s3_restriction()
    T = tensor_action(trivial_action(dual_numbers(), U.dual), H, pi)
    R = subgroup_restriction_action(H, U, pi)
    nH = H.dim
    for beta in range(U.dim):
        for a in range(2):
            for h in range(nH):
                image = T.operators[beta].column(a * nH + h)
                expected = [0] * (2 * nH)
                for k, x in enumerate(R.operators[beta].column(h)):
                    expected[a * nH + k] = x
                assert image == tuple(expected)


@pytest.mark.parametrize("fixture", ["translation", "graded"])
def test_tensor_action_laws(fixture):
    if fixture == "translation":
        _, H, U, pi = s3_restriction()
        M = translation_module(U)
    else:
        pi = sweedler_projection()
        H, U = pi.source, pi.target
        M = graded_module(U)
    T = tensor_action(M, H, pi)
    assert verify_module_algebra(T).ok
    K = T.hopf
    assert T.operator(K.unit).is_identity()
    for b in range(K.dim):
        for c in range(K.dim):
            # right action: (m↼β)↼β′ = m↼(ββ′)
            assert T.operator(K.mul_basis(b, c)) == T.operators[c] @ T.operators[b]


# invariants ----------------------------------------------------------------

def coset_indicators(emb):
    """Oracle: functions on G constant on left cosets hK, as vectors."""
    G = emb.ambient
    K = [emb.element_map[i] for i in range(emb.subgroup.order)]
    seen, out = set(), []
    for g in range(G.order):
        coset = frozenset(G.mul(k, g) for k in K)
        if coset not in seen:
            seen.add(coset)
            out.append(tuple(1 if x in coset else 0 for x in range(G.order)))
    return out


def test_invariants_of_restricted_translation():
    emb, H, U, pi = s3_restriction()
    inv = invariants(subgroup_restriction_action(H, U, pi))
    expected = coset_indicators(emb)
    assert inv.dim == len(expected) == 3
    assert all(inv.space.contains(v) for v in expected)


@pytest.mark.parametrize("labels", [["e"], ["e", "(1 2)"], ["e", "(1 2 3)", "(1 3 2)"]])
def test_invariant_dimension_is_index(labels):
    emb = subgroup(symmetric(3), labels)
    H, U = function_algebra(emb.ambient), function_algebra(emb.subgroup)
    inv = invariants(subgroup_restriction_action(H, U, restriction_morphism(emb, H, U)))
    assert inv.dim == 6 // len(labels)


def test_invariants_of_trivial_action_is_everything():
    inv = invariants(trivial_action(dual_numbers(), group_algebra(Z2)))
    assert inv.dim == 2 and inv.space.same_as(inv.bimodule_space)


def test_sweedler_invariants_with_base_field():
    pi = sweedler_projection()
    H, U = pi.source, pi.target
    T = tensor_action(trivial_action(base_field(), U.dual), H, pi)
    inv = invariants(T)
    # spanned by 1 and gx
    assert inv.space.same_as(Subspace.span([H.unit, H.basis(3)], 4))


def test_invariants_kernel_matches_sympy():
    _, H, U, pi = s3_restriction()
    T = tensor_action(translation_module(U), H, pi)
    from hopfkit.actions import _epsilon_rows

    assert invariants(T).dim == sympy_nullity(_epsilon_rows(T), T.algebra.dim)


# induced action ------------------------------------------------------------

@pytest.mark.parametrize("fixture", ["field", "translation", "graded"])
def test_induced_action(fixture):
    if fixture == "graded":
        pi = sweedler_projection()
        H, U = pi.source, pi.target
        M = graded_module(U)
    else:
        _, H, U, pi = s3_restriction()
        M = trivial_action(base_field(), U.dual) if fixture == "field" else translation_module(U)
    inv = invariants(tensor_action(M, H, pi))
    hat = induced_hat_action(inv, M.algebra, H)
    assert verify_module_algebra(hat).ok
    assert hat.operator(hat.hopf.unit).is_identity()
    assert induced_action_formulas(inv, M.algebra, H).ok


def test_induced_action_is_right_translation():
    # (t⇀f)(g) = f(gt) on invariants of C(ℤ/2)⊗C(S₃)
    emb, H, U, pi = s3_restriction()
    M = translation_module(U)
    inv = invariants(tensor_action(M, H, pi))
    assert inv.dim == 6
    full = hat_action_on_tensor(M.algebra, H)
    G = emb.ambient
    for t in range(G.order):
        for v in inv.basis:
            moved = full.act(unit_vector(6, t), v)
            for a in range(2):
                for g in range(G.order):
                    assert moved[a * 6 + g] == v[a * 6 + G.mul(g, t)]


# smash products ------------------------------------------------------------

def test_smash_of_trivial_action_is_tensor_product():
    A, K = dual_numbers(), group_algebra(Z2)
    R = smash_product(trivial_action(A, K))
    assert R.mult == tensor_algebra(A, K).mult


def test_smash_with_swap_action():
    M = swap_module()
    R = smash_product(M)
    assert R.dim == 4 and R.verify().ok
    g = M.hopf.basis(1)
    one_g = R.element(M.algebra.unit, g)
    for a in range(2):
        ea = M.algebra.basis(a)
        lhs = R.mul(one_g, R.element(ea, M.hopf.unit))
        assert lhs == R.element(M.act(g, ea), g)


def test_smash_over_base_field_is_the_algebra():
    A = dual_numbers()
    R = smash_product(trivial_action(A, trivial_hopf()))
    assert R.dim == 2 and R.mult == A.mult


def test_smash_module():
    pi = sweedler_projection()
    H, U = pi.source, pi.target
    M = graded_module(U)
    R, mod, T = smash_module(M, H, pi)
    assert verify_module(mod).ok
    nA, nU = M.algebra.dim, U.dim
    AH = T.algebra
    # b#ε̂ acts as right multiplication by b⊗1
    for b in range(nA):
        op = mod.operator(R.element(M.algebra.basis(b), U.dual.unit))
        assert op == AH.right_matrix(tuple(M.algebra.basis(b)[i] * H.unit[h] for i in range(nA) for h in range(4)))
    # 1#β recovers the tensor action
    for beta in range(nU):
        assert mod.operator(R.element(M.algebra.unit, U.dual.basis(beta))) == T.operators[beta]


# endomorphisms and homs --------------------------------------------------------

def test_end_of_ring_over_itself():
    A = dual_numbers()
    E = endomorphism_algebra(regular_module(A))
    assert E.dim == A.dim and E.verify().ok


def test_end_of_free_rank_two():
    E = endomorphism_algebra(free_module(dual_numbers(), 2))
    assert E.dim == 8


def test_end_commutes_with_ring_action():
    mod = free_module(swap_algebra(), 2)
    E = endomorphism_algebra(mod)
    for T in E.matrices:
        for op in mod.ops:
            assert T @ op == op @ T


def test_end_of_sweedler_tensor_with_base_field():
    pi = sweedler_projection()
    H, U = pi.source, pi.target
    _, mod, _ = smash_module(trivial_action(base_field(), U.dual), H, pi)
    E = endomorphism_algebra(mod)
    # dim Ĥ · dim invariants = 4 · 2
    assert E.dim == 8 == sympy_nullity(commutant_rows(mod), mod.dim ** 2)


def test_end_with_trivial_subgroup_is_matrix_algebra():
    A = dual_numbers()
    for H in (sweedler4(), function_algebra(cyclic(3))):
        pi = counit_morphism(H)
        assert pi.target.dim == 1
        _, mod, _ = smash_module(trivial_action(A, pi.target.dual), H, pi)
        assert endomorphism_algebra(mod).dim == A.dim * H.dim ** 2


def test_hom_examples():
    A = dual_numbers()
    N = hom_module(regular_module(A))
    assert N.dim == A.dim
    assert verify_hom_bimodule(N, endomorphism_algebra(regular_module(A))).ok
    assert hom_module(free_module(A, 1)).dim == A.dim


def test_hom_for_tensor_module():
    pi = sweedler_projection()
    H, U = pi.source, pi.target
    _, mod, _ = smash_module(graded_module(U), H, pi)
    N = hom_module(mod)
    assert verify_hom_bimodule(N, endomorphism_algebra(mod)).ok
    assert N.dim == 8


# properties ----------------------------------------------------------------

@settings(max_examples=25, deadline=None)
@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=3), min_size=4, max_size=4),
       st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=3), min_size=2, max_size=2))
def test_smash_product_formula(x, a):
    """(1#x)(a#1) = Σ (x₁⇀a)#x₂ in the graded Sweedler smash product."""
    pi = sweedler_projection()
    U = pi.target
    M = graded_module(U)
    R = smash_product(M)
    K = M.hopf
    xv = tuple(x[:2])
    lhs = R.mul(R.element(M.algebra.unit, xv), R.element(tuple(a), K.unit))
    rhs = [F(0)] * R.dim
    for (p, q), c in K.delta_of(xv).items():
        term = R.element(M.act(K.basis(p), tuple(a)), K.basis(q))
        rhs = [r + c * t for r, t in zip(rhs, term)]
    assert lhs == tuple(rhs)
