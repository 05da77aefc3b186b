import random

import pytest
import sympy

from hopfkit.actions import commutant_rows, trivial_action
from hopfkit.algebra import base_field
from hopfkit.catalog import (
    counit_morphism,
    cyclic,
    dual_numbers,
    function_algebra,
    identity_morphism,
    restriction_morphism,
    subgroup,
    sweedler4,
    sweedler_projection,
    symmetric,
)
from hopfkit.errors import HopfkitError, VerificationError
from hopfkit.exactlin import Matrix, unit_vector
from hopfkit.fixtures import THEOREM_FIXTURES, graded_module, s3_restriction, theorem_fixture
from hopfkit.morita import (
    COMPAT_LEFT,
    COMPAT_RIGHT,
    InducedSetup,
    MoritaContext,
    certify_span,
    decompose_endomorphism,
    hom_context,
    smash_to_end,
    theorem_context,
    trivial_action_generator,
    trivial_context,
    unitriangular_basis,
    verify_bimodule_maps,
    verify_compatibility,
    verify_surjectivity,
    verify_theorem_morita,
)


def graded_setup():
    pi = sweedler_projection()
    return InducedSetup(graded_module(pi.target), pi.source, pi)


def field_setup():
    _, H, U, pi = s3_restriction()
    return InducedSetup(trivial_action(base_field(), U.dual), H, pi)


# abstract contexts -----------------------------------------------------------

def test_trivial_context():
    C = trivial_context()
    assert verify_compatibility(C).ok and verify_bimodule_maps(C).ok
    g, l, certs = verify_surjectivity(C)
    assert g and l and all(c.to_dict()["surjective"] for c in certs)


def test_corrupted_lambda_fails_compatibility():
    # Λ doubled on one basis pair breaks the left identity at that pair
    C = trivial_context()
    good = C.lam
    C.lam = lambda q, p: (2 * good(q, p)[0],)
    rep = verify_compatibility(C)
    check = rep.check(COMPAT_LEFT)
    assert not check.ok and check.witness == ("P[0]", "Q[0]", "P[0]")
    assert not rep.check(COMPAT_RIGHT).ok


def test_corrupted_lambda_on_one_output():
    # a 2×2 matrix context with Λ scaled on the output coordinate 0 only
    def mul(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    C = MoritaContext("M2", mul, mul, mul, mul, mul, mul, mul, mul, dims={k: 4 for k in "RSPQ"})
    assert verify_compatibility(C).ok
    C.lam = lambda q, p: (lambda v: (2 * v[0],) + v[1:])(mul(q, p))
    rep = verify_compatibility(C)
    assert not rep.ok
    assert any(c.witness for c in rep.failures())


def test_certify_span_reports_missing_targets():
    cert = certify_span([(1, 0), (2, 0)], [("a", "b"), ("c", "d")], 2, ["x", "y"], "Γ")
    assert not cert.surjective
    assert cert.targets[0][1] == [("a", "b", 1)] and cert.targets[1][1] is None


def test_sampled_context_needs_sampler():
    C = trivial_context()
    C.dims = None
    with pytest.raises(HopfkitError):
        verify_compatibility(C, samples=3, seed=0)


# induced setups --------------------------------------------------------------

def test_hom_context_for_graded_sweedler():
    setup = graded_setup()
    ctx = hom_context(setup)
    assert ctx.dims == {"R": 16, "S": 4, "P": 8, "Q": 8}
    assert verify_compatibility(ctx).ok
    assert verify_bimodule_maps(ctx).ok
    g, l, _ = verify_surjectivity(ctx)
    assert g and l


def test_base_field_subgroup_gives_full_matrix_algebra():
    A = dual_numbers()
    for H in (sweedler4(), function_algebra(cyclic(2))):
        pi = counit_morphism(H)
        setup = InducedSetup(trivial_action(A, pi.target.dual), H, pi)
        assert setup.end.dim == A.dim * H.dim ** 2
        assert setup.inv.dim == A.dim * H.dim
        assert smash_to_end(setup).ok


@pytest.mark.parametrize("labels", [["e"], ["e", "(1 2)"], ["e", "(1 2 3)", "(1 3 2)"]])
def test_trivial_action_generator_for_subgroups(labels):
    emb = subgroup(symmetric(3), labels)
    H, U = function_algebra(emb.ambient), function_algebra(emb.subgroup)
    rep = trivial_action_generator(dual_numbers(), H, restriction_morphism(emb, H, U))
    assert rep.ok, [c.name for c in rep.failures()]
    assert rep.data["generator rank"] == 2 * len(labels)


def test_trivial_action_generator_for_sweedler():
    pi = sweedler_projection()
    assert trivial_action_generator(base_field(), pi.source, pi).ok


@pytest.mark.parametrize("make", [graded_setup, field_setup], ids=["graded", "field"])
def test_smash_to_end_is_isomorphism(make):
    setup = make()
    rep = smash_to_end(setup)
    assert rep.ok
    assert rep.data["dim smash"] == rep.data["dim End"]


def test_end_dimension_matches_sympy_commutant():
    setup = graded_setup()
    rows = commutant_rows(setup.module)
    n = setup.module.dim
    M = sympy.zeros(len(rows), n * n)
    for i, row in enumerate(rows):
        for j, x in row.items():
            M[i, j] = sympy.Rational(x.numerator, x.denominator)
    assert n * n - M.rank() == setup.end.dim == 16


@pytest.mark.parametrize("make", [graded_setup, field_setup], ids=["graded", "field"])
def test_decompose_round_trips(make):
    setup = make()
    rng = random.Random(7)
    for _ in range(3):
        T = setup.random_endomorphism(rng)
        v = decompose_endomorphism(setup, T)
        assert setup.smash_matrix(v) == T
        assert decompose_endomorphism(setup, T, unitriangular_basis(setup.nH)) == v
    for i in range(setup.smash_inv.dim):
        e = unit_vector(setup.smash_inv.dim, i)
        assert decompose_endomorphism(setup, setup.smash_matrix(e)) == e


def test_decompose_rejects_non_endomorphism():
    setup = graded_setup()
    n = setup.module.dim
    T = Matrix(n, n, {(0, n - 1): 1})
    with pytest.raises(VerificationError):
        setup.decompose(T)


def test_smash_context_is_transported():
    setup = graded_setup()
    ctx = theorem_context(setup)
    assert ctx.dims["R"] == setup.smash_inv.dim
    assert verify_compatibility(ctx).ok and verify_bimodule_maps(ctx).ok


# pipeline ---------------------------------------------------------------------

@pytest.mark.parametrize("name", THEOREM_FIXTURES)
def test_strategies_agree(name):
    _, M, H, pi = theorem_fixture(name)
    direct = verify_theorem_morita(M, H, pi, strategy="direct")
    reduced = verify_theorem_morita(M, H, pi, strategy="reduce-to-invariants")
    assert direct.ok and reduced.ok
    for rep in (direct, reduced):
        thm = rep.child("stage: theorem context")
        assert thm.check("Γ surjective").ok and thm.check("Λ surjective").ok


def test_unknown_strategy():
    _, M, H, pi = theorem_fixture("graded-sweedler")
    with pytest.raises(ValueError):
        verify_theorem_morita(M, H, pi, strategy="guess")


def test_pipeline_stops_at_bad_inputs():
    H = sweedler4()
    pi = identity_morphism(H)
    rep = verify_theorem_morita(trivial_action(base_field(), H.dual), H, pi)
    assert not rep.ok
    assert [c.title for c in rep.children] == ["stage: inputs"]
