import random
from fractions import Fraction

import pytest

from nliecoh.cochains import Cochain, CochainSpace
from nliecoh.corpus import automorphism, degree1_cochain
from nliecoh.deformations import (
    DeformedAlgebra,
    DeformedMorphism,
    FormalAutomorphism,
    apply_automorphism,
    compose_series,
    extend_deformation,
    extend_order,
    first_order_equivalence,
    formal_inverse,
    infinitesimal,
    linear_map_cochain,
    nambu_residual,
    obstruction,
    validate_deformation,
)
from nliecoh.errors import NotValidated, ObstructionNotCocycle, OrderMismatch
from nliecoh.linalg import Matrix, basis_vector, zero_vector
from nliecoh.morphisms import CochainTriple, Morphism, triple_complex


def unit(i):
    return basis_vector(4, i)


def test_nambu_residual_base_order(corpus_algebras):
    for alg in corpus_algebras.values():
        da = DeformedAlgebra.trivial(alg, 1)
        assert nambu_residual(da, 0).is_zero()


def test_nambu_residual_cocycle_term(alg_a1):
    term = degree1_cochain(alg_a1, {(1, 2, 3): {2: 1}})
    da = DeformedAlgebra(alg_a1, 1, (term,))
    assert nambu_residual(da, 1).is_zero()


def test_nambu_residual_non_cocycle(alg_a1):
    term = degree1_cochain(alg_a1, {(1, 2, 3): {1: 1, 3: -1}})
    da = DeformedAlgebra(alg_a1, 1, (term,))
    assert not nambu_residual(da, 1).is_zero()


def test_nambu_residual_second_order_matches_direct_expansion(alg_a1):
    """The quadratic self-interaction term, re-derived longhand."""
    term = degree1_cochain(alg_a1, {(1, 2, 3): {2: 1}})
    da = DeformedAlgebra(alg_a1, 1, (term,))
    res = nambu_residual(da, 2)
    space = CochainSpace(alg_a1, 2, 4)
    for key in space.domain_keys:
        xs = [unit(i) for i in key[0]]
        ys = [unit(i) for i in key[1]]
        lhs = term.evaluate_vectors(*xs, term.evaluate_vectors(*ys))
        rhs = list(zero_vector(4))
        for i in range(3):
            inner = term.evaluate_vectors(*xs, ys[i])
            out = term.evaluate_vectors(*ys[:i], inner, *ys[i + 1 :])
            rhs = [a + b for a, b in zip(rhs, out)]
        expected = tuple(a - b for a, b in zip(lhs, rhs))
        got = tuple(res.coeffs.get((key, t), Fraction(0)) for t in range(4))
        assert got == expected


def test_validate_trivial_and_corpus(def_order1, def_order2, phi_a3_b3):
    assert validate_deformation(DeformedMorphism.trivial(phi_a3_b3, 3)).is_valid
    assert def_order1.report.is_valid
    assert def_order2.report.is_valid


def test_validate_flags_non_cocycle_first_order(alg_a1, phi_a1_b1):
    term = degree1_cochain(alg_a1, {(1, 2, 3): {1: 1, 3: -1}})
    dm = DeformedMorphism(
        DeformedAlgebra(alg_a1, 1, (term,)),
        DeformedAlgebra.trivial(phi_a1_b1.target, 1),
        (phi_a1_b1.matrix, Matrix.zero(4, 4)),
    )
    report = validate_deformation(dm)
    assert not report.is_valid
    assert {f.order for f in report.failures} == {1}
    assert all(f.part == "source" for f in report.failures)


def test_infinitesimal_corpus(def_order1):
    theta, is_cocycle = infinitesimal(def_order1)
    assert is_cocycle
    assert not theta.is_zero()


def test_infinitesimal_trivial(phi_a3_b3):
    theta, is_cocycle = infinitesimal(DeformedMorphism.trivial(phi_a3_b3, 1))
    assert is_cocycle and theta.is_zero()


def test_infinitesimal_requires_validation(alg_a1, phi_a1_b1):
    term = degree1_cochain(alg_a1, {(1, 2, 3): {1: 1, 3: -1}})
    dm = DeformedMorphism(
        DeformedAlgebra(alg_a1, 1, (term,)),
        DeformedAlgebra.trivial(phi_a1_b1.target, 1),
        (phi_a1_b1.matrix, Matrix.zero(4, 4)),
    )
    with pytest.raises(NotValidated):
        infinitesimal(dm)


def test_obstruction_zero_for_trivial(phi_a3_b3):
    dm = DeformedMorphism.trivial(phi_a3_b3, 1)
    assert obstruction(dm).is_zero()


def test_obstruction_vs_quadratic_residual(def_identity_pair, def_order1):
    """With a single first-order term the next-order defect is exactly the
    negated obstruction component."""
    for dm in (def_identity_pair, def_order1):
        ob = obstruction(dm)
        res = nambu_residual(dm.src_def, 2)
        assert res.coeffs == ob.c1.scale(-1).coeffs
        tc = triple_complex(dm.base_morphism)
        assert tc.is_cocycle(ob)


def test_obstruction_identity_for_arbitrary_terms(alg_a1):
    """The defect/obstruction relation is an algebraic identity in the
    first-order term, so it must hold for a random non-cocycle too, where
    both sides are nonzero."""
    from nliecoh.deformations import _algebra_obstruction

    rng = random.Random(77)
    space = CochainSpace(alg_a1, 1, 4)
    term = Cochain(
        space,
        {
            (key, t): rng.randint(-2, 2)
            for key in space.domain_keys
            for t in range(4)
        },
    )
    da = DeformedAlgebra(alg_a1, 1, (term,))
    res = nambu_residual(da, 2)
    ob = _algebra_obstruction(da, 1)
    assert not ob.is_zero()
    assert res.coeffs == ob.scale(-1).coeffs


def test_obstruction_equals_coboundary_of_discarded_terms(def_order2):
    """Truncating a valid order-2 family: its order-2 triple maps to the
    obstruction of the truncation under the differential."""
    trunc = def_order2.truncated(1)
    ob = obstruction(trunc)
    tc = triple_complex(def_order2.base_morphism)
    theta2 = CochainTriple(
        1,
        def_order2.src_def.terms[1],
        def_order2.tgt_def.terms[1],
        linear_map_cochain(
            CochainSpace(def_order2.src_def.base, 0, 4), def_order2.phi_terms[2]
        ),
    )
    assert tc.vectorize(tc.coboundary(theta2)) == tc.vectorize(ob)
    assert tc.is_cocycle(ob)


def test_extend_order_roundtrip(def_order2):
    trunc = def_order2.truncated(1)
    witness = extend_order(trunc)
    assert witness is not None
    extended = extend_deformation(trunc, witness)
    assert validate_deformation(extended).is_valid
    assert extended.order == 2


def test_extend_trivial(phi_a3_b3):
    dm = DeformedMorphism.trivial(phi_a3_b3, 1)
    witness = extend_order(dm)
    assert witness is not None
    assert validate_deformation(extend_deformation(dm, witness)).is_valid


def test_extension_blocked_by_nonzero_class(def_order1, monkeypatch):
    """When the obstruction represents a nonzero cohomology class, no
    correction triple exists and the solver reports absence."""
    import nliecoh.deformations as dfm

    tc = triple_complex(def_order1.base_morphism)
    rep = tc.cohomology(3)
    assert rep.dim_h > 0, "corpus morphism complex is not rigid at this degree"
    blocked = tc.unvectorize(2, rep.representatives[0])
    assert tc.is_cocycle(blocked)
    monkeypatch.setattr(dfm, "obstruction", lambda dm: blocked)
    assert dfm.extend_order(def_order1) is None


def test_obstruction_cocycle_guard(def_order1, monkeypatch):
    import nliecoh.deformations as dfm

    tc = triple_complex(def_order1.base_morphism)
    rogue = tc.unvectorize(2, [1] * tc.dim(2))
    assert not tc.is_cocycle(rogue)
    monkeypatch.setattr(dfm, "obstruction", lambda dm: rogue)
    with pytest.raises(ObstructionNotCocycle):
        dfm.extend_order(def_order1)


def test_formal_inverse_identity_and_series():
    eye = FormalAutomorphism.identity(3, 2)
    inv = formal_inverse(eye, 2)
    assert all(m.is_zero() for m in inv.terms)
    a = Matrix.from_rows([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    psi = FormalAutomorphism.from_first_order(a)
    inv = formal_inverse(psi, 3)
    assert inv.term(1) == a.scale(-1)
    assert inv.term(2) == a.mul(a)
    assert inv.term(3) == a.mul(a).mul(a).scale(-1)


def test_formal_inverse_random_roundtrip():
    rng = random.Random(31)
    for _ in range(5):
        terms = tuple(
            Matrix.from_rows(
                [[rng.randint(-2, 2) for _ in range(4)] for _ in range(4)]
            )
            for _ in range(3)
        )
        psi = FormalAutomorphism(4, 3, terms)
        chi = formal_inverse(psi, 3)
        assert all(m.is_zero() for m in compose_series(psi, chi, 3).terms)
        assert all(m.is_zero() for m in compose_series(chi, psi, 3).terms)


def test_apply_identity_automorphism(def_order1):
    out = apply_automorphism(
        def_order1, FormalAutomorphism.identity(4, 1), FormalAutomorphism.identity(4, 1)
    )
    assert out.src_def.terms == def_order1.src_def.terms
    assert out.tgt_def.terms == def_order1.tgt_def.terms
    assert out.phi_terms == def_order1.phi_terms


def test_apply_automorphism_corpus_values(def_order1):
    """Exact transformed values for the bundled scaling automorphism."""
    psi_n = automorphism("a3_scaling")
    psi_t = automorphism("b3_identity")
    out = apply_automorphism(def_order1, psi_n, psi_t)
    assert validate_deformation(out).is_valid
    # the degree-1 term of the scaling series is a derivation, so the
    # source bracket family is untouched
    assert out.src_def.terms[0].coeffs == def_order1.src_def.terms[0].coeffs
    # map series: images of the third and fourth generators
    assert out.phi_terms[0] == def_order1.phi_terms[0]
    assert out.phi_terms[1].column(2) == zero_vector(4)
    assert out.phi_terms[1].column(3) == (0, 0, -1, 0)


def test_transform_roundtrip(def_order2):
    rng = random.Random(41)
    p = Matrix.from_rows([[rng.randint(-1, 1) for _ in range(4)] for _ in range(4)])
    q = Matrix.from_rows([[rng.randint(-1, 1) for _ in range(4)] for _ in range(4)])
    psi_n = FormalAutomorphism(4, 2, (p, Matrix.zero(4, 4)))
    psi_t = FormalAutomorphism(4, 2, (q, q.mul(q)))
    inv_n = formal_inverse(psi_n, 2)
    inv_t = formal_inverse(psi_t, 2)
    once = apply_automorphism(def_order2, psi_n, psi_t)
    back = apply_automorphism(once, inv_n, inv_t)
    assert back.src_def.terms == def_order2.src_def.terms
    assert back.tgt_def.terms == def_order2.tgt_def.terms
    assert back.phi_terms == def_order2.phi_terms


def test_equivalence_invariance_identity(def_order1, def_order2):
    """Infinitesimals before and after a transform differ by exactly the
    coboundary of the degree-1 automorphism pair."""
    cases = [
        (def_order1, automorphism("a3_scaling"), automorphism("b3_identity")),
        (
            def_order2.truncated(1),
            FormalAutomorphism.from_first_order(
                Matrix.from_rows(
                    [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0]]
                )
            ),
            FormalAutomorphism.from_first_order(
                Matrix.from_rows(
                    [[0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0]]
                )
            ),
        ),
    ]
    for dm, psi_n, psi_t in cases:
        out = apply_automorphism(dm, psi_n, psi_t)
        theta_before, _ = infinitesimal(dm)
        theta_after, _ = infinitesimal(out)
        phi = dm.base_morphism
        tc = triple_complex(phi)
        alpha = CochainTriple(
            0,
            linear_map_cochain(CochainSpace(phi.source, 0, 4), psi_n.term(1)),
            linear_map_cochain(CochainSpace(phi.target, 0, 4), psi_t.term(1)),
            None,
        )
        lhs = tc.vectorize(theta_before.sub(theta_after))
        rhs = tc.vectorize(tc.coboundary(alpha))
        assert lhs == rhs


def test_first_order_equivalence_search(def_order1):
    psi_n = automorphism("a3_scaling")
    psi_t = automorphism("b3_identity")
    out = apply_automorphism(def_order1, psi_n, psi_t)
    pair = first_order_equivalence(def_order1, out)
    assert pair is not None
    found_n, found_t = pair
    theta_a, _ = infinitesimal(def_order1)
    theta_b, _ = infinitesimal(out)
    phi = def_order1.base_morphism
    tc = triple_complex(phi)
    alpha = CochainTriple(
        0,
        linear_map_cochain(CochainSpace(phi.source, 0, 4), found_n.term(1)),
        linear_map_cochain(CochainSpace(phi.target, 0, 4), found_t.term(1)),
        None,
    )
    assert tc.vectorize(tc.coboundary(alpha)) == tc.vectorize(theta_a.sub(theta_b))


def test_order_mismatch_guard(def_order1):
    with pytest.raises(OrderMismatch):
        apply_automorphism(
            def_order1,
            FormalAutomorphism.identity(4, 1),
            FormalAutomorphism.identity(4, 1),
            k=2,
        )
    with pytest.raises(OrderMismatch):
        DeformedMorphism(
            def_order1.src_def,
            DeformedAlgebra.trivial(def_order1.tgt_def.base, 2),
            def_order1.phi_terms,
        )
