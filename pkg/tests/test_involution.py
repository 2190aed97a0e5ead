import pytest

from kmalg.findim import (
    automorphism_from_order,
    entrywise_conjugation_automorphism,
    identity_automorphism,
    make_su,
    mat,
)
from kmalg.involution import (
    Admissibility,
    CoeffMap,
    InvolutionDescriptor,
    InvolutionError,
    InvolutionKind,
    PreservationError,
    RealFormDescriptor,
    admissibility_check,
    apply_involution,
    check_kind,
    dualize,
    fixed_and_eigenspaces,
    involution_from_invariants,
    real_form_membership,
    verify_cartan_relations,
)
from kmalg.kmext import ExtendedElement, central_element, derivation_element, hat_bracket
from kmalg.loop import Definiteness, killing_gram, loop_monomial, untwisted
from kmalg.osaka import build_catalog_a1, catalog_record
from kmalg.rand import TrialRng, random_extended_element
from kmalg.scalars import I, ONE, Scalar, ZERO

SU2 = make_su(2)
SU2C = SU2.complexify()
ID_R = identity_automorphism(SU2)
MU_R = entrywise_conjugation_automorphism(SU2)

X = (Scalar(1), ZERO, ZERO)


def _compact_form(twist):
    return RealFormDescriptor(
        name="compact", algebra=SU2C, twist=twist,
        conj=CoeffMap(CoeffMap.identity(3).matrix, index_sign=-1, conjugate=True),
        cd_scale=ONE,
    )


# -- coefficient maps ----------------------------------------------------------

def test_coeff_map_composition_and_identity():
    theta = CoeffMap(CoeffMap.identity(3).matrix, index_sign=-1, conjugate=True)
    assert theta.compose(theta).is_identity()
    refl = CoeffMap(CoeffMap.identity(3).matrix, index_sign=-1)
    assert refl.compose(refl).is_identity()
    # composition on elements equals element-wise composition
    rng = TrialRng("coeffmap")
    tw = untwisted(SU2C)
    for _ in range(20):
        from kmalg.rand import random_loop_element

        f = random_loop_element(SU2C, tw, rng)
        lhs = theta.compose(refl).apply_loop(f)
        rhs = theta.apply_loop(refl.apply_loop(f))
        assert lhs == rhs


def test_parity_map_squares_to_identity_on_elements():
    # a_k -> (-1)^k conj(a_k) is an involution
    par = CoeffMap(CoeffMap.identity(3).matrix, index_sign=1, conjugate=True, parity=2)
    tw = untwisted(SU2C)
    rng = TrialRng("parity")
    from kmalg.rand import random_loop_element

    for _ in range(10):
        f = random_loop_element(SU2C, tw, rng)
        assert par.apply_loop(par.apply_loop(f)) == f


def test_compose_matches_elementwise_application():
    """Formal composition of coefficient maps agrees with applying them in
    sequence, across conjugation, reflection and parity combinations."""
    from kmalg.rand import random_loop_element

    mu_mat = mat([[-1, 0, 0], [0, 1, 0], [0, 0, -1]])
    samples = [
        CoeffMap(CoeffMap.identity(3).matrix, index_sign=-1, conjugate=True),
        CoeffMap(mu_mat, index_sign=-1),
        CoeffMap(mu_mat, index_sign=1, conjugate=True, parity=1),
        CoeffMap(CoeffMap.identity(3).matrix, index_sign=1, parity=2),
        CoeffMap(mu_mat, index_sign=-1, conjugate=True, parity=3),
    ]
    tw = untwisted(SU2C)
    rng = TrialRng("compose-elementwise")
    for a in samples:
        for b in samples:
            comp = a.compose(b)
            for _ in range(5):
                f = random_loop_element(SU2C, tw, rng, max_degree=5)
                assert comp.apply_loop(f) == a.apply_loop(b.apply_loop(f))


# -- invariant pairs -------------------------------------------------------------

def test_invariant_pairs():
    d1, gc1, tw1 = involution_from_invariants(ID_R, ID_R)
    assert tw1.order == 1 and gc1 is SU2C
    d2, _, tw2 = involution_from_invariants(ID_R, MU_R)
    assert tw2.order == 2  # sigma = mu, half-integer frequencies
    assert tw2.matrix == mat([[-1, 0, 0], [0, 1, 0], [0, 0, -1]])
    d3, _, tw3 = involution_from_invariants(MU_R, MU_R)
    assert tw3.order == 1
    for d in (d1, d2, d3):
        assert d.epsilon == -1 and d.reflect_time


def test_invariant_pair_rejects_non_involution():
    rot = automorphism_from_order(SU2, [[0, -1, 0], [1, 0, 0], [0, 0, 1]])
    assert rot.order == 4
    with pytest.raises(InvolutionError):
        involution_from_invariants(rot, rot)


# -- applying involutions ----------------------------------------------------------

def test_apply_involution_formulas():
    phi, gc, tw = involution_from_invariants(ID_R, ID_R)
    const = ExtendedElement(loop_monomial(gc, tw, 0, X))
    assert apply_involution(phi, const) == const
    osc = ExtendedElement(loop_monomial(gc, tw, 1, X))
    img = apply_involution(phi, osc)
    assert img.loop.terms == {-1: X}
    c = central_element(gc, tw)
    assert apply_involution(phi, c) == -c
    d = derivation_element(gc, tw)
    assert apply_involution(phi, d) == -d


def test_involution_squares_and_is_homomorphism():
    for pair in ((ID_R, ID_R), (MU_R, ID_R), (MU_R, MU_R)):
        phi, gc, tw = involution_from_invariants(*pair)
        rng = TrialRng(f"inv-hom-{pair[0].matrix}-{pair[1].matrix}")
        for _ in range(15):
            x = random_extended_element(gc, tw, rng, max_degree=3)
            y = random_extended_element(gc, tw, rng, max_degree=3)
            assert phi.apply(phi.apply(x)) == x
            assert phi.apply(hat_bracket(x, y)) == hat_bracket(phi.apply(x), phi.apply(y))


def test_epsilon_forced_on_c():
    """A time reflection with epsilon = +1 would not be a homomorphism: the
    cocycle changes sign under reflection, so the c image must carry -1.
    The descriptor refuses the inconsistent combination, and the sign flip
    itself is witnessed on random pairs."""
    with pytest.raises(InvolutionError):
        InvolutionDescriptor(
            name="bad", loop_map=CoeffMap(CoeffMap.identity(3).matrix, index_sign=-1),
            epsilon=1, reflect_time=True,
        )
    from kmalg.kmext import cocycle
    from kmalg.rand import random_loop_element

    refl = CoeffMap(CoeffMap.identity(3).matrix, index_sign=-1)
    tw = untwisted(SU2C)
    rng = TrialRng("epsilon-regression")
    for _ in range(20):
        f = random_loop_element(SU2C, tw, rng)
        g = random_loop_element(SU2C, tw, rng)
        assert cocycle(refl.apply_loop(f), refl.apply_loop(g)) == -cocycle(f, g)


# -- kinds and admissibility ----------------------------------------------------------

def test_check_kind():
    phi, _, _ = involution_from_invariants(ID_R, ID_R)
    assert check_kind(phi) == InvolutionKind.SECOND
    first = InvolutionDescriptor(
        name="rotation", loop_map=CoeffMap(CoeffMap.identity(3).matrix), epsilon=1,
        reflect_time=False,
    )
    assert check_kind(first) == InvolutionKind.FIRST
    compact_conj = InvolutionDescriptor(
        name="conjugation along the compact form",
        loop_map=CoeffMap(CoeffMap.identity(3).matrix, index_sign=-1, conjugate=True),
        epsilon=1, reflect_time=False,
    )
    assert check_kind(compact_conj) == InvolutionKind.FIRST


def test_admissibility():
    phi, _, _ = involution_from_invariants(ID_R, ID_R)
    first = InvolutionDescriptor(
        name="first", loop_map=CoeffMap(CoeffMap.identity(3).matrix), epsilon=1,
        reflect_time=False,
    )
    assert admissibility_check([phi, phi]) == Admissibility.ADMISSIBLE
    assert admissibility_check([first, phi]) == Admissibility.LOCALLY_ADMISSIBLE_ONLY
    assert admissibility_check([phi]) == Admissibility.ADMISSIBLE


# -- membership ---------------------------------------------------------------------

def test_membership_untwisted_forms():
    aspl_idid = catalog_record("III[Id,Id]").real_form
    aspl_mumu = catalog_record("III[mu,mu]").real_form
    tw = aspl_idid.twist
    u_su2 = ExtendedElement(loop_monomial(SU2C, tw, 1, (ZERO, Scalar(1), ZERO)))
    assert real_form_membership(aspl_idid, u_su2)
    # H = -i X1 is in sl(2,R) but not su(2)
    h = ExtendedElement(loop_monomial(SU2C, tw, 1, (Scalar(0, -1), ZERO, ZERO)))
    assert real_form_membership(aspl_mumu, h)
    assert not real_form_membership(aspl_idid, h)


def test_membership_twisted_form():
    """At odd degree the twisted almost-split form holds exactly the real
    symmetric traceless coefficients (both defining conditions at once)."""
    rf = catalog_record("III[Id,mu]").real_form
    tw = rf.twist
    h = ExtendedElement(loop_monomial(SU2C, tw, 1, (Scalar(0, -1), ZERO, ZERO)))
    ef = ExtendedElement(loop_monomial(SU2C, tw, 1, (ZERO, ZERO, Scalar(0, -1))))
    assert real_form_membership(rf, h)       # H, symmetric
    assert real_form_membership(rf, ef)      # E + F, symmetric
    x1 = ExtendedElement(loop_monomial(SU2C, tw, 1, X))  # anti-Hermitian, not real
    assert not real_form_membership(rf, x1)
    # block dimension: 2 per odd signed degree
    (key, elems) = rf.basis(1)[1]
    assert key == (1, -1) and len(elems) == 4
    # every member's matrix at degree 1 is real symmetric traceless
    for e in elems:
        vec = e.loop.terms.get(1)
        if vec is None:
            continue
        m = SU2C.matrix(vec)
        assert all(x.is_real() for row in m for x in row)
        assert m[0][1] == m[1][0] and m[0][0] == -m[1][1]
    # c, d lines are imaginary
    assert real_form_membership(rf, central_element(SU2C, tw).scale(I))
    assert not real_form_membership(rf, central_element(SU2C, tw))


def test_cd_reality_of_compact_form():
    rf = _compact_form(untwisted(SU2C))
    assert real_form_membership(rf, central_element(SU2C, rf.twist))
    assert not real_form_membership(rf, central_element(SU2C, rf.twist).scale(I))


# -- eigenspaces -------------------------------------------------------------------

def test_fixed_and_eigenspaces_dims():
    phi, gc, tw = involution_from_invariants(ID_R, ID_R)
    rf = _compact_form(tw)
    dec = fixed_and_eigenspaces(phi, rf, 1)
    # oracle: K demands u_n = u_{-n} (6 parameters: u_0 and u_1), P demands
    # u_n = -u_{-n} (3 parameters) plus the two negated c, d directions
    assert dec.dims() == {(0,): (3, 0), (1, -1): (3, 3), ("cd",): (0, 2)}
    assert len(dec.k_basis) == 6
    assert len(dec.p_basis) == 5
    for e in dec.k_basis:
        for k, vec in e.loop.terms.items():
            assert e.loop.terms.get(-k) == vec  # cosine pattern
    for e in dec.p_basis:
        if e.loop.is_zero():
            assert e.c or e.d  # c, d sit in P
        for k, vec in e.loop.terms.items():
            assert e.loop.terms.get(-k) == tuple(-c for c in vec)


def test_dimension_count_matches_form():
    for name in ("I[Id,Id]", "I[Id,mu]", "I[mu,mu]", "II"):
        rec = catalog_record(name)
        dec = fixed_and_eigenspaces(rec.involution, rec.real_form, 2)
        total = rec.real_form.dimension(2)
        assert len(dec.k_basis) + len(dec.p_basis) == total


def test_preservation_error():
    # multiplying coefficients by i leaves the sl(2,R)-coefficient form
    bad = InvolutionDescriptor(
        name="i-scaling",
        loop_map=CoeffMap([[I if i == j else ZERO for j in range(3)] for i in range(3)],
                          index_sign=-1),
        epsilon=-1, reflect_time=True,
    )
    rf = catalog_record("III[mu,mu]").real_form
    with pytest.raises(PreservationError):
        fixed_and_eigenspaces(bad, rf, 1)


def test_non_involutive_map_rejected_on_eigensplit():
    # an order-4 rotation preserves the compact form but is not an involution
    rot = InvolutionDescriptor(
        name="quarter turn",
        loop_map=CoeffMap(mat([[1, 0, 0], [0, 0, -1], [0, 1, 0]]), index_sign=-1),
        epsilon=-1, reflect_time=True,
    )
    rf = _compact_form(untwisted(SU2C))
    with pytest.raises(InvolutionError):
        fixed_and_eigenspaces(rot, rf, 1)


def test_cartan_relations_for_catalog():
    for name in ("III[Id,Id]", "III[mu,mu]", "IV"):
        rec = catalog_record(name)
        dec = fixed_and_eigenspaces(rec.involution, rec.real_form, 1)
        assert verify_cartan_relations(dec)


# -- duality ------------------------------------------------------------------------

def test_dualize_compact_to_almost_split():
    phi, gc, tw = involution_from_invariants(ID_R, ID_R)
    rf = _compact_form(tw)
    dec = fixed_and_eigenspaces(phi, rf, 1)
    dual = dualize(dec)
    aspl = catalog_record("III[Id,Id]").real_form
    assert dual.real_form.conj == aspl.conj
    assert dual.real_form.cd_scale == I
    assert dual.involution.loop_map == catalog_record("III[Id,Id]").involution.loop_map


def test_dualize_is_involutive():
    phi, gc, tw = involution_from_invariants(MU_R, MU_R)
    rf = _compact_form(tw)
    dec = fixed_and_eigenspaces(phi, rf, 1)
    dual = dualize(dec)
    ddec = fixed_and_eigenspaces(dual.involution, dual.real_form, 1)
    ddual = dualize(ddec)
    assert ddual.real_form.conj == rf.conj
    assert ddual.real_form.cd_scale == rf.cd_scale
    assert ddual.involution.loop_map == phi.loop_map


def test_duality_flips_compactness():
    rec = catalog_record("I[mu,mu]")
    loops = [f for f in rec.real_form.loop_basis(2) if not f.is_zero()]
    _, v = killing_gram(loops)
    assert v == Definiteness.NEG_DEFINITE
    dual_rf = catalog_record("III[mu,mu]").real_form
    loops_d = [f for f in dual_rf.loop_basis(2) if not f.is_zero()]
    _, vd = killing_gram(loops_d)
    assert vd != Definiteness.NEG_DEFINITE


# -- Killing sign split ----------------------------------------------------------------

@pytest.mark.parametrize("name", ["III[Id,Id]", "III[Id,mu]", "III[mu,mu]"])
def test_kp_killing_signs(name):
    rec = catalog_record(name)
    dec = fixed_and_eigenspaces(rec.involution, rec.real_form, 2)
    _, kv = killing_gram(dec.loop_parts("K"))
    _, pv = killing_gram(dec.loop_parts("P"))
    assert kv == Definiteness.NEG_DEFINITE
    assert pv == Definiteness.POS_DEFINITE


def test_no_mixed_type():
    """Every catalog form is either compact (negative definite) or admits the
    verified Cartan split; never definite on neither side."""
    for rec in build_catalog_a1():
        loops = [f for f in rec.real_form.loop_basis(2) if not f.is_zero()]
        _, v = killing_gram(loops)
        if v == Definiteness.NEG_DEFINITE:
            continue
        dec = fixed_and_eigenspaces(rec.involution, rec.real_form, 2)
        _, kv = killing_gram(dec.loop_parts("K"))
        _, pv = killing_gram(dec.loop_parts("P"))
        assert kv == Definiteness.NEG_DEFINITE
        assert pv == Definiteness.POS_DEFINITE


# -- paper-style alternative formulas ---------------------------------------------------

def test_conjugation_formula_agrees_on_form():
    """f -> conj(f(-t)) acts on the untwisted compact form exactly like the
    linear representative built from the invariant pair (mu, mu)."""
    phi, gc, tw = involution_from_invariants(MU_R, MU_R)
    mu_c = entrywise_conjugation_automorphism(SU2C)
    ambient = CoeffMap(mu_c.matrix, index_sign=1, conjugate=True)
    rf = _compact_form(tw)
    for key, elems in rf.basis(2):
        for e in elems:
            if e.loop.is_zero():
                continue
            assert ambient.apply_loop(e.loop) == phi.loop_map.apply_loop(e.loop)


def test_ad_formula_is_conjugate_representative():
    """The twisted record's involution u_k -> -u_{-k}^T is carried to the
    Ad(diag(1,-1)) . conj formula by the constant inner rotation swapping the
    second and third compact directions."""
    rec = catalog_record("I[Id,mu]")
    stored = rec.involution.loop_map
    m_ad_mu = mat([[-1, 0, 0], [0, -1, 0], [0, 0, 1]])  # Ad(diag(1,-1)) . mu
    ad_formula = CoeffMap(m_ad_mu, index_sign=-1)
    rot = CoeffMap(mat([[1, 0, 0], [0, 0, -1], [0, 1, 0]]))
    lhs = rot.compose(stored).compose(_inverse_rotation())
    assert lhs == ad_formula


def _inverse_rotation():
    return CoeffMap(mat([[1, 0, 0], [0, 0, 1], [0, -1, 0]]))
