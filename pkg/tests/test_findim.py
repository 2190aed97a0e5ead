import pytest

from kmalg import findim, linalg
from kmalg.findim import (
    FiniteAutomorphism,
    ad_conjugation_automorphism,
    check_automorphism,
    compute_ideal_split,
    direct_sum,
    entrywise_conjugation_automorphism,
    identity_automorphism,
    is_compact_type,
    make_abelian,
    make_sl,
    make_so,
    make_su,
    mat,
)
from kmalg.rand import TrialRng
from kmalg.scalars import Scalar, ZERO

from oracles import killing_sl_family, killing_so_family

E1 = (Scalar(1), ZERO, ZERO)
E2 = (ZERO, Scalar(1), ZERO)
E3 = (ZERO, ZERO, Scalar(1))


# -- constructors -----------------------------------------------------------

def test_sl_dimensions():
    assert make_sl(2).dim == 3
    assert make_sl(3).dim == 8
    assert direct_sum(make_sl(2), make_sl(2)).dim == 6


def test_sl_rejects_small():
    with pytest.raises(findim.LieAlgebraError):
        make_sl(1)


def test_su2_basis_is_standard():
    su2 = make_su(2)
    i = Scalar(0, 1)
    assert su2.basis[0] == mat([[i, 0], [0, -i]])
    assert su2.basis[1] == mat([[0, 1], [-1, 0]])
    assert su2.basis[2] == mat([[0, i], [i, 0]])
    assert su2.dim == 3 and su2.field == "R"


def test_su_closure_is_rational():
    su2 = make_su(2)
    for j in range(3):
        for k in range(3):
            for _m, c in su2.structure[j][k]:
                assert c.is_real()


def test_su2_complexification_matches_sl2():
    """Change of basis carrying the anti-Hermitian basis into (H, E, F)
    transports the structure constants exactly."""
    a1 = make_su(2).complexify()
    sl2 = make_sl(2, "C")
    t = [sl2.coords(b) for b in a1.basis]  # each su2 basis vector in sl2 coords

    def to_sl2(vec):
        out = [ZERO] * 3
        for c, row in zip(vec, t):
            for i, x in enumerate(row):
                out[i] = out[i] + c * x
        return tuple(out)

    rng = TrialRng("sl2-transport")
    for _ in range(25):
        x = tuple(rng.scalar() for _ in range(3))
        y = tuple(rng.scalar() for _ in range(3))
        assert to_sl2(a1.bracket(x, y)) == sl2.bracket(to_sl2(x), to_sl2(y))


def test_so_dimensions_and_split():
    assert make_so(5, "C").dim == 10
    assert make_so(3, "R").dim == 3
    so4 = make_so(4)
    assert so4.dim == 6
    assert [b.kind for b in so4.blocks] == ["simple", "simple"]
    split = compute_ideal_split(so4)
    assert sorted((k, len(v)) for k, v in split) == [("simple", 3), ("simple", 3)]
    # each returned piece is an ideal: brackets with everything stay inside
    for _, vecs in split:
        flat = [linalg.real_flatten(list(v)) for v in vecs]
        for v in vecs:
            for j in range(so4.dim):
                probe = tuple(Scalar(1) if i == j else ZERO for i in range(so4.dim))
                img = so4.bracket(v, probe)
                assert linalg.coords_in_span(flat, linalg.real_flatten(list(img))) is not None


def test_abelian():
    ab = make_abelian(1)
    assert all(not ab.structure[j][k] for j in range(1) for k in range(1))
    assert ab.killing((Scalar(1),), (Scalar(1),)) == ZERO
    g = direct_sum(make_abelian(1), make_su(2))
    kinds = [b.kind for b in g.blocks]
    assert kinds == ["abelian", "simple"]
    assert sorted((k, len(v)) for k, v in compute_ideal_split(g)) == [
        ("abelian", 1),
        ("simple", 3),
    ]


# -- killing form -------------------------------------------------------------

def test_killing_su2_against_trace_oracle():
    su2 = make_su(2)
    assert su2.killing(E1, E1) == killing_sl_family(2, su2.basis[0], su2.basis[0])
    assert su2.killing(E1, E1) == Scalar(-8)
    rng = TrialRng("killing-su2")
    for _ in range(20):
        x = tuple(rng.scalar(real_only=True) for _ in range(3))
        y = tuple(rng.scalar(real_only=True) for _ in range(3))
        assert su2.killing(x, y) == killing_sl_family(2, su2.matrix(x), su2.matrix(y))


def test_killing_sl2r_h():
    sl2r = make_sl(2, "R")
    h = E1  # first basis vector is H = E11 - E22
    assert sl2r.killing(h, h) == Scalar(8)
    assert sl2r.killing(h, h) == killing_sl_family(2, sl2r.basis[0], sl2r.basis[0])


def test_killing_so_oracle():
    so5 = make_so(5, "C")
    rng = TrialRng("killing-so5")
    for _ in range(5):
        x = tuple(rng.scalar() for _ in range(10))
        y = tuple(rng.scalar() for _ in range(10))
        assert so5.killing(x, y) == killing_so_family(5, so5.matrix(x), so5.matrix(y))


def test_killing_abelian_vanishes():
    ab = make_abelian(3)
    rng = TrialRng("killing-ab")
    x = tuple(rng.scalar(real_only=True) for _ in range(3))
    assert ab.killing(x, x) == ZERO


def test_semisimple_nondegenerate():
    for g in (make_su(2), make_sl(3), make_so(5, "C"), make_so(4)):
        assert g.is_semisimple()
    assert not make_abelian(2).is_semisimple()


# -- algebra laws ---------------------------------------------------------------

def test_antisymmetry_and_jacobi_on_all_basis_triples():
    for g in (make_su(2), make_sl(3), make_so(4)):
        basis = [tuple(Scalar(1) if i == j else ZERO for i in range(g.dim)) for j in range(g.dim)]
        for x in basis:
            for y in basis:
                assert g.bracket(x, y) == tuple(-c for c in g.bracket(y, x))
        for x in basis:
            for y in basis:
                for z in basis:
                    total = [ZERO] * g.dim
                    for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
                        term = g.bracket(g.bracket(a, b), c)
                        total = [t + u for t, u in zip(total, term)]
                    assert not any(total)


def test_non_closed_basis_rejected():
    sl2 = make_sl(2, "C")
    # span{E, F} is not bracket-closed: [E, F] = H escapes
    e_mat, f_mat = sl2.basis[1], sl2.basis[2]
    with pytest.raises(findim.LieAlgebraError):
        findim.FiniteLieAlgebra(
            "ef-span", "C", [e_mat, f_mat], [findim.IdealBlock("simple", (0, 1))]
        )


def test_non_orthogonal_blocks_rejected():
    su2 = make_su(2)
    with pytest.raises(findim.LieAlgebraError):
        findim.FiniteLieAlgebra(
            "bad-split", "R", su2.basis,
            [findim.IdealBlock("simple", (0,)), findim.IdealBlock("simple", (1, 2))],
        )


def test_compactness():
    assert is_compact_type(make_su(2))
    assert not is_compact_type(make_sl(2, "R"))
    assert not is_compact_type(make_abelian(1))
    with pytest.raises(findim.LieAlgebraError):
        is_compact_type(make_sl(2, "C"))


# -- automorphisms -----------------------------------------------------------------

def test_entrywise_conjugation_on_su2():
    mu = entrywise_conjugation_automorphism(make_su(2))
    assert mu.order == 2
    assert not mu.conjugate_linear  # real algebra: a linear involution
    assert mu.matrix == mat([[-1, 0, 0], [0, 1, 0], [0, 0, -1]])


def test_ad_diag_involution():
    su2c = make_su(2).complexify()
    adg = ad_conjugation_automorphism(su2c, mat([[1, 0], [0, -1]]))
    assert adg.order == 2
    assert adg.matrix == mat([[1, 0, 0], [0, -1, 0], [0, 0, -1]])


def test_identity_order_one():
    ident = identity_automorphism(make_su(2))
    assert ident.order == 1
    check_automorphism(make_su(2), ident)


def test_not_automorphism_rejected():
    su2 = make_su(2)
    bogus = FiniteAutomorphism(su2, mat([[1, 1, 0], [0, 1, 0], [0, 0, 1]]), order=1)
    with pytest.raises(findim.NotAutomorphismError):
        check_automorphism(su2, bogus)


def test_wrong_order_rejected():
    su2 = make_su(2)
    mu = entrywise_conjugation_automorphism(su2)
    wrong = FiniteAutomorphism(su2, mu.matrix, order=3)
    with pytest.raises(findim.WrongOrderError):
        check_automorphism(su2, wrong)


def test_killing_invariance_under_automorphisms():
    su2c = make_su(2).complexify()
    adg = ad_conjugation_automorphism(su2c, mat([[1, 0], [0, -1]]))
    muc = entrywise_conjugation_automorphism(su2c)
    assert muc.conjugate_linear
    rng = TrialRng("killing-invariance")
    for _ in range(15):
        x = tuple(rng.scalar() for _ in range(3))
        y = tuple(rng.scalar() for _ in range(3))
        b = su2c.killing(x, y)
        assert su2c.killing(adg.apply(x), adg.apply(y)) == b
        # conjugate-linear automorphisms conjugate the value
        assert su2c.killing(muc.apply(x), muc.apply(y)) == b.conjugate()
