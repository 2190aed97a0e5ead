"""Involutions, real forms, Cartan decompositions and duality for the
extended twisted loop algebras.

A coefficient map (Phi a)_k = i^{p k} M conj^delta(a_{s k}) captures every
map this module needs: involutions in standard form f(t) -> rho(f(eps t)),
real-structure conjugations, and their compositions. Real forms are fixed
sets of conjugate-linear coefficient maps together with a reality line for
c and d; Cartan decompositions are exact +-1 eigenspace splits on
truncations; duality K + P -> K + iP is composition of descriptors.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from . import linalg
from .findim import FiniteAutomorphism, FiniteLieAlgebra, check_automorphism, mat_conj, mat_mul
from .kmext import ExtendedElement, hat_bracket
from .loop import TwistedLoopElement, check_twist, zero_loop
from .scalars import I, ONE, Scalar, ZERO, i_power


class InvolutionError(ValueError):
    pass


class PreservationError(InvolutionError):
    """Map does not preserve the real form it was asked to act on."""


# -- coefficient maps -----------------------------------------------------

class CoeffMap:
    """(Phi a)_k = i^{parity*k} * matrix . conj^conjugate(a_{index_sign*k})."""

    __slots__ = ("matrix", "index_sign", "conjugate", "parity")

    def __init__(self, matrix, index_sign=1, conjugate=False, parity=0):
        self.matrix = tuple(
            tuple(x if isinstance(x, Scalar) else Scalar(x) for x in row) for row in matrix
        )
        if index_sign not in (1, -1):
            raise InvolutionError("index_sign must be +-1")
        self.index_sign = index_sign
        self.conjugate = bool(conjugate)
        self.parity = parity % 4

    @classmethod
    def identity(cls, dim):
        return cls([[ONE if i == j else ZERO for j in range(dim)] for i in range(dim)])

    def apply_vec(self, vec, k=0):
        if self.conjugate:
            vec = tuple(c.conjugate() for c in vec)
        m = self.matrix
        out = tuple(
            sum((m[i][j] * vec[j] for j in range(len(vec)) if vec[j]), ZERO)
            for i in range(len(m))
        )
        if self.parity:
            f = i_power(self.parity * k)
            if f != ONE:
                out = tuple(f * x for x in out)
        return out

    def apply_loop(self, f: TwistedLoopElement) -> TwistedLoopElement:
        s = self.index_sign
        terms = {}
        for j, vec in f.terms.items():
            k = s * j  # source degree j contributes to target degree s*j
            terms[k] = self.apply_vec(vec, k)
        return TwistedLoopElement(f.algebra, f.twist, terms, validate=False)

    def compose(self, other: "CoeffMap") -> "CoeffMap":
        """self after other, as one coefficient map."""
        s1, s2 = self.index_sign, other.index_sign
        d1 = self.conjugate
        m2 = mat_conj(other.matrix) if d1 else other.matrix
        matrix = mat_mul(self.matrix, m2)
        parity = (self.parity + other.parity * s1 * (-1 if d1 else 1)) % 4
        return CoeffMap(matrix, s1 * s2, d1 != other.conjugate, parity)

    def __eq__(self, other):
        if not isinstance(other, CoeffMap):
            return NotImplemented
        return (
            self.matrix == other.matrix
            and self.index_sign == other.index_sign
            and self.conjugate == other.conjugate
            and self.parity == other.parity
        )

    def __hash__(self):
        return hash((self.matrix, self.index_sign, self.conjugate, self.parity))

    def is_identity(self):
        n = len(self.matrix)
        return (
            self.index_sign == 1
            and not self.conjugate
            and self.parity == 0
            and all(self.matrix[i][j] == (ONE if i == j else ZERO) for i in range(n) for j in range(n))
        )

    def __repr__(self):
        return (
            f"CoeffMap(s={self.index_sign}, conj={self.conjugate}, parity={self.parity})"
        )


# -- involutions -----------------------------------------------------------

class InvolutionKind(Enum):
    FIRST = "FirstKind"
    SECOND = "SecondKind"


class Admissibility(Enum):
    ADMISSIBLE = "Admissible"
    LOCALLY_ADMISSIBLE_ONLY = "LocallyAdmissibleOnly"


@dataclass(frozen=True, eq=False)
class InvolutionDescriptor:
    """Standard-form involution: loop coefficients via a CoeffMap, c and d
    scaled by epsilon (with gamma-shift of d into c kept at 0)."""

    name: str
    loop_map: CoeffMap
    epsilon: int
    reflect_time: bool
    gamma: Scalar = ZERO
    finite_part: FiniteAutomorphism | None = None
    invariant_pair: tuple | None = None  # (rho_plus, rho_minus) real automorphisms

    def __post_init__(self):
        if self.epsilon not in (1, -1):
            raise InvolutionError("epsilon must be +-1")
        if self.reflect_time and self.epsilon != -1:
            raise InvolutionError("time reflection forces epsilon = -1")

    @property
    def conjugate_linear(self):
        return self.loop_map.conjugate

    def apply(self, x: ExtendedElement) -> ExtendedElement:
        c = x.c.conjugate() if self.conjugate_linear else x.c
        d = x.d.conjugate() if self.conjugate_linear else x.d
        eps = Scalar(self.epsilon)
        return ExtendedElement(
            self.loop_map.apply_loop(x.loop),
            eps * c + self.gamma * d,
            eps * d,
        )

    def kind(self) -> InvolutionKind:
        return InvolutionKind.SECOND if self.epsilon == -1 else InvolutionKind.FIRST


def check_kind(phi: InvolutionDescriptor) -> InvolutionKind:
    return phi.kind()


def admissibility_check(per_factor) -> Admissibility:
    """Factorwise involutions extend to one involution of the whole extension
    iff their epsilon values agree."""
    eps = {phi.epsilon for phi in per_factor}
    return Admissibility.ADMISSIBLE if len(eps) <= 1 else Admissibility.LOCALLY_ADMISSIBLE_ONLY


def involution_from_invariants(rho_plus: FiniteAutomorphism, rho_minus: FiniteAutomorphism,
                               name=None):
    """Second-kind involution f(t) -> rho_plus(f(-t)) on the loop algebra
    twisted by sigma = rho_minus . rho_plus.

    rho_plus and rho_minus are involutive automorphisms (or the identity) of
    the underlying real algebra; the twist order is the order of sigma and
    must be 1 or 2. Returns (descriptor, complexified algebra, twist).
    """
    g = rho_plus.algebra
    if rho_minus.algebra is not g:
        raise InvolutionError("the two invariants act on different algebras")
    for rho in (rho_plus, rho_minus):
        if rho.conjugate_linear:
            raise InvolutionError("invariants are automorphisms of the real algebra")
        if rho.order not in (1, 2):
            raise InvolutionError("invariants must be involutive or the identity")
        check_automorphism(g, rho)
    sigma_mat = mat_mul(rho_minus.matrix, rho_plus.matrix)
    gc = g.complexify()
    sigma = FiniteAutomorphism(gc, sigma_mat, conjugate_linear=False)
    power = sigma
    order = None
    for k in range(1, 3):
        if power.is_identity():
            order = k
            break
        power = sigma.compose(power)
    if order is None:
        raise InvolutionError("sigma = rho_minus . rho_plus has order > 2 (out of scope)")
    sigma.order = order
    check_automorphism(gc, sigma)
    desc = InvolutionDescriptor(
        name=name or "second-kind involution",
        loop_map=CoeffMap(rho_plus.matrix, index_sign=-1),
        epsilon=-1,
        reflect_time=True,
        finite_part=FiniteAutomorphism(gc, rho_plus.matrix, order=rho_plus.order),
        invariant_pair=(rho_plus, rho_minus),
    )
    return desc, gc, sigma


def apply_involution(phi: InvolutionDescriptor, x: ExtendedElement) -> ExtendedElement:
    return phi.apply(x)


# -- real forms --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RealFormDescriptor:
    """Real subalgebra of the extended complex loop algebra, carved out by a
    conjugate-linear coefficient involution (the loop part is its fixed set)
    plus a reality line scale * R for each of c and d (scale 1 or i).

    conj=None together with cd_scale=None designates the whole complex
    algebra viewed as a real algebra (used by the non-example with the
    compact conjugation).
    """

    name: str
    algebra: FiniteLieAlgebra
    twist: FiniteAutomorphism
    conj: CoeffMap | None
    cd_scale: Scalar | None = ONE

    def __post_init__(self):
        check_twist(self.algebra, self.twist)
        if self.conj is not None and not self.conj.conjugate:
            raise InvolutionError("a real structure must be conjugate-linear")
        if self.cd_scale is not None and self.cd_scale not in (ONE, I):
            raise InvolutionError("cd_scale must be 1 or i")

    # -- membership ------------------------------------------------------
    def contains_loop(self, f: TwistedLoopElement) -> bool:
        if f.algebra is not self.algebra or f.twist != self.twist:
            return False
        if self.conj is None:
            return True
        return self.conj.apply_loop(f) == f

    def contains(self, x: ExtendedElement) -> bool:
        if not self.contains_loop(x.loop):
            return False
        if self.cd_scale is None:
            return True
        for coeff in (x.c, x.d):
            if (coeff / self.cd_scale).im:
                return False
        return True

    # -- truncated bases ---------------------------------------------------
    def degree_grid(self, n_max: int):
        return range(-n_max, n_max + 1)

    def block_keys(self, n_max: int):
        keys = [(0,)]
        keys.extend((k, -k) for k in range(1, n_max + 1))
        keys.append(("cd",))
        return keys

    def block_basis(self, key):
        """Exact real basis of one degree block (or of the c,d lines)."""
        if key == ("cd",):
            out = []
            scales = (self.cd_scale,) if self.cd_scale is not None else (ONE, I)
            for scale in scales:
                out.append(ExtendedElement(zero_loop(self.algebra, self.twist), c=scale))
                out.append(ExtendedElement(zero_loop(self.algebra, self.twist), d=scale))
            return out
        degrees = tuple(key)
        dim = self.algebra.dim
        # unknowns: real and imaginary parts of the coords at each degree
        nvar = 2 * dim * len(degrees)
        pos = {k: i for i, k in enumerate(degrees)}
        rows = []

        def add_complex_rows(coeff_rows):
            # coeff_rows: list of (degree, jcoord, Scalar multiplier) equations == 0
            re_row = [Fraction(0)] * nvar
            im_row = [Fraction(0)] * nvar
            for deg, j, mult in coeff_rows:
                base = 2 * dim * pos[deg]
                re_row[base + j] += mult.re
                re_row[base + dim + j] += -mult.im
                im_row[base + j] += mult.im
                im_row[base + dim + j] += mult.re
            if any(re_row):
                rows.append(re_row)
            if any(im_row):
                rows.append(im_row)

        # grading constraints: (sigma - (-1)^k) a_k = 0
        if self.twist.order == 2:
            for k in degrees:
                sign = Scalar(1 if k % 2 == 0 else -1)
                for i in range(dim):
                    eq = [(k, j, self.twist.matrix[i][j]) for j in range(dim)]
                    eq.append((k, i, -sign))
                    add_complex_rows([(d, j, m) for d, j, m in eq if m])
        # real-structure constraints: (conj a)_k = a_k
        if self.conj is not None:
            s = self.conj.index_sign
            for k in degrees:
                src = s * k
                if src not in pos:
                    raise InvolutionError("block is not closed under the real structure")
                f = i_power(self.conj.parity * k)
                for i in range(dim):
                    # i^{pk} M conj(a_src) - a_k = 0 componentwise; conj of the
                    # source splits re/im with a sign, handled by writing the
                    # equation on (re, im) directly.
                    re_row = [Fraction(0)] * nvar
                    im_row = [Fraction(0)] * nvar
                    base_s = 2 * dim * pos[src]
                    for j in range(dim):
                        m = f * self.conj.matrix[i][j]
                        if not m:
                            continue
                        # m * conj(a_src_j): re += m.re*re_j + m.im*im_j
                        #                    im += m.im*re_j - m.re*im_j
                        re_row[base_s + j] += m.re
                        re_row[base_s + dim + j] += m.im
                        im_row[base_s + j] += m.im
                        im_row[base_s + dim + j] += -m.re
                    base_k = 2 * dim * pos[k]
                    re_row[base_k + i] += -1
                    im_row[base_k + dim + i] += -1
                    if any(re_row):
                        rows.append(re_row)
                    if any(im_row):
                        rows.append(im_row)
        null = linalg.nullspace(rows) if rows else [
            [Fraction(1) if t == s_ else Fraction(0) for t in range(nvar)] for s_ in range(nvar)
        ]
        out = []
        for v in null:
            terms = {}
            for k in degrees:
                base = 2 * dim * pos[k]
                vec = tuple(Scalar(v[base + j], v[base + dim + j]) for j in range(dim))
                if any(vec):
                    terms[k] = vec
            out.append(ExtendedElement(TwistedLoopElement(self.algebra, self.twist, terms)))
        return out

    def basis(self, n_max: int):
        """All block bases up to degree n_max, as (key, elements) pairs."""
        return [(key, self.block_basis(key)) for key in self.block_keys(n_max)]

    def loop_basis(self, n_max: int):
        out = []
        for key, elems in self.basis(n_max):
            if key != ("cd",):
                out.extend(e.loop for e in elems)
        return out

    def dimension(self, n_max: int) -> int:
        return sum(len(elems) for _, elems in self.basis(n_max))

    # -- closure -----------------------------------------------------------
    def verify_closed(self, n_max: int) -> bool:
        """Brackets of truncated basis elements stay in the form (membership
        is degree-unbounded, so no truncation artifacts)."""
        flat = [e for _, elems in self.basis(n_max) for e in elems]
        for i, x in enumerate(flat):
            for y in flat[i:]:
                if not self.contains(hat_bracket(x, y)):
                    return False
        return True


def real_form_membership(rf: RealFormDescriptor, x: ExtendedElement) -> bool:
    return rf.contains(x)


# -- eigenspace split ---------------------------------------------------------

@dataclass
class EigenBlock:
    key: tuple
    k_basis: list
    p_basis: list


@dataclass
class CartanDecomposition:
    real_form: RealFormDescriptor
    involution: InvolutionDescriptor
    n_max: int
    blocks: list

    @property
    def k_basis(self):
        return [e for b in self.blocks for e in b.k_basis]

    @property
    def p_basis(self):
        return [e for b in self.blocks for e in b.p_basis]

    def dims(self):
        return {b.key: (len(b.k_basis), len(b.p_basis)) for b in self.blocks}

    def loop_parts(self, side):
        elems = self.k_basis if side == "K" else self.p_basis
        return [e.loop for e in elems if not e.loop.is_zero()]


def _flatten_extended(x: ExtendedElement, degrees, dim):
    out = []
    for k in degrees:
        vec = x.loop.terms.get(k, (ZERO,) * dim)
        out.extend(linalg.real_flatten(vec))
    out.extend([x.c.re, x.c.im, x.d.re, x.d.im])
    return out


def _combine(elements, coeffs):
    total = None
    for c, e in zip(coeffs, elements):
        if not c:
            continue
        part = e.scale(Scalar(c))
        total = part if total is None else total + part
    if total is None:
        alg, tw = elements[0].loop.algebra, elements[0].loop.twist
        total = ExtendedElement(zero_loop(alg, tw))
    return total


def express_in_basis(x: ExtendedElement, basis, degrees):
    """Real coefficients of x in a basis of extended elements, or None.

    Degrees outside the window make x inexpressible by definition.
    """
    window = set(degrees)
    if any(k not in window for k in x.loop.terms):
        return None
    if not basis:
        return [] if x.is_zero() else None
    dim = basis[0].loop.algebra.dim
    flat_basis = [_flatten_extended(b, degrees, dim) for b in basis]
    target = _flatten_extended(x, degrees, dim)
    return linalg.coords_in_span(flat_basis, target)


def fixed_and_eigenspaces(phi: InvolutionDescriptor, rf: RealFormDescriptor,
                          n_max: int) -> CartanDecomposition:
    """Exact +1/-1 eigenspace bases of phi on the degree-<=n_max truncation
    of the real form; phi must preserve the form."""
    blocks = []
    for key, elems in rf.basis(n_max):
        if not elems:
            blocks.append(EigenBlock(key, [], []))
            continue
        degrees = [0] if key == ("cd",) else sorted(set(key))
        images = []
        for e in elems:
            img = phi.apply(e)
            if not rf.contains(img):
                raise PreservationError(
                    f"{phi.name} does not preserve real form {rf.name} on block {key}"
                )
            images.append(img)
        coeff_rows = []
        for img in images:
            coords = express_in_basis(img, elems, degrees)
            if coords is None:
                raise PreservationError(
                    f"image under {phi.name} left the {key} block of {rf.name}"
                )
            coeff_rows.append(coords)
        n = len(elems)
        # matrix of phi on the block: columns are images
        m = [[coeff_rows[j][i] for j in range(n)] for i in range(n)]
        k_vecs = linalg.nullspace([[m[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)])
        p_vecs = linalg.nullspace([[m[i][j] + (1 if i == j else 0) for j in range(n)] for i in range(n)])
        if len(k_vecs) + len(p_vecs) != n:
            raise InvolutionError(f"{phi.name} does not square to the identity on block {key}")
        k_basis = [_combine(elems, v) for v in k_vecs]
        p_basis = [_combine(elems, v) for v in p_vecs]
        blocks.append(EigenBlock(key, k_basis, p_basis))
    return CartanDecomposition(rf, phi, n_max, blocks)


def verify_cartan_relations(dec: CartanDecomposition) -> bool:
    """[K,K] in K, [K,P] in P, [P,P] in K, exactly on the truncation.

    Brackets raise degree, so membership is tested intrinsically: the
    bracket must stay in the real form and must be an exact +-1 eigenvector
    of the involution (K for +1, P for -1).
    """
    rf, phi = dec.real_form, dec.involution
    for left, right, sign in (
        (dec.k_basis, dec.k_basis, 1),
        (dec.k_basis, dec.p_basis, -1),
        (dec.p_basis, dec.p_basis, 1),
    ):
        for x in left:
            for y in right:
                z = hat_bracket(x, y)
                if z.is_zero():
                    continue
                if not rf.contains(z):
                    return False
                want = z if sign == 1 else -z
                if phi.apply(z) != want:
                    return False
    return True


# -- duality -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DualForm:
    real_form: RealFormDescriptor
    involution: InvolutionDescriptor


def _c_linear_on_form(phi_map: CoeffMap, theta: CoeffMap) -> CoeffMap:
    """The linear coefficient map agreeing with phi_map on the fixed set of
    theta (compose with theta when phi_map is conjugate-linear)."""
    return phi_map.compose(theta) if phi_map.conjugate else phi_map


def _canonical_scale(s: Scalar) -> Scalar:
    """Scale for a real line through the origin: normalize modulo sign."""
    if s.im and not s.re:
        return I
    if s.re and not s.im:
        return ONE
    raise InvolutionError("cd reality lines must be real or imaginary")


def dualize(dec: CartanDecomposition, name=None) -> DualForm:
    """K + P -> K + iP with the dual involution k + ip -> k - ip.

    The dual form's conjugation is (linear extension of phi) . theta; the
    dual involution is the linear-on-the-dual-form extension of theta. The
    dual form is re-verified to be bracket-closed on the truncation.
    """
    rf, phi = dec.real_form, dec.involution
    if rf.conj is None:
        raise InvolutionError("cannot dualize the full complex algebra")
    theta = rf.conj
    phi_lin = _c_linear_on_form(phi.loop_map, theta)
    theta_star = phi_lin.compose(theta)
    if phi.epsilon == -1:
        scale = _canonical_scale(I * (rf.cd_scale if rf.cd_scale is not None else ONE))
    else:
        scale = rf.cd_scale
    dual_rf = RealFormDescriptor(
        name=name or rf.name + "*",
        algebra=rf.algebra,
        twist=rf.twist,
        conj=theta_star,
        cd_scale=scale,
    )
    rho_star = InvolutionDescriptor(
        name=phi.name + "*",
        loop_map=theta.compose(theta_star),
        epsilon=-1,
        reflect_time=True,
    )
    if not dual_rf.verify_closed(max(1, dec.n_max)):
        raise InvolutionError("dual form is not closed under the bracket")
    return DualForm(dual_rf, rho_star)
