"""Twisted loop algebras over algebraic loops.

Elements are finite expansions sum_k a_k e^{i k t / m} with coefficients in a
complexified finite Lie algebra and twist automorphism sigma of order
m in {1, 2}; the grading invariant sigma(a_k) = (-1)^k a_k is enforced at
construction. The pointwise bracket becomes coefficient convolution, the
derivative multiplies by i k / m, and the loop Killing form is the constant
Fourier coefficient of the pointwise Killing pairing (normalized by 1/2pi).
"""
from __future__ import annotations

from enum import Enum
from fractions import Fraction

from . import linalg
from .findim import FiniteAutomorphism, FiniteLieAlgebra, identity_automorphism
from .scalars import Scalar, ZERO


class LoopError(ValueError):
    pass


class GradingError(LoopError):
    pass


class MismatchError(LoopError):
    """Operands over different algebras or twists."""


class NonRealPairingError(LoopError):
    """A Killing Gram entry came out non-real on a claimed real basis."""


def check_twist(algebra: FiniteLieAlgebra, twist: FiniteAutomorphism):
    if twist.algebra is not algebra:
        raise MismatchError("twist is defined on a different algebra")
    if twist.conjugate_linear:
        raise LoopError("twists must be linear automorphisms")
    if twist.order not in (1, 2):
        raise LoopError("only twist orders 1 and 2 are supported")


class TwistedLoopElement:
    """Finite map from integer exponent k (frequency k/m) to a coefficient
    coordinate vector; no zero coefficients are stored."""

    __slots__ = ("algebra", "twist", "terms")

    def __init__(self, algebra, twist, terms, validate=True):
        self.algebra = algebra
        self.twist = twist
        clean = {}
        for k, vec in terms.items():
            vec = tuple(vec)
            if any(vec):
                clean[int(k)] = vec
        self.terms = clean
        if validate:
            check_twist(algebra, twist)
            if twist.order == 2:
                for k, vec in clean.items():
                    img = twist.apply(vec)
                    want = vec if k % 2 == 0 else tuple(-c for c in vec)
                    if img != want:
                        raise GradingError(
                            f"coefficient at exponent {k} is not in the required twist eigenspace"
                        )

    # -- vector-space structure ----------------------------------------
    def _like(self, terms):
        return TwistedLoopElement(self.algebra, self.twist, terms, validate=False)

    def __add__(self, other):
        self._require_match(other)
        terms = dict(self.terms)
        for k, vec in other.terms.items():
            if k in terms:
                terms[k] = tuple(a + b for a, b in zip(terms[k], vec))
            else:
                terms[k] = vec
        return self._like(terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._like({k: tuple(-c for c in v) for k, v in self.terms.items()})

    def scale(self, c):
        c = c if isinstance(c, Scalar) else Scalar(c)
        if not c:
            return self._like({})
        return self._like({k: tuple(c * x for x in v) for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, TwistedLoopElement):
            return NotImplemented
        return (
            self.algebra is other.algebra
            and self.twist == other.twist
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((id(self.algebra), frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def support(self):
        return sorted(self.terms)

    def coeff(self, k):
        return self.terms.get(k, self.algebra.zero_coords())

    def max_abs_degree(self):
        return max((abs(k) for k in self.terms), default=0)

    def _require_match(self, other):
        if self.algebra is not other.algebra or self.twist != other.twist:
            raise MismatchError("loop elements live over different algebras or twists")

    def __repr__(self):
        return f"TwistedLoopElement({self.algebra.name}, m={self.twist.order}, support={self.support()})"


def zero_loop(algebra, twist) -> TwistedLoopElement:
    return TwistedLoopElement(algebra, twist, {})


def loop_monomial(algebra, twist, k, coords) -> TwistedLoopElement:
    """coords * e^{i k t / m}; grading is validated."""
    return TwistedLoopElement(algebra, twist, {k: tuple(coords)})


def untwisted(algebra) -> FiniteAutomorphism:
    return identity_automorphism(algebra)


# -- operations ----------------------------------------------------------

def loop_bracket(f: TwistedLoopElement, g: TwistedLoopElement) -> TwistedLoopElement:
    """Pointwise bracket: coefficient convolution [f,g]_k = sum [a_p, b_q]."""
    f._require_match(g)
    alg = f.algebra
    out = {}
    for p, ap in f.terms.items():
        for q, bq in g.terms.items():
            val = alg.bracket(ap, bq)
            if any(val):
                k = p + q
                if k in out:
                    out[k] = tuple(a + b for a, b in zip(out[k], val))
                else:
                    out[k] = val
    return TwistedLoopElement(alg, f.twist, out, validate=False)


def loop_derivative(f: TwistedLoopElement) -> TwistedLoopElement:
    """d/dt of sum a_k e^{ikt/m}: multiplies a_k by i k / m."""
    m = f.twist.order
    out = {}
    for k, vec in f.terms.items():
        if k:
            factor = Scalar(0, Fraction(k, m))
            out[k] = tuple(factor * c for c in vec)
    return TwistedLoopElement(f.algebra, f.twist, out, validate=False)


def loop_killing(f: TwistedLoopElement, g: TwistedLoopElement) -> Scalar:
    """(1/2pi) integral of B(f(t), g(t)): the constant Fourier coefficient,
    sum_k B(a_k, b_{-k}). Exact."""
    f._require_match(g)
    alg = f.algebra
    total = ZERO
    for k, ak in f.terms.items():
        bmk = g.terms.get(-k)
        if bmk is not None:
            total = total + alg.killing(ak, bmk)
    return total


class Definiteness(Enum):
    NEG_DEFINITE = "NegDefinite"
    POS_DEFINITE = "PosDefinite"
    INDEFINITE = "Indefinite"
    DEGENERATE = "Degenerate"


def killing_gram(basis, real_form=None):
    """Exact Gram matrix of loop_killing on a list of loop elements, plus a
    definiteness verdict from the exact signature.

    Entries must come out real; a non-real value means the basis does not
    span a real subspace and raises NonRealPairingError. When a real-form
    descriptor is supplied, membership of every basis element is checked
    first. Degenerate (nonzero radical) takes precedence in the verdict.
    """
    if real_form is not None:
        for b in basis:
            if not real_form.contains_loop(b):
                raise NonRealPairingError(
                    "basis element is not a member of the supplied real form"
                )
    n = len(basis)
    gram = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = loop_killing(basis[i], basis[j])
            if not v.is_real():
                raise NonRealPairingError(f"pairing ({i},{j}) has value {v}")
            gram[i][j] = v.re
            gram[j][i] = v.re
    if n == 0:
        return gram, Definiteness.NEG_DEFINITE
    pos, neg, zero = linalg.symmetric_signature(gram)
    if zero:
        verdict = Definiteness.DEGENERATE
    elif pos == n:
        verdict = Definiteness.POS_DEFINITE
    elif neg == n:
        verdict = Definiteness.NEG_DEFINITE
    else:
        verdict = Definiteness.INDEFINITE
    return gram, verdict


_EIGENBASIS_CACHE = {}


def twist_eigenbasis(algebra, twist, parity):
    """Coordinate basis of the twist eigenspace with eigenvalue (-1)^parity."""
    key = (id(algebra), twist, parity % 2)
    if key not in _EIGENBASIS_CACHE:
        _EIGENBASIS_CACHE[key] = _twist_eigenbasis(algebra, twist, parity)
    return _EIGENBASIS_CACHE[key]


def _twist_eigenbasis(algebra, twist, parity):
    if twist.order == 1:
        if parity % 2:
            return []
        return [
            tuple(Scalar(1) if i == j else ZERO for i in range(algebra.dim))
            for j in range(algebra.dim)
        ]
    sign = Scalar(1) if parity % 2 == 0 else Scalar(-1)
    rows = [
        [twist.matrix[i][j] - (sign if i == j else ZERO) for j in range(algebra.dim)]
        for i in range(algebra.dim)
    ]
    rows = [row for row in rows if any(row)]
    if not rows:
        return [
            tuple(Scalar(1) if i == j else ZERO for i in range(algebra.dim))
            for j in range(algebra.dim)
        ]
    return [tuple(v) for v in linalg.nullspace(rows)]
