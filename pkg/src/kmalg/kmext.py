"""The two-dimensional extension of a twisted loop algebra by a central
element c and a derivation d.

Extended elements are triples (loop, c, d). The bracket is

    [(f, rc, rd), (g, sc, sd)] = ([f,g]_pointwise + rd g' - sd f',
                                  omega(f, g), 0)

with the integral cocycle omega(f,g) = (1/2pi) int <f, g'> dt, <,> the
finite Killing form. The z-residue form of the cocycle differs from the
integral form by a factor of i (d/dt = i z d/dz); both are exposed and the
integral form is the one used by the bracket.
"""
from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from . import linalg
from .loop import (
    MismatchError,
    TwistedLoopElement,
    loop_bracket,
    loop_derivative,
    zero_loop,
)
from .scalars import I, Scalar, ZERO


class ExtendedElement:
    """loop part + c coefficient + d coefficient."""

    __slots__ = ("loop", "c", "d")

    def __init__(self, loop: TwistedLoopElement, c=ZERO, d=ZERO):
        self.loop = loop
        self.c = c if isinstance(c, Scalar) else Scalar(c)
        self.d = d if isinstance(d, Scalar) else Scalar(d)

    def __add__(self, other):
        return ExtendedElement(self.loop + other.loop, self.c + other.c, self.d + other.d)

    def __sub__(self, other):
        return ExtendedElement(self.loop - other.loop, self.c - other.c, self.d - other.d)

    def __neg__(self):
        return ExtendedElement(-self.loop, -self.c, -self.d)

    def scale(self, s):
        s = s if isinstance(s, Scalar) else Scalar(s)
        return ExtendedElement(self.loop.scale(s), s * self.c, s * self.d)

    def __eq__(self, other):
        if not isinstance(other, ExtendedElement):
            return NotImplemented
        return self.loop == other.loop and self.c == other.c and self.d == other.d

    def __hash__(self):
        return hash((self.loop, self.c, self.d))

    def is_zero(self):
        return self.loop.is_zero() and not self.c and not self.d

    def __repr__(self):
        return f"ExtendedElement({self.loop!r}, c={self.c}, d={self.d})"


def extended_zero(algebra, twist) -> ExtendedElement:
    return ExtendedElement(zero_loop(algebra, twist))


def central_element(algebra, twist, value=1) -> ExtendedElement:
    return ExtendedElement(zero_loop(algebra, twist), c=value)


def derivation_element(algebra, twist, value=1) -> ExtendedElement:
    return ExtendedElement(zero_loop(algebra, twist), d=value)


# -- cocycle --------------------------------------------------------------

def cocycle(f: TwistedLoopElement, g: TwistedLoopElement) -> Scalar:
    """(1/2pi) int <f, g'> dt = -(i/m) sum_k k B(a_k, b_{-k}). Antisymmetric."""
    f._require_match(g)
    alg = f.algebra
    m = f.twist.order
    total = ZERO
    for k, ak in f.terms.items():
        bmk = g.terms.get(-k)
        if bmk is not None and k:
            total = total + Scalar(0, Fraction(-k, m)) * alg.killing(ak, bmk)
    return total


class ResidueCocycle(NamedTuple):
    value: Scalar
    integral_factor: Scalar  # integral form = integral_factor * residue form


INTEGRAL_OVER_RESIDUE = I


def residue_cocycle(f: TwistedLoopElement, g: TwistedLoopElement) -> ResidueCocycle:
    """Res_z <f, dg/dz> = sum_k (-k) B(a_k, b_{-k}) for untwisted z-Laurent
    loops, along with the factor i converting to the integral convention."""
    f._require_match(g)
    if f.twist.order != 1:
        raise MismatchError("the residue form is defined for untwisted loops")
    alg = f.algebra
    total = ZERO
    for k, ak in f.terms.items():
        bmk = g.terms.get(-k)
        if bmk is not None and k:
            total = total + Scalar(-k) * alg.killing(ak, bmk)
    return ResidueCocycle(total, INTEGRAL_OVER_RESIDUE)


# -- bracket --------------------------------------------------------------

def hat_bracket(x: ExtendedElement, y: ExtendedElement) -> ExtendedElement:
    """Bracket of the extended algebra; c is central, d acts by d/dt."""
    f, g = x.loop, y.loop
    f._require_match(g)
    loop_part = loop_bracket(f, g)
    if x.d:
        loop_part = loop_part + loop_derivative(g).scale(x.d)
    if y.d:
        loop_part = loop_part - loop_derivative(f).scale(y.d)
    return ExtendedElement(loop_part, cocycle(f, g), ZERO)


def jacobi_residual(x: ExtendedElement, y: ExtendedElement, z: ExtendedElement) -> ExtendedElement:
    """[[x,y],z] + [[y,z],x] + [[z,x],y]; contract: exactly zero."""
    return (
        hat_bracket(hat_bracket(x, y), z)
        + hat_bracket(hat_bracket(y, z), x)
        + hat_bracket(hat_bracket(z, x), y)
    )


def in_derived_algebra(x: ExtendedElement) -> bool:
    """The derived algebra is the loop algebra plus the center: d-free."""
    return not x.d


# -- ideals ----------------------------------------------------------------

class GradedSubspace:
    """Coefficient-block/degree-pattern subspace description.

    Membership: loop coefficients supported on the given ideal blocks (and
    inside the degree range when one is given), c component allowed iff
    include_c, d component allowed iff include_d.
    """

    def __init__(self, algebra, block_ids, include_c=False, include_d=False, degree_range=None):
        self.algebra = algebra
        self.block_ids = tuple(block_ids)
        self.include_c = include_c
        self.include_d = include_d
        self.degree_range = degree_range
        allowed = set()
        for b in block_ids:
            allowed.update(algebra.blocks[b].indices)
        self._allowed = allowed

    def contains(self, x: ExtendedElement) -> bool:
        if x.c and not self.include_c:
            return False
        if x.d and not self.include_d:
            return False
        for k, vec in x.loop.terms.items():
            if self.degree_range is not None:
                lo, hi = self.degree_range
                if not lo <= k <= hi:
                    return False
            for i, coeff in enumerate(vec):
                if coeff and i not in self._allowed:
                    return False
        return True


def is_ideal(generators, ambient_sample, description: GradedSubspace) -> bool:
    """Do brackets of the generators with ambient elements stay inside the
    described subspace? Generators must satisfy the description themselves."""
    for gen in generators:
        if not description.contains(gen):
            raise ValueError("a generator lies outside the described subspace")
    for gen in generators:
        for amb in ambient_sample:
            if not description.contains(hat_bracket(gen, amb)):
                return False
            if not description.contains(hat_bracket(amb, gen)):
                return False
    return True


# -- splitting homomorphism -------------------------------------------------

class SplittingHom:
    """phi: (+)_i derived algebras of the factors -> derived algebra of the sum.

    Loops embed blockwise; the c coefficients add up. The kernel is the
    hyperplane of pure-c tuples summing to zero, of dimension (#factors - 1).
    """

    def __init__(self, factors, target_algebra, target_twist):
        # factors: list of (algebra_i, twist_i); target blocks must line up
        self.factors = list(factors)
        self.target_algebra = target_algebra
        self.target_twist = target_twist
        blocks = target_algebra.blocks
        if len(blocks) != len(self.factors):
            raise MismatchError("factor count does not match target ideal blocks")
        offset = 0
        self._offsets = []
        for (alg, _twist), blk in zip(self.factors, blocks):
            if alg.dim != len(blk.indices):
                raise MismatchError("factor dimension does not match target block")
            if tuple(blk.indices) != tuple(range(offset, offset + alg.dim)):
                raise MismatchError("target blocks must be contiguous and ordered")
            self._offsets.append(offset)
            offset += alg.dim

    def apply(self, parts) -> ExtendedElement:
        """parts: one (loop, c) ExtendedElement per factor (d must be 0)."""
        if len(parts) != len(self.factors):
            raise MismatchError("wrong number of factor elements")
        terms = {}
        c_total = ZERO
        for part, off, (alg, twist) in zip(parts, self._offsets, self.factors):
            if part.d:
                raise MismatchError("factor elements live in derived algebras: d = 0")
            if part.loop.algebra is not alg or part.loop.twist != twist:
                raise MismatchError("factor element over the wrong algebra or twist")
            for k, vec in part.loop.terms.items():
                row = terms.setdefault(k, [ZERO] * self.target_algebra.dim)
                for i, val in enumerate(vec):
                    row[off + i] = row[off + i] + val
            c_total = c_total + part.c
        loop = TwistedLoopElement(
            self.target_algebra, self.target_twist, {k: tuple(v) for k, v in terms.items()}
        )
        return ExtendedElement(loop, c_total, ZERO)

    def kernel_dimension(self) -> int:
        """Rank-verified dimension of the kernel: tuples of pure-c elements
        with vanishing coefficient sum."""
        n = len(self.factors)
        rows = [[Fraction(1)] * n]
        return len(linalg.nullspace(rows))

    def bracket_in_factors(self, xs, ys):
        """Componentwise derived-algebra bracket of two factor tuples."""
        return [hat_bracket(x, y) for x, y in zip(xs, ys)]

    def is_homomorphism_on(self, pairs) -> bool:
        """Exact check of phi[x, y] = [phi x, phi y] on supplied tuples."""
        for xs, ys in pairs:
            lhs = self.apply(self.bracket_in_factors(xs, ys))
            rhs = hat_bracket(self.apply(xs), self.apply(ys))
            if lhs != rhs:
                return False
        return True


def splitting_hom(factors, target_algebra, target_twist) -> SplittingHom:
    return SplittingHom(factors, target_algebra, target_twist)
