"""Deterministic splittable randomness for property trials.

Each trial draws from a SHA-256 counter stream keyed by (seed, trial index),
so parallel and serial runs produce identical elements and reports are
byte-reproducible across platforms.
"""
from __future__ import annotations

import hashlib
from fractions import Fraction

from .kmext import ExtendedElement
from .loop import TwistedLoopElement, twist_eigenbasis
from .scalars import Scalar, ZERO


class TrialRng:
    def __init__(self, seed, index=0):
        self._key = f"{seed}:{index}".encode()
        self._counter = 0
        self._buf = b""

    def _refill(self):
        block = hashlib.sha256(self._key + self._counter.to_bytes(8, "big")).digest()
        self._counter += 1
        self._buf += block

    def _take(self, n) -> bytes:
        while len(self._buf) < n:
            self._refill()
        out, self._buf = self._buf[:n], self._buf[n:]
        return out

    def u32(self) -> int:
        return int.from_bytes(self._take(4), "big")

    def randint(self, a, b) -> int:
        """Uniform-ish integer in [a, b]; bias is irrelevant for fuzzing."""
        span = b - a + 1
        return a + self.u32() % span

    def fraction(self, max_num=3, max_den=2) -> Fraction:
        num = self.randint(-max_num, max_num)
        den = self.randint(1, max_den)
        return Fraction(num, den)

    def scalar(self, max_num=3, max_den=2, real_only=False) -> Scalar:
        re = self.fraction(max_num, max_den)
        im = Fraction(0) if real_only else self.fraction(max_num, max_den)
        return Scalar(re, im)

    def choice(self, seq):
        return seq[self.u32() % len(seq)]


def random_loop_element(algebra, twist, rng: TrialRng, max_degree=6, max_terms=4):
    """Random graded element: coefficients drawn inside twist eigenspaces."""
    terms = {}
    n_terms = rng.randint(1, max_terms)
    for _ in range(n_terms):
        k = rng.randint(-max_degree, max_degree)
        basis = twist_eigenbasis(algebra, twist, k % 2)
        if not basis:
            continue
        vec = [ZERO] * algebra.dim
        for b in basis:
            c = rng.scalar()
            if c:
                vec = [v + c * x for v, x in zip(vec, b)]
        if k in terms:
            vec = [a + b for a, b in zip(terms[k], vec)]
        terms[k] = tuple(vec)
    return TwistedLoopElement(algebra, twist, terms)


def random_extended_element(algebra, twist, rng: TrialRng, max_degree=6, max_terms=4,
                            with_cd=True):
    loop = random_loop_element(algebra, twist, rng, max_degree, max_terms)
    c = rng.scalar() if with_cd else ZERO
    d = rng.scalar() if with_cd else ZERO
    return ExtendedElement(loop, c, d)
