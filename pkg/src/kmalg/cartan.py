"""Generalized Cartan matrices: validation, finite/affine classification,
decomposability, the 2x2 family tables and realization dimension bookkeeping.

Classification per indecomposable block is decided exactly: finite type via
positive leading principal minors, affine type via rank n-1 together with a
strictly positive rational null vector. Witness vectors are reconstructed and
re-verified entrywise, so a Finite/Affine verdict always ships its own proof.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from . import linalg


class CartanMatrixError(ValueError):
    """Rejection of a would-be generalized Cartan matrix."""


class NotSquare(CartanMatrixError):
    pass


class DiagonalNotTwo(CartanMatrixError):
    def __init__(self, i):
        self.index = i
        super().__init__(f"axiom (1) violated: a[{i}][{i}] != 2")


class PositiveOffDiagonal(CartanMatrixError):
    def __init__(self, i, j):
        self.indices = (i, j)
        super().__init__(f"axiom (1) violated: a[{i}][{j}] > 0 off the diagonal")


class AsymmetricZero(CartanMatrixError):
    def __init__(self, i, j):
        self.indices = (i, j)
        super().__init__(f"axiom (2) violated: a[{i}][{j}] = 0 but a[{j}][{i}] != 0")


class WrongSize(CartanMatrixError):
    pass


@dataclass(frozen=True)
class GeneralizedCartanMatrix:
    """Validated integer matrix with 2s on the diagonal, non-positive
    off-diagonal entries and a symmetric zero pattern."""

    entries: tuple

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def rows(self):
        return [list(r) for r in self.entries]


def validate(entries) -> GeneralizedCartanMatrix:
    """Check the generalized-Cartan-matrix axioms and freeze the matrix."""
    n = len(entries)
    for row in entries:
        if len(row) != n:
            raise NotSquare("matrix is not square")
    for i in range(n):
        for j in range(n):
            v = entries[i][j]
            if not isinstance(v, int):
                raise CartanMatrixError(f"entry a[{i}][{j}] is not an integer")
    for i in range(n):
        if entries[i][i] != 2:
            raise DiagonalNotTwo(i)
    for i in range(n):
        for j in range(n):
            if i != j and entries[i][j] > 0:
                raise PositiveOffDiagonal(i, j)
    for i in range(n):
        for j in range(n):
            if i != j and entries[i][j] == 0 and entries[j][i] != 0:
                raise AsymmetricZero(i, j)
    return GeneralizedCartanMatrix(tuple(tuple(r) for r in entries))


class CartanKind(Enum):
    FINITE = "Finite"
    AFFINE = "Affine"
    NEITHER = "Neither"
    MIXED = "Mixed"  # composite matrices only; not a notion for blocks


@dataclass(frozen=True)
class CartanClass:
    kind: CartanKind
    witness: tuple | None  # positive rational v with Av>0 (Finite) or Av=0 (Affine)
    components: tuple  # index blocks, each a tuple of indices
    block_kinds: tuple  # CartanKind per block
    synthetic_composite: bool  # True when the whole-matrix kind merges >1 block


@dataclass(frozen=True)
class RealizationDims:
    n: int
    l: int
    dim_h: int


def decompose(a: GeneralizedCartanMatrix):
    """Connected components of the zero-pattern graph, ordered by least index."""
    n = a.n
    seen = [False] * n
    blocks = []
    for start in range(n):
        if seen[start]:
            continue
        stack, comp = [start], []
        seen[start] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and (a[i, j] != 0 or a[j, i] != 0):
                    seen[j] = True
                    stack.append(j)
        blocks.append(tuple(sorted(comp)))
    return blocks


def _submatrix(a: GeneralizedCartanMatrix, idx):
    return [[Fraction(a[i, j]) for j in idx] for i in idx]


def _classify_block(a: GeneralizedCartanMatrix, idx):
    """(kind, witness) for one indecomposable block."""
    sub = _submatrix(a, idx)
    k = len(idx)
    minors = linalg.leading_principal_minors(sub)
    if all(m > 0 for m in minors):
        ones = [Fraction(1)] * k
        v = linalg.solve(sub, ones)
        assert v is not None
        _check_witness(sub, v, strict=True)
        return CartanKind.FINITE, tuple(v)
    if linalg.rank(sub) == k - 1:
        null = linalg.nullspace(sub)
        if len(null) == 1:
            v = null[0]
            if all(x > 0 for x in v) or all(x < 0 for x in v):
                v = [abs(x) for x in v]
                _check_witness(sub, v, strict=False)
                return CartanKind.AFFINE, tuple(v)
    return CartanKind.NEITHER, None


def _check_witness(sub, v, strict):
    if any(x <= 0 for x in v):
        raise AssertionError("witness vector not entrywise positive")
    av = [sum(row[j] * v[j] for j in range(len(v))) for row in sub]
    ok = all(x > 0 for x in av) if strict else all(x == 0 for x in av)
    if not ok:
        raise AssertionError("witness vector fails its defining condition")


def classify(a: GeneralizedCartanMatrix) -> CartanClass:
    """Classify into Finite / Affine / Neither (blockwise, exactly).

    A single indecomposable matrix gets its block kind. For composite
    matrices the merged label is synthetic: Finite iff all blocks are Finite,
    Affine iff all blocks are Affine, Mixed otherwise; witnesses concatenate.
    """
    comps = decompose(a)
    kinds = []
    witnesses = []
    for idx in comps:
        kind, w = _classify_block(a, idx)
        kinds.append(kind)
        witnesses.append(w)
    if len(comps) == 1:
        kind = kinds[0]
    elif all(k == CartanKind.FINITE for k in kinds):
        kind = CartanKind.FINITE
    elif all(k == CartanKind.AFFINE for k in kinds):
        kind = CartanKind.AFFINE
    else:
        kind = CartanKind.MIXED
    witness = None
    if kind in (CartanKind.FINITE, CartanKind.AFFINE):
        v = [Fraction(0)] * a.n
        for idx, w in zip(comps, witnesses):
            for pos, val in zip(idx, w):
                v[pos] = val
        witness = tuple(v)
    return CartanClass(
        kind=kind,
        witness=witness,
        components=tuple(comps),
        block_kinds=tuple(kinds),
        synthetic_composite=len(comps) > 1,
    )


@dataclass(frozen=True)
class Family2x2:
    name: str
    dimension: int | None  # None for the infinite-dimensional affine families


UNKNOWN_FAMILY = Family2x2("Unknown", None)

# Off-diagonal pairs {a12, a21} identify the 2x2 families up to simultaneous
# row/column permutation.
_FAMILY_TABLE = (
    (frozenset([0]), Family2x2("a1xa1", 6)),
    (frozenset([-1]), Family2x2("a2", 8)),
    (frozenset([-1, -2]), Family2x2("b2", 10)),
    (frozenset([-1, -3]), Family2x2("g2", 14)),
    (frozenset([-2]), Family2x2("a1tilde", None)),
    (frozenset([-1, -4]), Family2x2("a1tilde_prime", None)),
)


def identify_2x2(a: GeneralizedCartanMatrix, extra_catalog=()) -> Family2x2:
    """Match a against the classical 2x2 tables (plus a user catalog)."""
    if a.n != 2:
        raise WrongSize(f"identify_2x2 needs a 2x2 matrix, got {a.n}x{a.n}")
    key = frozenset([a[0, 1], a[1, 0]])
    for pat, fam in tuple(_FAMILY_TABLE) + tuple(extra_catalog):
        if key == pat:
            return fam
    return UNKNOWN_FAMILY


def realization_dims(a: GeneralizedCartanMatrix) -> RealizationDims:
    """(n, rank, 2n - rank); for affine matrices rank n-1 is asserted."""
    n = a.n
    l = linalg.rank(_submatrix(a, range(n)))
    dims = RealizationDims(n=n, l=l, dim_h=2 * n - l)
    if classify(a).kind == CartanKind.AFFINE:
        assert l == n - 1, "affine matrix must have rank n-1"
        assert dims.dim_h == n + 1
    return dims
