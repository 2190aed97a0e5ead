"""Exact matrix realizations of finite-dimensional reductive Lie algebras.

An algebra is a basis of square matrices over Gaussian rationals together
with its structure constants (computed and verified at construction), an
ideal split into abelian and simple blocks, the Killing form via adjoint
traces, and finite-order automorphisms checked against the bracket.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .scalars import ONE, ZERO, Scalar

Matrix = tuple  # tuple of row tuples of Scalar


class LieAlgebraError(ValueError):
    pass


class NotAutomorphismError(LieAlgebraError):
    def __init__(self, i, j):
        self.pair = (i, j)
        super().__init__(f"bracket of basis pair ({i},{j}) is not preserved")


class WrongOrderError(LieAlgebraError):
    pass


# -- small exact matrix helpers ----------------------------------------

def mat(rows) -> Matrix:
    out = []
    for row in rows:
        out.append(tuple(x if isinstance(x, Scalar) else Scalar(x) for x in row))
    return tuple(out)


def mat_zero(n) -> Matrix:
    return tuple(tuple(ZERO for _ in range(n)) for _ in range(n))


def mat_add(a, b) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a, b) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c, a) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def mat_mul(a, b) -> Matrix:
    n, m = len(a), len(b[0])
    k = len(b)
    return tuple(
        tuple(sum((a[i][t] * b[t][j] for t in range(k)), ZERO) for j in range(m))
        for i in range(n)
    )


def mat_bracket(a, b) -> Matrix:
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def mat_transpose(a) -> Matrix:
    return tuple(tuple(a[j][i] for j in range(len(a))) for i in range(len(a[0])))


def mat_conj(a) -> Matrix:
    return tuple(tuple(x.conjugate() for x in row) for row in a)


def mat_trace(a) -> Scalar:
    return sum((a[i][i] for i in range(len(a))), ZERO)


def mat_is_zero(a) -> bool:
    return all(not x for row in a for x in row)


def mat_flatten(a):
    return [x for row in a for x in row]


@dataclass(frozen=True)
class IdealBlock:
    kind: str  # "abelian" | "simple"
    indices: tuple


class FiniteLieAlgebra:
    """Reductive Lie algebra given by an exact matrix basis.

    field is "R" or "C". For a real algebra the matrices may have complex
    entries (e.g. su(n)); reality means the structure constants are real and
    elements are real linear combinations of the basis.
    """

    def __init__(self, name, field, basis, blocks, check=True):
        if field not in ("R", "C"):
            raise LieAlgebraError(f"field must be 'R' or 'C', got {field!r}")
        self.name = name
        self.field = field
        self.basis = tuple(basis)
        self.blocks = tuple(blocks)
        self.dim = len(self.basis)
        self.matrix_size = len(self.basis[0]) if self.basis else 1
        self._complexified = None
        covered = sorted(i for b in self.blocks for i in b.indices)
        if covered != list(range(self.dim)):
            raise LieAlgebraError("ideal blocks must partition the basis indices")
        flat = [linalg.real_flatten(mat_flatten(b)) for b in self.basis]
        if self.dim and linalg.rank(flat) != self.dim:
            raise LieAlgebraError("basis matrices are linearly dependent")
        self._flat_basis = [mat_flatten(b) for b in self.basis]
        self.structure = self._compute_structure()
        if check:
            self._check_field_reality()
            self._check_block_orthogonality()
        self._ad = [self._ad_matrix(j) for j in range(self.dim)]
        self.killing_matrix = tuple(
            tuple(self._ad_trace(j, l) for l in range(self.dim)) for j in range(self.dim)
        )

    # -- construction-time verification ---------------------------------

    def _compute_structure(self):
        sc = []
        for j in range(self.dim):
            row = []
            for k in range(self.dim):
                br = mat_bracket(self.basis[j], self.basis[k])
                coords = self.coords(br)
                row.append(tuple((m, c) for m, c in enumerate(coords) if c))
            sc.append(row)
        return sc

    def _check_field_reality(self):
        if self.field == "R":
            for j in range(self.dim):
                for k in range(self.dim):
                    for _, c in self.structure[j][k]:
                        if not c.is_real():
                            raise LieAlgebraError(
                                f"{self.name}: non-real structure constant on a real algebra"
                            )

    def _check_block_orthogonality(self):
        for a in range(len(self.blocks)):
            for b in range(a + 1, len(self.blocks)):
                for j in self.blocks[a].indices:
                    for k in self.blocks[b].indices:
                        if self.structure[j][k]:
                            raise LieAlgebraError(
                                f"{self.name}: blocks {a} and {b} are not bracket-orthogonal"
                            )

    # -- coordinates -----------------------------------------------------

    def coords(self, m: Matrix):
        """Coordinates of a matrix in the basis; raises if outside the span."""
        target = mat_flatten(m)
        # complex coordinates found by a real 2x-blown-up solve
        flat = [[self._flat_basis[j][i] for j in range(self.dim)] for i in range(len(target))]
        real_rows = []
        real_rhs = []
        for i, t in enumerate(target):
            row = flat[i]
            real_rows.append([c.re for c in row] + [-c.im for c in row])
            real_rows.append([c.im for c in row] + [c.re for c in row])
            real_rhs.extend([t.re, t.im])
        sol = linalg.solve(real_rows, real_rhs)
        if sol is None:
            raise LieAlgebraError("matrix is not in the span of the basis")
        return tuple(Scalar(sol[j], sol[self.dim + j]) for j in range(self.dim))

    def matrix(self, coords) -> Matrix:
        out = mat_zero(self.matrix_size)
        for c, b in zip(coords, self.basis):
            if c:
                out = mat_add(out, mat_scale(c, b))
        return out

    def zero_coords(self):
        return (ZERO,) * self.dim

    # -- bracket and Killing form ----------------------------------------

    def bracket(self, x, y):
        """[x, y] in coordinates, via the structure constants."""
        out = [ZERO] * self.dim
        sc = self.structure
        for j, xj in enumerate(x):
            if not xj:
                continue
            row = sc[j]
            for k, yk in enumerate(y):
                if not yk:
                    continue
                f = xj * yk
                for m, c in row[k]:
                    out[m] = out[m] + f * c
        return tuple(out)

    def _ad_matrix(self, j):
        ad = [[ZERO] * self.dim for _ in range(self.dim)]
        for k in range(self.dim):
            for m, c in self.structure[j][k]:
                ad[m][k] = c
        return ad

    def _ad_trace(self, j, l):
        adj, adl = self._ad[j], self._ad[l]
        total = ZERO
        for m in range(self.dim):
            for k in range(self.dim):
                if adj[m][k] and adl[k][m]:
                    total = total + adj[m][k] * adl[k][m]
        return total

    def killing(self, x, y) -> Scalar:
        """Trace of ad(x) ad(y), from the precomputed basis Gram matrix."""
        if len(x) != self.dim or len(y) != self.dim:
            raise LieAlgebraError("coordinate vector has the wrong dimension")
        total = ZERO
        km = self.killing_matrix
        for j, xj in enumerate(x):
            if not xj:
                continue
            for l, yl in enumerate(y):
                if yl and km[j][l]:
                    total = total + xj * yl * km[j][l]
        return total

    def is_semisimple(self) -> bool:
        return bool(linalg.determinant([list(r) for r in self.killing_matrix]))

    def abelian_indices(self):
        return tuple(i for b in self.blocks if b.kind == "abelian" for i in b.indices)

    def simple_blocks(self):
        return tuple(b for b in self.blocks if b.kind == "simple")

    def complexify(self) -> "FiniteLieAlgebra":
        """Same basis viewed over C. Cached so twists can share identity."""
        if self.field == "C":
            return self
        if self._complexified is None:
            self._complexified = FiniteLieAlgebra(
                self.name + "_C", "C", self.basis, self.blocks, check=False
            )
        return self._complexified

    def __repr__(self):
        return f"FiniteLieAlgebra({self.name!r}, dim={self.dim}, field={self.field})"


# -- constructors -------------------------------------------------------

def _unit(n, i, j, value=1) -> Matrix:
    rows = [[ZERO] * n for _ in range(n)]
    rows[i][j] = value if isinstance(value, Scalar) else Scalar(value)
    return tuple(tuple(r) for r in rows)


_SL_CACHE = {}
_SU_CACHE = {}
_SO_CACHE = {}
_AB_CACHE = {}


def make_sl(n: int, field="C") -> FiniteLieAlgebra:
    """sl(n): traceless matrices; basis E_ij (i != j) and H_i = E_ii - E_i+1,i+1."""
    if n < 2:
        raise LieAlgebraError("make_sl needs n >= 2")
    key = (n, field)
    if key not in _SL_CACHE:
        basis = []
        for i in range(n - 1):
            basis.append(mat_sub(_unit(n, i, i), _unit(n, i + 1, i + 1)))
        for i in range(n):
            for j in range(n):
                if i != j:
                    basis.append(_unit(n, i, j))
        name = f"sl({n},{field})"
        _SL_CACHE[key] = FiniteLieAlgebra(
            name, field, basis, [IdealBlock("simple", tuple(range(n * n - 1)))]
        )
    return _SL_CACHE[key]


def make_su(n: int) -> FiniteLieAlgebra:
    """su(n): anti-Hermitian traceless matrices, real algebra, entries in {1, i}."""
    if n < 2:
        raise LieAlgebraError("make_su needs n >= 2")
    if n not in _SU_CACHE:
        i_ = Scalar(0, 1)
        basis = []
        for k in range(n - 1):
            basis.append(mat_sub(_unit(n, k, k, i_), _unit(n, k + 1, k + 1, i_)))
        for p in range(n):
            for q in range(p + 1, n):
                basis.append(mat_sub(_unit(n, p, q), _unit(n, q, p)))
                basis.append(mat_add(_unit(n, p, q, i_), _unit(n, q, p, i_)))
        _SU_CACHE[n] = FiniteLieAlgebra(
            f"su({n})", "R", basis, [IdealBlock("simple", tuple(range(n * n - 1)))]
        )
    return _SU_CACHE[n]


def make_so(n: int, field="R") -> FiniteLieAlgebra:
    """so(n): antisymmetric matrices. For n = 4 the basis is adapted to the
    split into two commuting 3-dimensional simple ideals."""
    if n < 3:
        raise LieAlgebraError("make_so needs n >= 3")
    key = (n, field)
    if key not in _SO_CACHE:
        pairs = [(p, q) for p in range(n) for q in range(p + 1, n)]
        ls = {pq: mat_sub(_unit(n, pq[0], pq[1]), _unit(n, pq[1], pq[0])) for pq in pairs}
        if n == 4:
            plus = [
                mat_add(ls[(1, 2)], ls[(0, 3)]),
                mat_add(mat_scale(Scalar(-1), ls[(0, 2)]), ls[(1, 3)]),
                mat_add(ls[(0, 1)], ls[(2, 3)]),
            ]
            minus = [
                mat_sub(ls[(1, 2)], ls[(0, 3)]),
                mat_sub(mat_scale(Scalar(-1), ls[(0, 2)]), ls[(1, 3)]),
                mat_sub(ls[(0, 1)], ls[(2, 3)]),
            ]
            basis = plus + minus
            blocks = [IdealBlock("simple", (0, 1, 2)), IdealBlock("simple", (3, 4, 5))]
        else:
            basis = [ls[pq] for pq in pairs]
            blocks = [IdealBlock("simple", tuple(range(len(basis))))]
        _SO_CACHE[key] = FiniteLieAlgebra(f"so({n},{field})", field, basis, blocks)
    return _SO_CACHE[key]


def make_abelian(k: int, field="R") -> FiniteLieAlgebra:
    """k-dimensional abelian algebra realized by diagonal matrix units."""
    if k < 0:
        raise LieAlgebraError("make_abelian needs k >= 0")
    key = (k, field)
    if key not in _AB_CACHE:
        size = max(k, 1)
        basis = [_unit(size, i, i) for i in range(k)]
        blocks = [IdealBlock("abelian", tuple(range(k)))] if k else []
        _AB_CACHE[key] = FiniteLieAlgebra(f"abelian({k},{field})", field, basis, blocks)
    return _AB_CACHE[key]


def direct_sum(*algebras, name=None) -> FiniteLieAlgebra:
    """Block-diagonal direct sum; blocks concatenate with shifted indices."""
    if not algebras:
        raise LieAlgebraError("direct_sum of nothing")
    field = algebras[0].field
    if any(g.field != field for g in algebras):
        raise LieAlgebraError("direct_sum requires a common field")
    total = sum(g.matrix_size for g in algebras)
    basis = []
    blocks = []
    offset_mat = 0
    offset_idx = 0
    for g in algebras:
        for b in g.basis:
            rows = [[ZERO] * total for _ in range(total)]
            for i in range(g.matrix_size):
                for j in range(g.matrix_size):
                    rows[offset_mat + i][offset_mat + j] = b[i][j]
            basis.append(tuple(tuple(r) for r in rows))
        for blk in g.blocks:
            blocks.append(IdealBlock(blk.kind, tuple(offset_idx + i for i in blk.indices)))
        offset_mat += g.matrix_size
        offset_idx += g.dim
    if name is None:
        name = "+".join(g.name for g in algebras)
    return FiniteLieAlgebra(name, field, basis, blocks)


# -- ideal split discovery ----------------------------------------------

def compute_ideal_split(g: FiniteLieAlgebra):
    """Rediscover the abelian/simple ideal split by exact linear algebra.

    Returns a list of (kind, coordinate basis) pairs: the center spans the
    abelian part, the derived algebra splits into minimal ideals through a
    rational eigenspace decomposition of its centroid.
    """
    dim = g.dim
    one = Fraction(1)
    # center: x with ad(x) = 0, i.e. bracket against every basis vector is 0
    rows = []
    for k in range(dim):
        for m in range(dim):
            row_re = [ZERO] * dim
            for j in range(dim):
                for mm, c in g.structure[j][k]:
                    if mm == m:
                        row_re[j] = c
            rows.append(row_re)
    center = _complex_nullspace(rows, dim)
    # derived algebra: span of all brackets
    derived_vecs = []
    for j in range(dim):
        for k in range(dim):
            v = [ZERO] * dim
            for m, c in g.structure[j][k]:
                v[m] = c
            if any(v):
                derived_vecs.append(tuple(v))
    derived = _independent_subset(derived_vecs)
    out = []
    if center:
        out.append(("abelian", [tuple(v) for v in center]))
    for ideal in _split_semisimple(g, derived):
        out.append(("simple", ideal))
    return out


def _complex_nullspace(scalar_rows, nvars):
    """Nullspace over the Scalar field itself (not its real blow-up)."""
    rows = [[x if isinstance(x, Scalar) else Scalar(x) for x in row] for row in scalar_rows]
    rows = [row for row in rows if any(row)]
    if not rows:
        return [tuple(ONE if j == i else ZERO for j in range(nvars)) for i in range(nvars)]
    return [tuple(v) for v in linalg.nullspace(rows)]


def _independent_subset(vectors):
    kept = []
    flat = []
    for v in vectors:
        cand = flat + [linalg.real_flatten(list(v))]
        if linalg.rank(cand) > len(flat):
            kept.append(v)
            flat = cand
    return kept


def _split_semisimple(g, span_vectors):
    """Split a semisimple ideal (given by a spanning set) into minimal ideals
    via rational eigenvalues of centroid elements."""
    if not span_vectors:
        return []
    basis = span_vectors
    d = len(basis)
    # centroid of the subalgebra in its own coordinates
    sub_bracket = {}
    for a in range(d):
        for b in range(d):
            br = g.bracket(basis[a], basis[b])
            coeffs = linalg.coords_in_span([list(v) for v in basis], list(br))
            assert coeffs is not None, "spanning set is not bracket-closed"
            sub_bracket[(a, b)] = coeffs
    # unknown phi: d x d; phi([x,y]) = [phi x, y] for basis pairs
    rows = []
    for a in range(d):
        for b in range(d):
            cab = sub_bracket[(a, b)]
            for m in range(d):
                row = [ZERO] * (d * d)
                # lhs: sum_k cab[k] phi[m][k]
                for k in range(d):
                    if cab[k]:
                        row[m * d + k] = row[m * d + k] + cab[k]
                # rhs: sum_k phi[k][a] c_{k b}[m]
                for k in range(d):
                    ckb = sub_bracket[(k, b)]
                    if ckb[m]:
                        row[k * d + a] = row[k * d + a] - ckb[m]
                if any(row):
                    rows.append(row)
    centroid = _complex_nullspace(rows, d * d)
    if len(centroid) <= 1:
        return [[tuple(v) for v in basis]]
    # find a centroid element with a nontrivial rational eigenvalue split
    candidates = list(centroid)
    for a in range(len(centroid)):
        for b in range(a + 1, len(centroid)):
            candidates.append(tuple(x + y for x, y in zip(centroid[a], centroid[b])))
    for phi_flat in candidates:
        phi = [[phi_flat[i * d + j] for j in range(d)] for i in range(d)]
        eigs = _rational_eigenvalues(phi)
        if len(eigs) < 2:
            continue
        pieces = []
        for lam in eigs:
            shifted = [[phi[i][j] - (lam if i == j else 0) for j in range(d)] for i in range(d)]
            vecs = _complex_nullspace(shifted, d)
            if vecs:
                sub = [
                    tuple(sum((v[k] * basis[k][m] for k in range(d)), ZERO) for m in range(g.dim))
                    for v in vecs
                ]
                pieces.extend(_split_semisimple(g, _independent_subset(sub)))
        if sum(len(p) for p in pieces) == d:
            return pieces
    raise LieAlgebraError("could not split semisimple part with rational eigenvalues")


def _rational_eigenvalues(phi):
    """Distinct rational eigenvalues of a matrix over Scalars with real
    rational entries, found by factoring the minimal polynomial by rational
    root search (sufficient for split centroids)."""
    d = len(phi)
    for row in phi:
        for x in row:
            if not x.is_real():
                return []
    m = [[x.re for x in row] for row in phi]
    # Krylov minimal polynomial of the matrix itself
    powers = [[[one_if(i == j) for j in range(d)] for i in range(d)]]
    while True:
        prev = powers[-1]
        nxt = [
            [sum((prev[i][t] * m[t][j] for t in range(d)), Fraction(0)) for j in range(d)]
            for i in range(d)
        ]
        flat = [[p[i][j] for i in range(d) for j in range(d)] for p in powers]
        target = [nxt[i][j] for i in range(d) for j in range(d)]
        coeffs = linalg.coords_in_span(flat, target)
        if coeffs is not None:
            # x^k = sum coeffs[i] x^i  ->  min poly x^k - sum coeffs_i x^i
            poly = [-c for c in coeffs] + [Fraction(1)]
            return _rational_roots(poly)
        powers.append(nxt)
        if len(powers) > d + 1:
            raise LieAlgebraError("minimal polynomial search failed")


def one_if(cond):
    return Fraction(1) if cond else Fraction(0)


def _rational_roots(poly):
    """All rational roots of a rational-coefficient polynomial."""
    from math import gcd

    # clear denominators
    den = 1
    for c in poly:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in poly]
    while ints and ints[-1] == 0:
        ints.pop()
    if not ints:
        return []
    lead = abs(ints[-1])
    # strip root 0
    roots = []
    k = 0
    while k < len(ints) and ints[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
        ints = ints[k:]
    const = abs(ints[0]) if ints else 0
    if const:
        for p in _divisors(const):
            for q in _divisors(lead):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if not _poly_eval(ints, cand):
                        if cand not in roots:
                            roots.append(cand)
    return roots


def _divisors(n):
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _poly_eval(ints, x: Fraction):
    total = Fraction(0)
    for c in reversed(ints):
        total = total * x + c
    return total


# -- Killing-based predicates -------------------------------------------

def killing(g: FiniteLieAlgebra, x, y) -> Scalar:
    return g.killing(x, y)


def is_compact_type(g: FiniteLieAlgebra) -> bool:
    """Negative definite Killing form on a real semisimple algebra."""
    if g.field != "R":
        raise LieAlgebraError("compactness is a notion for real algebras")
    km = []
    for row in g.killing_matrix:
        r = []
        for x in row:
            if not x.is_real():
                raise LieAlgebraError("real algebra with non-real Killing values")
            r.append(x.re)
        km.append(r)
    if not km:
        return False
    pos, neg, zero = linalg.symmetric_signature(km)
    return zero == 0 and pos == 0 and neg == g.dim


# -- automorphisms -------------------------------------------------------

class FiniteAutomorphism:
    """Linear or conjugate-linear automorphism in basis coordinates."""

    def __init__(self, algebra, matrix_rows, conjugate_linear=False, order=None):
        self.algebra = algebra
        self.matrix = tuple(
            tuple(x if isinstance(x, Scalar) else Scalar(x) for x in row) for row in matrix_rows
        )
        self.conjugate_linear = bool(conjugate_linear)
        self.order = order

    def apply(self, coords):
        if self.conjugate_linear:
            coords = tuple(c.conjugate() for c in coords)
        m = self.matrix
        return tuple(
            sum((m[i][j] * coords[j] for j in range(len(coords)) if coords[j]), ZERO)
            for i in range(len(m))
        )

    def compose(self, other) -> "FiniteAutomorphism":
        """self after other."""
        if self.conjugate_linear:
            mat2 = mat_conj(other.matrix)
        else:
            mat2 = other.matrix
        prod = mat_mul(self.matrix, mat2)
        return FiniteAutomorphism(
            self.algebra, prod, self.conjugate_linear != other.conjugate_linear
        )

    def is_identity(self) -> bool:
        if self.conjugate_linear:
            return False
        n = len(self.matrix)
        return all(
            self.matrix[i][j] == (ONE if i == j else ZERO) for i in range(n) for j in range(n)
        )

    def __eq__(self, other):
        if not isinstance(other, FiniteAutomorphism):
            return NotImplemented
        return (
            self.algebra is other.algebra
            and self.conjugate_linear == other.conjugate_linear
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash((id(self.algebra), self.conjugate_linear, self.matrix))

    def __repr__(self):
        kind = "conjugate-linear" if self.conjugate_linear else "linear"
        return f"FiniteAutomorphism({self.algebra.name}, {kind}, order={self.order})"


def identity_automorphism(g) -> FiniteAutomorphism:
    rows = [[ONE if i == j else ZERO for j in range(g.dim)] for i in range(g.dim)]
    return FiniteAutomorphism(g, rows, conjugate_linear=False, order=1)


def check_automorphism(g, phi: FiniteAutomorphism) -> FiniteAutomorphism:
    """Verify bracket preservation and the declared finite order, exactly."""
    basis_coords = [
        tuple(ONE if i == j else ZERO for i in range(g.dim)) for j in range(g.dim)
    ]
    images = [phi.apply(v) for v in basis_coords]
    for j in range(g.dim):
        for k in range(g.dim):
            lhs_vec = [ZERO] * g.dim
            for m, c in g.structure[j][k]:
                lhs_vec[m] = c
            lhs = phi.apply(tuple(lhs_vec))
            rhs = g.bracket(images[j], images[k])
            if lhs != rhs:
                raise NotAutomorphismError(j, k)
    if phi.order is None:
        raise WrongOrderError("automorphism must declare its order")
    if phi.order < 1:
        raise WrongOrderError("order must be positive")
    power = phi
    for k in range(1, phi.order):
        if power.is_identity():
            raise WrongOrderError(f"order {phi.order} declared but {k} suffices")
        power = phi.compose(power)
    if not power.is_identity():
        raise WrongOrderError(f"phi**{phi.order} is not the identity")
    return phi


def automorphism_from_order(g, matrix_rows, conjugate_linear=False, max_order=8):
    """Build an automorphism, deriving its exact order; verified."""
    phi = FiniteAutomorphism(g, matrix_rows, conjugate_linear)
    power = phi
    for k in range(1, max_order + 1):
        if power.is_identity():
            phi.order = k
            return check_automorphism(g, phi)
        power = phi.compose(power)
    raise WrongOrderError(f"no order up to {max_order} found")


def ad_conjugation_automorphism(g, h: Matrix) -> FiniteAutomorphism:
    """Ad(h): x -> h x h^-1, expressed in basis coordinates."""
    n = g.matrix_size
    h_inv = _mat_inverse(h)
    rows_t = []
    for b in g.basis:
        img = mat_mul(mat_mul(h, b), h_inv)
        rows_t.append(g.coords(img))
    rows = [[rows_t[j][i] for j in range(g.dim)] for i in range(g.dim)]
    return automorphism_from_order(g, rows)


def entrywise_conjugation_automorphism(g) -> FiniteAutomorphism:
    """x -> conj(x) entrywise on matrices. On a real algebra this is a linear
    involution of the basis; on a complex algebra it is conjugate-linear."""
    rows_t = [g.coords(mat_conj(b)) for b in g.basis]
    rows = [[rows_t[j][i] for j in range(g.dim)] for i in range(g.dim)]
    return automorphism_from_order(g, rows, conjugate_linear=(g.field == "C"))


def negative_transpose_automorphism(g) -> FiniteAutomorphism:
    """x -> -x^T; an automorphism whenever the basis span is transpose-stable."""
    rows_t = [g.coords(mat_scale(Scalar(-1), mat_transpose(b))) for b in g.basis]
    rows = [[rows_t[j][i] for j in range(g.dim)] for i in range(g.dim)]
    return automorphism_from_order(g, rows)


def _mat_inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(a[i]) + [ONE if j == i else ZERO for j in range(n)] for i in range(n)]
    red, pivots = linalg.rref(aug)
    if pivots != list(range(n)):
        raise LieAlgebraError("matrix is singular")
    return tuple(tuple(red[i][n:]) for i in range(n))
