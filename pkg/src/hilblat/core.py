"""Exact linear algebra for integral lattices with symmetric bilinear forms.

Everything is computed with arbitrary-precision integers and exact
rationals; floating point never enters any computation.  Vectors are
coordinate tuples relative to a lattice basis, matrices are tuples of
row tuples.  Degenerate Gram matrices are legal inputs except where an
operation states otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


class LatticeError(ValueError):
    """A mathematical precondition was violated."""


def _entry(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise LatticeError(f"integer entry expected, got {x!r}")
    return x


def as_vector(data: Sequence[int]) -> Vector:
    return tuple(_entry(x) for x in data)


def as_matrix(data) -> Matrix:
    rows = tuple(tuple(_entry(x) for x in row) for row in data)
    if len({len(row) for row in rows}) > 1:
        raise LatticeError("matrix rows have unequal lengths")
    return rows


def _exact_vector(data) -> tuple:
    out = tuple(data)
    for x in out:
        if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
            raise LatticeError(f"exact integer or rational entry expected, got {x!r}")
    return out


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise LatticeError("matrix dimensions do not match")
    bt = transpose(b)
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(m: Matrix, v: Sequence) -> tuple:
    if m and len(m[0]) != len(v):
        raise LatticeError("matrix and vector dimensions do not match")
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def det(m: Matrix) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    if any(len(row) != n for row in m):
        raise LatticeError("determinant requires a square matrix")
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]


def hermite_basis(vectors: Iterable[Sequence[int]], width: int) -> tuple[Vector, ...]:
    """Canonical basis of the integer span of ``vectors`` inside Z^width.

    Row-style Hermite normal form: echelon shape, positive pivots, entries
    above each pivot reduced into [0, pivot), zero rows dropped.  Equal
    spans yield bit-equal results, so bases compare directly.
    """
    rows = [list(as_vector(v)) for v in vectors]
    for row in rows:
        if len(row) != width:
            raise LatticeError(f"vector of length {len(row)} inside Z^{width}")
    rank = 0
    for col in range(width):
        pivot = None
        for i in range(rank, len(rows)):
            if rows[i][col] != 0 and (
                pivot is None or abs(rows[i][col]) < abs(rows[pivot][col])
            ):
                pivot = i
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        while True:
            clear = True
            for i in range(rank + 1, len(rows)):
                if rows[i][col] != 0:
                    q = rows[i][col] // rows[rank][col]
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[rank])]
                    if rows[i][col] != 0:
                        rows[rank], rows[i] = rows[i], rows[rank]
                        clear = False
            if clear:
                break
        if rows[rank][col] < 0:
            rows[rank] = [-x for x in rows[rank]]
        for i in range(rank):
            q = rows[i][col] // rows[rank][col]
            if q:
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return tuple(tuple(row) for row in rows[:rank])


def rank_of(vectors: Iterable[Sequence[int]], width: int) -> int:
    return len(hermite_basis(vectors, width))


def integer_kernel(matrix, width: int | None = None) -> tuple[Vector, ...]:
    """Canonical basis of {x in Z^n : matrix . x = 0}; always saturated.

    Computed by unimodular row reduction of the transposed matrix
    augmented with an identity block; no modular shortcuts.
    """
    rows = as_matrix(matrix)
    if width is None:
        if not rows:
            raise LatticeError("kernel of an empty matrix needs an explicit width")
        width = len(rows[0])
    elif rows and len(rows[0]) != width:
        raise LatticeError("matrix width disagrees with the requested kernel width")
    m = len(rows)
    aug = [
        [rows[i][j] for i in range(m)] + [1 if k == j else 0 for k in range(width)]
        for j in range(width)
    ]
    rank = 0
    for col in range(m):
        pivot = None
        for i in range(rank, width):
            if aug[i][col] != 0 and (
                pivot is None or abs(aug[i][col]) < abs(aug[pivot][col])
            ):
                pivot = i
        if pivot is None:
            continue
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        while True:
            clear = True
            for i in range(rank + 1, width):
                if aug[i][col] != 0:
                    q = aug[i][col] // aug[rank][col]
                    aug[i] = [x - q * y for x, y in zip(aug[i], aug[rank])]
                    if aug[i][col] != 0:
                        aug[rank], aug[i] = aug[i], aug[rank]
                        clear = False
            if clear:
                break
        rank += 1
    return hermite_basis([row[m:] for row in aug[rank:]], width)


def saturation_basis(vectors: Iterable[Sequence[int]], width: int) -> tuple[Vector, ...]:
    """Canonical basis of (rational span of ``vectors``) intersected with Z^width."""
    gens = hermite_basis(vectors, width)
    if not gens:
        return ()
    annihilator = integer_kernel(gens, width)
    return integer_kernel(annihilator, width)


class SignatureTriple(NamedTuple):
    """Counts of positive, zero and negative eigenvalues of a real symmetric form."""

    pos: int
    zero: int
    neg: int


@dataclass(frozen=True, eq=False)
class Lattice:
    """A free Z-module of finite rank with an integral symmetric Gram matrix.

    Rank-0 lattices are legal and act as direct-sum identities.  Labels are
    display-only and ignored by equality.
    """

    rank: int
    gram: Matrix
    label: str | None = None

    def __post_init__(self):
        gram = as_matrix(self.gram)
        if len(gram) != self.rank or any(len(row) != self.rank for row in gram):
            raise LatticeError(f"Gram matrix must be {self.rank}x{self.rank}")
        for i in range(self.rank):
            for j in range(i):
                if gram[i][j] != gram[j][i]:
                    raise LatticeError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", gram)

    @classmethod
    def from_gram(cls, gram, label: str | None = None) -> "Lattice":
        gram = as_matrix(gram)
        return cls(len(gram), gram, label)

    def basis_vector(self, i: int) -> Vector:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.rank == other.rank and self.gram == other.gram

    def __hash__(self):
        return hash((self.rank, self.gram))


def diagonal_lattice(entries: Sequence[int], label: str | None = None) -> Lattice:
    entries = as_vector(entries)
    n = len(entries)
    gram = tuple(
        tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)
    )
    return Lattice(n, gram, label)


def pairing(L: Lattice, x, y):
    """Evaluate the bilinear form x^T . gram . y; symmetric and exact."""
    xv = _exact_vector(x)
    yv = _exact_vector(y)
    if len(xv) != L.rank or len(yv) != L.rank:
        raise LatticeError("vector length does not match the lattice rank")
    total = 0
    for xi, row in zip(xv, L.gram):
        if xi:
            total += xi * sum(g * yj for g, yj in zip(row, yv) if g)
    return total


def norm(L: Lattice, x):
    """q(x) = pairing(L, x, x)."""
    return pairing(L, x, x)


def signature(L: Lattice) -> SignatureTriple:
    """Exact inertia of the form: (positive, zero, negative) eigenvalue counts.

    Symmetric Gaussian elimination over the rationals.  A zero diagonal
    pivot is repaired either by swapping in a nonzero diagonal entry from
    below or, when the whole remaining diagonal vanishes, by adding the
    row/column of a nonzero off-diagonal entry into the pivot row/column,
    which makes the pivot twice that entry.
    """
    n = L.rank
    a = [[Fraction(x) for x in row] for row in L.gram]
    pos = zero = neg = 0
    for i in range(n):
        if a[i][i] == 0:
            swap = next((j for j in range(i + 1, n) if a[j][j] != 0), None)
            if swap is not None:
                a[i], a[swap] = a[swap], a[i]
                for row in a:
                    row[i], row[swap] = row[swap], row[i]
            else:
                off = next((j for j in range(i + 1, n) if a[i][j] != 0), None)
                if off is None:
                    zero += 1
                    continue
                for k in range(n):
                    a[i][k] += a[off][k]
                for row in a:
                    row[i] += row[off]
        p = a[i][i]
        for k in range(i + 1, n):
            if a[k][i]:
                f = a[k][i] / p
                for m in range(i, n):
                    a[k][m] -= f * a[i][m]
                for m in range(i, n):
                    a[m][k] -= f * a[m][i]
        if p > 0:
            pos += 1
        else:
            neg += 1
    return SignatureTriple(pos, zero, neg)


def direct_sum(l1: Lattice, l2: Lattice, label: str | None = None) -> Lattice:
    """Orthogonal direct sum: block-diagonal Gram matrix."""
    n1, n2 = l1.rank, l2.rank
    gram = [[0] * (n1 + n2) for _ in range(n1 + n2)]
    for i in range(n1):
        for j in range(n1):
            gram[i][j] = l1.gram[i][j]
    for i in range(n2):
        for j in range(n2):
            gram[n1 + i][n1 + j] = l2.gram[i][j]
    return Lattice(n1 + n2, tuple(tuple(row) for row in gram), label)


def rescale(L: Lattice, k: int, label: str | None = None) -> Lattice:
    """Multiply the Gram matrix entrywise by a nonzero integer."""
    if isinstance(k, bool) or not isinstance(k, int) or k == 0:
        raise LatticeError("rescaling factor must be a nonzero integer")
    gram = tuple(tuple(k * x for x in row) for row in L.gram)
    return Lattice(L.rank, gram, label)


def discriminant(L: Lattice) -> int:
    """Determinant of the Gram matrix (1 for the rank-0 lattice)."""
    return det(L.gram)


@dataclass(frozen=True, eq=False)
class Sublattice:
    """A finitely generated sublattice, stored on a canonical Hermite basis.

    ``saturated`` is computed on construction: true iff the integer span
    equals the intersection of the rational span with the ambient lattice.
    """

    ambient: Lattice
    basis: tuple[Vector, ...]
    saturated: bool = False

    def __post_init__(self):
        vecs = [as_vector(v) for v in self.basis]
        canon = hermite_basis(vecs, self.ambient.rank)
        if len(canon) != len(vecs):
            raise LatticeError("sublattice generators are linearly dependent")
        object.__setattr__(self, "basis", canon)
        object.__setattr__(
            self, "saturated", canon == saturation_basis(canon, self.ambient.rank)
        )

    @property
    def rank(self) -> int:
        return len(self.basis)

    def gram(self) -> Matrix:
        """Gram matrix of the ambient form restricted to the stored basis."""
        return tuple(
            tuple(pairing(self.ambient, u, v) for v in self.basis) for u in self.basis
        )

    def contains(self, v) -> bool:
        """Integral membership in the integer span."""
        vec = as_vector(v)
        return hermite_basis(self.basis + (vec,), self.ambient.rank) == self.basis

    def rational_span_contains(self, v) -> bool:
        vec = as_vector(v)
        return rank_of(self.basis + (vec,), self.ambient.rank) == self.rank

    def __eq__(self, other):
        if not isinstance(other, Sublattice):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient, self.basis))


def full_sublattice(L: Lattice) -> Sublattice:
    return Sublattice(L, identity_matrix(L.rank))


def _check_sub(L: Lattice, s: Sublattice) -> None:
    if s.ambient != L:
        raise LatticeError("sublattice does not live in this lattice")


def sub_signature(s: Sublattice) -> SignatureTriple:
    """Signature of the ambient form restricted to the sublattice."""
    return signature(Lattice.from_gram(s.gram()))


def rational_span_leq(inner: Sublattice, outer: Sublattice) -> bool:
    """Whether the rational span of ``inner`` sits inside that of ``outer``."""
    if inner.ambient != outer.ambient:
        raise LatticeError("sublattices live in different lattices")
    return rank_of(outer.basis + inner.basis, outer.ambient.rank) == outer.rank


def orthogonal_complement(L: Lattice, s: Sublattice) -> Sublattice:
    """Everything in L orthogonal to ``s``; always saturated."""
    _check_sub(L, s)
    conditions = tuple(mat_vec(L.gram, v) for v in s.basis)
    return Sublattice(L, integer_kernel(conditions, L.rank))


def saturate(L: Lattice, s: Sublattice) -> Sublattice:
    """Primitive closure: (rational span of s) intersected with L."""
    _check_sub(L, s)
    return Sublattice(L, saturation_basis(s.basis, L.rank))


def isometry_violation(L: Lattice, matrix) -> str | None:
    """First violated isometry condition, or None when the matrix is one."""
    m = as_matrix(matrix)
    n = L.rank
    if len(m) != n or any(len(row) != n for row in m):
        raise LatticeError("matrix size does not match the lattice rank")
    columns = transpose(m) if m else ()
    for i in range(n):
        for j in range(i, n):
            got = pairing(L, columns[i], columns[j])
            if got != L.gram[i][j]:
                return (
                    f"q(f(b{i}), f(b{j})) = {got}, "
                    f"expected q(b{i}, b{j}) = {L.gram[i][j]}"
                )
    d = det(m)
    if d not in (1, -1):
        return f"det = {d}, expected 1 or -1"
    return None


def is_isometry(L: Lattice, matrix) -> bool:
    """True iff M^T . gram . M = gram and |det M| = 1."""
    return isometry_violation(L, matrix) is None


@dataclass(frozen=True, eq=False)
class Isometry:
    """A Gram-preserving integer matrix acting on lattice coordinates.

    Validated on construction; column j is the image of the j-th basis
    vector.
    """

    ambient: Lattice
    matrix: Matrix

    def __post_init__(self):
        m = as_matrix(self.matrix)
        problem = isometry_violation(self.ambient, m)
        if problem is not None:
            raise LatticeError(f"not an isometry: {problem}")
        object.__setattr__(self, "matrix", m)

    def apply(self, v) -> Vector:
        return mat_vec(self.matrix, as_vector(v))

    def __mul__(self, other):
        if not isinstance(other, Isometry):
            return NotImplemented
        if other.ambient != self.ambient:
            raise LatticeError("isometries act on different lattices")
        return Isometry(self.ambient, mat_mul(self.matrix, other.matrix))

    def __eq__(self, other):
        if not isinstance(other, Isometry):
            return NotImplemented
        return self.ambient == other.ambient and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.ambient, self.matrix))


def identity_isometry(L: Lattice) -> Isometry:
    return Isometry(L, identity_matrix(L.rank))


def reflection_isometry(L: Lattice, v) -> Isometry:
    """The involution x -> x - (2 q(x,v) / q(v)) v fixing v-perp pointwise.

    Requires q(v) != 0 and q(v) | 2 q(x,v) for every basis vector x, which
    holds automatically when q(v) is 1, -1, 2 or -2.
    """
    vec = as_vector(v)
    qv = norm(L, vec)
    if qv == 0:
        raise LatticeError("cannot reflect in a vector of norm zero")
    cols = []
    for j in range(L.rank):
        basis = L.basis_vector(j)
        twice = 2 * pairing(L, basis, vec)
        if twice % qv != 0:
            raise LatticeError(
                f"reflection in {vec} is not integral: q(v) = {qv} does not divide {twice}"
            )
        c = twice // qv
        cols.append(tuple(basis[i] - c * vec[i] for i in range(L.rank)))
    return Isometry(L, transpose(tuple(cols)))
