"""The K3 lattice, its rank-23 extension for Douady spaces of n points,
and the invariants attached to the exceptional divisor class.

The extended lattice carries a distinguished primitive class delta in its
last coordinate, orthogonal to the embedded K3 block, with
q(delta) = -2(n-1).  The class of the exceptional divisor is e = 2*delta,
so q(e) = -8(n-1).  An isometry is natural (induced by a surface isometry)
exactly when it fixes delta, in which case it splits as a block matrix
(surface part, identity).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from typing import NamedTuple, Union

from .core import (
    Isometry,
    Lattice,
    LatticeError,
    Matrix,
    Sublattice,
    Vector,
    _exact_vector,
    as_matrix,
    as_vector,
    diagonal_lattice,
    direct_sum,
    isometry_violation,
    mat_vec,
    norm,
    pairing,
    rescale,
    signature,
)

K3_RANK = 22

# Dynkin diagram of E8: chain 1-3-4-5-6-7-8 with node 2 attached to node 4
# (0-indexed below).
_E8_EDGES = ((0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7))


@cache
def hyperbolic_plane() -> Lattice:
    """The even unimodular rank-2 lattice U with Gram [[0,1],[1,0]]."""
    return Lattice.from_gram(((0, 1), (1, 0)), label="U")


@cache
def e8_lattice() -> Lattice:
    """The positive-definite E8 root lattice (Cartan-matrix Gram, determinant 1)."""
    gram = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
    for i, j in _E8_EDGES:
        gram[i][j] = gram[j][i] = -1
    return Lattice.from_gram(gram, label="E8")


@cache
def e8_minus() -> Lattice:
    return rescale(e8_lattice(), -1, label="E8_MINUS")


@cache
def k3_lattice() -> Lattice:
    """The rank-22 even unimodular lattice of signature (3, 0, 19).

    Fixed basis order: three hyperbolic planes followed by two copies of
    the negated E8 lattice.
    """
    blocks = [hyperbolic_plane()] * 3 + [e8_minus()] * 2
    L = blocks[0]
    for block in blocks[1:]:
        L = direct_sum(L, block)
    return Lattice(K3_RANK, L.gram, label="K3")


@dataclass(frozen=True)
class DouadyLattice:
    """Second-cohomology lattice of the Douady space of n points on a K3
    surface: the K3 lattice extended by Z*delta in the last coordinate."""

    n: int
    full: Lattice

    @property
    def rank(self) -> int:
        return self.full.rank

    @property
    def delta_index(self) -> int:
        """Basis position of the distinguished class delta."""
        return K3_RANK

    @property
    def delta(self) -> Vector:
        return (0,) * K3_RANK + (1,)

    @property
    def e(self) -> Vector:
        """The exceptional divisor class e = 2*delta."""
        return (0,) * K3_RANK + (2,)

    @property
    def surface_block(self) -> Lattice:
        return k3_lattice()

    def k3_sublattice(self) -> Sublattice:
        rows = tuple(self.full.basis_vector(i) for i in range(K3_RANK))
        return Sublattice(self.full, rows)


def douady_lattice(n: int) -> DouadyLattice:
    """Build the rank-23 lattice for the Douady space of n points (n >= 2)."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise LatticeError("the number of points n must be an integer >= 2")
    full = direct_sum(
        k3_lattice(), diagonal_lattice((-2 * (n - 1),)), label=f"DOUADY({n})"
    )
    return DouadyLattice(n, full)


@dataclass(frozen=True)
class ExceptionalPair:
    """A lattice with a designated exceptional class in its last coordinate.

    The class must be a nonzero multiple of the last basis vector, which
    must be orthogonal to the other basis vectors and of nonzero norm.
    This is the ambient structure needed for index and naturality
    computations when only a block of the full rank-23 lattice is modeled,
    e.g. a rank-2 Picard block.
    """

    lattice: Lattice
    e: Vector

    def __post_init__(self):
        vec = as_vector(self.e)
        n = self.lattice.rank
        if len(vec) != n:
            raise LatticeError("exceptional class length does not match the rank")
        if n == 0 or any(vec[:-1]) or vec[-1] == 0:
            raise LatticeError(
                "exceptional class must be a nonzero multiple of the last basis vector"
            )
        gram = self.lattice.gram
        if gram[-1][-1] == 0 or any(gram[-1][j] for j in range(n - 1)):
            raise LatticeError(
                "the exceptional coordinate must be orthogonal to the rest "
                "and of nonzero norm"
            )
        object.__setattr__(self, "e", vec)

    @property
    def surface_block(self) -> Lattice:
        rows = tuple(row[:-1] for row in self.lattice.gram[:-1])
        return Lattice(self.lattice.rank - 1, rows)


ExceptionalTarget = Union[DouadyLattice, ExceptionalPair]


def _target(D) -> tuple[Lattice, Vector]:
    if isinstance(D, DouadyLattice):
        return D.full, D.e
    if isinstance(D, ExceptionalPair):
        return D.lattice, D.e
    raise LatticeError("expected a Douady lattice or an exceptional pair")


def _isometry_matrix(L: Lattice, f) -> Matrix:
    if isinstance(f, Isometry):
        if f.ambient != L:
            raise LatticeError("isometry acts on a different lattice")
        return f.matrix
    m = as_matrix(f)
    problem = isometry_violation(L, m)
    if problem is not None:
        raise LatticeError(f"not an isometry: {problem}")
    return m


def iota(D: ExceptionalTarget, v) -> Vector:
    """Pairing-preserving embedding of a surface class: pad with a zero
    exceptional coordinate."""
    amb, _ = _target(D)
    vec = as_vector(v)
    if len(vec) != amb.rank - 1:
        raise LatticeError(
            f"surface class must have {amb.rank - 1} coordinates, got {len(vec)}"
        )
    return vec + (0,)


def e_class(D: ExceptionalTarget) -> Vector:
    """Coordinates of the exceptional divisor class e."""
    return _target(D)[1]


def delta_class(D: DouadyLattice) -> Vector:
    """Coordinates of the primitive class delta = e / 2."""
    if not isinstance(D, DouadyLattice):
        raise LatticeError("delta is integral only on the full Douady lattice")
    return D.delta


def index_invariant(D: ExceptionalTarget, f) -> Fraction:
    """The index q(f(e), e) / q(e) of an isometry, as an exact rational.

    Equals 1 for every natural isometry; invariant under composition with
    isometries fixing e on either side.
    """
    amb, e = _target(D)
    m = _isometry_matrix(amb, f)
    return Fraction(pairing(amb, mat_vec(m, e), e), norm(amb, e))


class PullbackDecomposition(NamedTuple):
    """f(e) written as lam * e + iota(d) with d in the surface block."""

    lam: Fraction
    d: Vector


def pullback_decomposition(D: ExceptionalTarget, f) -> PullbackDecomposition:
    """Split the image of e along the exceptional line and the surface block."""
    amb, e = _target(D)
    m = _isometry_matrix(amb, f)
    fe = mat_vec(m, e)
    lam = Fraction(fe[-1], e[-1])
    assert lam == Fraction(pairing(amb, fe, e), norm(amb, e))
    return PullbackDecomposition(lam, fe[:-1])


def natural_lift(D: ExceptionalTarget, phi) -> Isometry:
    """Extend an isometry of the surface block by the identity on delta.

    An injective group homomorphism; every lift fixes delta and has
    index 1.
    """
    amb, _ = _target(D)
    m = _isometry_matrix(D.surface_block, phi)
    n = amb.rank
    rows = [row + (0,) for row in m]
    rows.append((0,) * (n - 1) + (1,))
    return Isometry(amb, tuple(rows))


def is_natural_on_lattice(D: ExceptionalTarget, f) -> bool:
    """Lattice-level naturality criterion: the exceptional class is fixed.

    On the full Douady lattice this is f(delta) = delta; a natural isometry
    then stabilizes the embedded K3 block and splits as (surface part, id).
    """
    amb, e = _target(D)
    m = _isometry_matrix(amb, f)
    return mat_vec(m, e) == e


def extract_surface_isometry(D: ExceptionalTarget, f) -> Isometry:
    """Recover the surface-block isometry of a natural isometry.

    Inverse to natural_lift; raises when the exceptional class is moved.
    """
    amb, e = _target(D)
    m = _isometry_matrix(amb, f)
    if mat_vec(m, e) != e:
        raise LatticeError(
            f"the exceptional class is not fixed (image {mat_vec(m, e)}); "
            "no surface isometry to extract"
        )
    n = amb.rank
    # fixing e forces the block shape: last column is the last unit vector,
    # and orthogonality of e-perp makes the last row vanish off the corner
    assert all(m[i][-1] == (1 if i == n - 1 else 0) for i in range(n))
    assert all(m[-1][j] == 0 for j in range(n - 1))
    return Isometry(D.surface_block, tuple(row[:-1] for row in m[:-1]))


def psi_first_chern(D: DouadyLattice, c, k: int = 1) -> Vector:
    """Chern class k*n*iota(c) - e of the determinant bundle attached to a
    surface line bundle with first Chern class c, twisted down by the
    exceptional divisor."""
    if not isinstance(D, DouadyLattice):
        raise LatticeError("this Chern-class formula needs the full Douady lattice")
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise LatticeError("the exponent k must be a positive integer")
    cv = as_vector(c)
    if len(cv) != K3_RANK:
        raise LatticeError(f"surface class must have {K3_RANK} coordinates")
    return tuple(k * D.n * x for x in cv) + (-2,)


def index_norm_solutions(
    n: int, d2: int, bound: int
) -> tuple[tuple[int, int], ...]:
    """All integer pairs (lam, mu) with -8(n-1) = -8(n-1)*lam^2 + mu^2*d2
    and |lam|, |mu| <= bound, by exhaustive search over the box.

    This is the norm equation satisfied by an isometry with
    f(e) = lam*e + mu*iota(d), d a generator of a rank-1 Picard block with
    d^2 = d2.  The result is sorted and always contains (1, 0) and (-1, 0);
    for d2 > 0 no solution has lam = 0.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise LatticeError("the number of points n must be an integer >= 2")
    if isinstance(d2, bool) or not isinstance(d2, int) or d2 == 0:
        raise LatticeError("d2 must be a nonzero integer")
    if isinstance(bound, bool) or not isinstance(bound, int) or bound < 1:
        raise LatticeError("bound must be a positive integer")
    qe = -8 * (n - 1)
    out = []
    for lam in range(-bound, bound + 1):
        rest = qe - qe * lam * lam
        for mu in range(-bound, bound + 1):
            if mu * mu * d2 == rest:
                out.append((lam, mu))
    return tuple(sorted(out))


def same_positive_cone_component(L: Lattice, x, y) -> bool:
    """Whether two positive-norm vectors lie in the same component of {q > 0}.

    Requires signature (1, 0, k): the positive-norm locus is then the
    disjoint union of two opposite open convex cones, and lying in a common
    one is equivalent to q(x, y) > 0.
    """
    sig = signature(L)
    if sig.pos != 1 or sig.zero != 0:
        raise LatticeError(f"signature (1, 0, k) required, got {tuple(sig)}")
    if norm(L, x) <= 0 or norm(L, y) <= 0:
        raise LatticeError("both vectors must have positive norm")
    return pairing(L, x, y) > 0


@dataclass(frozen=True)
class KahlerCandidateReport:
    """Truth values of the three lattice-level conditions a Kaehler class
    must satisfy, for a class omega = iota(omega_0) + lam * e.

    Passing all three is necessary, never sufficient: whether a class is
    actually Kaehler is analytic and out of reach of lattice arithmetic.
    """

    e_coefficient: Fraction
    q_total: Fraction
    q_against_e: Fraction
    q_surface_part: Fraction
    positive_norm: bool
    positive_against_e: bool
    surface_part_positive: bool

    @property
    def all_conditions_hold(self) -> bool:
        return (
            self.positive_norm
            and self.positive_against_e
            and self.surface_part_positive
        )


def kahler_candidate_check(D: ExceptionalTarget, omega) -> KahlerCandidateReport:
    """Evaluate the Kaehler-candidate conditions on a rational class.

    The class is given in ambient coordinates and decomposed as
    iota(omega_0) + lam * e.  Reported conditions: q(omega) > 0;
    q(omega, e) > 0, which is equivalent to lam < 0 since q(e) < 0; and
    q(omega_0) > 0, which q(omega) > 0 forces via
    q(omega) = q(omega_0) + lam^2 q(e).
    """
    amb, e = _target(D)
    vec = _exact_vector(omega)
    if len(vec) != amb.rank:
        raise LatticeError("class length does not match the lattice rank")
    lam = Fraction(vec[-1], e[-1])
    omega0 = vec[:-1]
    q_total = Fraction(pairing(amb, vec, vec))
    q_e = Fraction(pairing(amb, vec, e))
    block = D.surface_block
    q_surface = Fraction(pairing(block, omega0, omega0))
    return KahlerCandidateReport(
        e_coefficient=lam,
        q_total=q_total,
        q_against_e=q_e,
        q_surface_part=q_surface,
        positive_norm=q_total > 0,
        positive_against_e=q_e > 0,
        surface_part_positive=q_surface > 0,
    )


def beauville_fixture() -> tuple[ExceptionalPair, Matrix]:
    """Rank-2 Picard block of the Douady space of 2 points on a generic
    quartic surface, with the Beauville involution.

    Basis (h, e): h the hyperplane class with h^2 = 4, e the exceptional
    class with q(e) = -8.  The involution sends h to 3h - 2e and e to
    4h - 3e; it is an isometry of index -3 and is not natural.
    """
    pair = ExceptionalPair(
        diagonal_lattice((4, -8), label="quartic-P2"), (0, 1)
    )
    involution = ((3, 4), (-2, -3))
    return pair, involution
