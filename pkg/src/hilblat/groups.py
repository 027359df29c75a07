"""Finite groups of lattice isometries: closure, fixed and coinvariant
sublattices, and signature-type classification of Picard blocks."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .core import (
    Isometry,
    Lattice,
    LatticeError,
    Matrix,
    SignatureTriple,
    Sublattice,
    as_matrix,
    det,
    identity_matrix,
    integer_kernel,
    isometry_violation,
    mat_mul,
    mat_vec,
    orthogonal_complement,
    rank_of,
    rational_span_leq,
    sub_signature,
)
from .douady import DouadyLattice, ExceptionalPair

DEFAULT_CLOSURE_CAP = 10_000


def _plain_lattice(target) -> Lattice:
    if isinstance(target, DouadyLattice):
        return target.full
    if isinstance(target, ExceptionalPair):
        return target.lattice
    if isinstance(target, Lattice):
        return target
    raise LatticeError("expected a lattice (possibly with exceptional structure)")


@dataclass(frozen=True, eq=False)
class IsometryGroup:
    """A finite isometry group, fully enumerated and sorted for determinism."""

    ambient: Lattice
    elements: tuple[Matrix, ...]
    generators: tuple[Matrix, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, matrix) -> bool:
        return as_matrix(matrix) in self.elements

    def __eq__(self, other):
        if not isinstance(other, IsometryGroup):
            return NotImplemented
        return self.ambient == other.ambient and self.elements == other.elements

    def __hash__(self):
        return hash((self.ambient, self.elements))


def closure(target, generators, cap: int = DEFAULT_CLOSURE_CAP) -> IsometryGroup:
    """Enumerate the group generated by the given isometries.

    Breadth-first products starting from the identity; raises once the
    order would exceed ``cap``, which signals an infinite or oversized
    group.
    """
    L = _plain_lattice(target)
    gens = []
    for g in generators:
        if isinstance(g, Isometry):
            if g.ambient != L:
                raise LatticeError("generator acts on a different lattice")
            m = g.matrix
        else:
            m = as_matrix(g)
            problem = isometry_violation(L, m)
            if problem is not None:
                raise LatticeError(f"generator is not an isometry: {problem}")
        gens.append(m)
    ident = identity_matrix(L.rank)
    elements = {ident}
    frontier = [ident]
    while frontier:
        fresh = []
        for a in frontier:
            for g in gens:
                c = mat_mul(a, g)
                if c not in elements:
                    if len(elements) >= cap:
                        raise LatticeError(
                            f"group order exceeds the enumeration cap {cap}"
                        )
                    elements.add(c)
                    fresh.append(c)
        frontier = fresh
    return IsometryGroup(L, tuple(sorted(elements)), tuple(gens))


def invariant_sublattice(G: IsometryGroup) -> Sublattice:
    """Saturated sublattice of vectors fixed by every group element.

    Computed as the integer kernel of the stacked matrices g - I over the
    generators only: a vector fixed by all generators is fixed by the
    whole group.
    """
    n = G.ambient.rank
    rows = []
    for g in G.generators:
        for i in range(n):
            rows.append(tuple(g[i][j] - (1 if i == j else 0) for j in range(n)))
    return Sublattice(G.ambient, integer_kernel(tuple(rows), n))


def coinvariant_sublattice(G: IsometryGroup) -> Sublattice:
    """Orthogonal complement of the fixed sublattice; saturated and G-stable."""
    return orthogonal_complement(G.ambient, invariant_sublattice(G))


@dataclass(frozen=True)
class PairReport:
    """Checks on the fixed sublattice and its orthogonal complement."""

    invariant: Sublattice
    coinvariant: Sublattice
    intersection_trivial: bool
    invariant_gram_det: int
    coinvariant_gram_det: int

    @property
    def invariant_nondegenerate(self) -> bool:
        return self.invariant_gram_det != 0

    @property
    def coinvariant_nondegenerate(self) -> bool:
        return self.coinvariant_gram_det != 0

    @property
    def all_pass(self) -> bool:
        return (
            self.intersection_trivial
            and self.invariant_nondegenerate
            and self.coinvariant_nondegenerate
        )


def verify_pair_properties(G: IsometryGroup) -> PairReport:
    """Verify that the fixed sublattice meets its orthogonal complement only
    in zero and that both restricted Gram matrices are nondegenerate.

    All three hold for any finite isometry group of a nondegenerate
    lattice; rank-0 pieces pass vacuously (empty determinant is 1).
    """
    if det(G.ambient.gram) == 0:
        raise LatticeError("ambient Gram matrix must be nondegenerate")
    inv = invariant_sublattice(G)
    co = orthogonal_complement(G.ambient, inv)
    trivial = (
        rank_of(inv.basis + co.basis, G.ambient.rank) == inv.rank + co.rank
    )
    return PairReport(inv, co, trivial, det(inv.gram()), det(co.gram()))


def transcendental_sublattice(L: Lattice, ns: Sublattice) -> Sublattice:
    """Orthogonal complement of a Neron-Severi block; always saturated."""
    return orthogonal_complement(L, ns)


class NSType(Enum):
    """Signature pattern of a Picard block of rank r."""

    HYPERBOLIC = "Hyperbolic"  # (1, 0, r-1)
    PARABOLIC = "Parabolic"  # (0, 1, r-1)
    ELLIPTIC = "Elliptic"  # (0, 0, r)


@dataclass(frozen=True)
class NSClassification:
    ns_type: NSType
    ns_signature: SignatureTriple
    tr_signature: SignatureTriple
    expected_tr_signature: tuple[int, int, int]
    companion_ok: bool
    transcendental: Sublattice


def ns_classification(L: Lattice, ns: Sublattice) -> NSClassification:
    """Classify a Neron-Severi block by the signature of the restricted form.

    Also computes the orthogonal complement and compares its signature with
    the companion pattern expected in an ambient lattice of signature
    (3, 0, b-3) and rank b: hyperbolic -> (2, 0, b-r-2), parabolic ->
    (2, 1, b-r-3), elliptic -> (3, 0, b-r-3).  A mismatch is flagged, not
    an error; a block signature matching none of the three patterns is an
    error.
    """
    if det(L.gram) == 0:
        raise LatticeError("ambient lattice must be nondegenerate")
    if ns.ambient != L:
        raise LatticeError("sublattice does not live in this lattice")
    rho = ns.rank
    ns_sig = sub_signature(ns)
    if ns_sig == (1, 0, rho - 1):
        kind = NSType.HYPERBOLIC
    elif ns_sig == (0, 1, rho - 1):
        kind = NSType.PARABOLIC
    elif ns_sig == (0, 0, rho):
        kind = NSType.ELLIPTIC
    else:
        raise LatticeError(
            f"signature {tuple(ns_sig)} matches no Picard-block pattern"
        )
    tr = orthogonal_complement(L, ns)
    tr_sig = sub_signature(tr)
    b = L.rank
    expected = {
        NSType.HYPERBOLIC: (2, 0, b - rho - 2),
        NSType.PARABOLIC: (2, 1, b - rho - 3),
        NSType.ELLIPTIC: (3, 0, b - rho - 3),
    }[kind]
    return NSClassification(
        ns_type=kind,
        ns_signature=ns_sig,
        tr_signature=tr_sig,
        expected_tr_signature=expected,
        companion_ok=tuple(tr_sig) == expected,
        transcendental=tr,
    )


def classify_ns_type(L: Lattice, ns: Sublattice) -> NSType:
    """Hyperbolic, Parabolic or Elliptic, per the restricted-form signature."""
    return ns_classification(L, ns).ns_type


def acts_trivially_on(G: IsometryGroup, s: Sublattice) -> bool:
    """Whether every group element fixes the sublattice pointwise.

    The sublattice must at least be stable (mapped into itself by every
    generator); otherwise the question is ill-posed and an error is
    raised.
    """
    if s.ambient != G.ambient:
        raise LatticeError("sublattice lives in a different lattice")
    images = [
        (v, mat_vec(g, v)) for g in G.generators for v in s.basis
    ]
    for _, gv in images:
        if not s.contains(gv):
            raise LatticeError("sublattice is not stable under the group")
    return all(gv == v for v, gv in images)


def is_negative_definite(s: Sublattice) -> bool:
    """True iff the restricted form has signature (0, 0, rank)."""
    return sub_signature(s) == (0, 0, s.rank)


@dataclass(frozen=True)
class SymplecticActionReport:
    """Verification record for a group action modeling a symplectic
    automorphism group at the lattice level.

    A failed line means the supplied action does not model a symplectic
    action, not that a theorem failed; whether a group really is
    symplectic is analytic and not decidable here.  The definiteness field
    is None in the hyperbolic case, where no claim is made.
    """

    ns_type: NSType
    fixes_transcendental_pointwise: bool
    transcendental_in_invariant: bool
    coinvariant_in_ns: bool
    coinvariant_negative_definite: Optional[bool]
    coinvariant_signature: SignatureTriple

    @property
    def all_verified(self) -> bool:
        checks = [
            self.fixes_transcendental_pointwise,
            self.transcendental_in_invariant,
            self.coinvariant_in_ns,
        ]
        if self.coinvariant_negative_definite is not None:
            checks.append(self.coinvariant_negative_definite)
        return all(checks)


def symplectic_action_report(
    target, G: IsometryGroup, ns: Sublattice
) -> SymplecticActionReport:
    """Check the lattice-level conclusions expected of a symplectic action.

    Given a group acting on the ambient lattice and a Neron-Severi block
    stable under it, reports whether (1) the transcendental block is fixed
    pointwise, (2) it sits inside the fixed sublattice while the
    coinvariant sublattice sits inside the Neron-Severi block, and (3) in
    the parabolic and elliptic cases, whether the coinvariant sublattice is
    negative definite.  The coinvariant signature is always reported.
    """
    amb = _plain_lattice(target)
    if G.ambient != amb:
        raise LatticeError("group acts on a different lattice")
    if ns.ambient != amb:
        raise LatticeError("sublattice lives in a different lattice")
    for g in G.generators:
        for v in ns.basis:
            if not ns.contains(mat_vec(g, v)):
                raise LatticeError(
                    "the Neron-Severi block is not stable under the group"
                )
    cls = ns_classification(amb, ns)
    tr = cls.transcendental
    fixes = all(mat_vec(g, v) == v for g in G.generators for v in tr.basis)
    inv = invariant_sublattice(G)
    co = orthogonal_complement(amb, inv)
    negdef = (
        is_negative_definite(co)
        if cls.ns_type in (NSType.PARABOLIC, NSType.ELLIPTIC)
        else None
    )
    return SymplecticActionReport(
        ns_type=cls.ns_type,
        fixes_transcendental_pointwise=fixes,
        transcendental_in_invariant=rational_span_leq(tr, inv),
        coinvariant_in_ns=rational_span_leq(co, ns),
        coinvariant_negative_definite=negdef,
        coinvariant_signature=sub_signature(co),
    )
