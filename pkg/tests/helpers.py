"""Shared randomized generators for the test suite (always seeded)."""

from hilblat import (
    Lattice,
    Sublattice,
    det,
    identity_matrix,
    mat_mul,
    norm,
    rank_of,
    reflection_isometry,
)


def random_norm_pm2_vector(L, rng, max_entry=2, max_support=3):
    """A random vector of norm +2 or -2, by rejection sampling."""
    while True:
        coords = [0] * L.rank
        for _ in range(rng.randint(1, max_support)):
            coords[rng.randrange(L.rank)] = rng.randint(-max_entry, max_entry)
        if norm(L, coords) in (2, -2):
            return tuple(coords)


def random_reflection_product(L, rng, max_length=6):
    """Matrix of a random product of reflections in norm +-2 vectors."""
    m = identity_matrix(L.rank)
    for _ in range(rng.randint(1, max_length)):
        v = random_norm_pm2_vector(L, rng)
        m = mat_mul(m, reflection_isometry(L, v).matrix)
    return m


def random_symmetric_gram(rng, rank, lo=-3, hi=3):
    g = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        for j in range(i, rank):
            g[i][j] = g[j][i] = rng.randint(lo, hi)
    return tuple(tuple(row) for row in g)


def random_nondegenerate_lattice(rng, min_rank=1, max_rank=6, lo=-3, hi=3):
    while True:
        rank = rng.randint(min_rank, max_rank)
        g = random_symmetric_gram(rng, rank, lo, hi)
        if det(g) != 0:
            return Lattice(rank, g)


def random_sublattice(L, rng, allow_unsaturated=True):
    """A random sublattice with independent generators, sometimes rescaled
    to exercise saturation."""
    n = L.rank
    k = rng.randint(1, n)
    while True:
        rows = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(k)]
        if rank_of(rows, n) != k:
            continue
        if allow_unsaturated and rng.randint(0, 1):
            i = rng.randrange(k)
            rows[i] = [2 * x for x in rows[i]]
        return Sublattice(L, rows)


def random_signed_permutation(rng, n):
    perm = list(range(n))
    rng.shuffle(perm)
    signs = [rng.choice((1, -1)) for _ in range(n)]
    return tuple(
        tuple(signs[i] if perm[i] == j else 0 for j in range(n)) for i in range(n)
    )


def abstract_matrix_closure(gens, n, cap):
    """Closure of integer matrices under products; None when cap is exceeded.

    Unlike hilblat.closure this does not require a Gram matrix, so it can
    be used to build invariant forms from scratch.
    """
    ident = identity_matrix(n)
    elements = {ident}
    frontier = [ident]
    while frontier:
        fresh = []
        for a in frontier:
            for g in gens:
                c = mat_mul(a, g)
                if c not in elements:
                    if len(elements) >= cap:
                        return None
                    elements.add(c)
                    fresh.append(c)
        frontier = fresh
    return elements
