"""Standard test polytopes and seeded random rational hulls.

The verification corpus is simplices up to dimension 5, hypercubes and
cross-polytopes up to dimension 4, and twenty random rational hulls with at
most ten points in dimension at most 4.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import InputError
from .linalg import QMatrix, qvec
from .polytope import Polytope, affine_dim, validate


def simplex(d: int, name: str | None = None) -> Polytope:
    """conv{0, e_1, ..., e_d}; d = 0 gives the point polytope in R^0."""
    verts = [[0] * d]
    for i in range(d):
        v = [0] * d
        v[i] = 1
        verts.append(v)
    if d == 0:
        verts = [[]]
    return validate(verts, name=name or f"simplex{d}")


def point_polytope(name: str = "point") -> Polytope:
    return simplex(0, name=name)


def hypercube(d: int, name: str | None = None) -> Polytope:
    verts = [[(k >> i) & 1 for i in range(d)] for k in range(2 ** d)]
    return validate(verts, name=name or f"cube{d}")


def cross_polytope(d: int, name: str | None = None) -> Polytope:
    if d < 1:
        raise InputError("cross-polytope needs dimension >= 1")
    verts = []
    for i in range(d):
        plus = [0] * d
        plus[i] = 1
        minus = [0] * d
        minus[i] = -1
        verts.append(plus)
        verts.append(minus)
    return validate(verts, name=name or f"cross{d}")


def random_hull(rng: random.Random, dim: int, n_points: int,
                name: str | None = None) -> Polytope:
    """A validated random polytope: sample rational points, keep the extreme
    ones, retry until the hull is full-dimensional with enough vertices."""
    while True:
        pts = []
        seen = set()
        while len(pts) < n_points:
            p = tuple(Fraction(rng.randint(-8, 8), rng.choice((1, 1, 2, 3)))
                      for _ in range(dim))
            if p not in seen:
                seen.add(p)
                pts.append(p)
        if affine_dim(pts, dim) != dim:
            continue
        try:
            return validate(pts, name=name)
        except InputError:
            pass
        extreme = _extreme_subset(pts, dim)
        if len(extreme) >= dim + 1 and affine_dim(extreme, dim) == dim:
            return validate(extreme, name=name)


def _extreme_subset(pts: list, dim: int) -> list:
    from .polytope import _enumerate_facets, rank_of_vectors

    facets = _enumerate_facets(pts, dim)
    keep = []
    for i, p in enumerate(pts):
        tight = [f.normal for f in facets if i in f.vertex_set]
        if rank_of_vectors(tight, dim) == dim:
            keep.append(p)
    return keep


def acceptance_corpus(seed: int = 20240) -> list[Polytope]:
    """The full verification corpus, deterministic for a fixed seed."""
    rng = random.Random(seed)
    members: list[Polytope] = []
    members.extend(simplex(d) for d in range(1, 6))
    members.extend(hypercube(d) for d in range(1, 5))
    members.extend(cross_polytope(d) for d in range(1, 5))
    dims = [2, 3, 4]
    for k in range(20):
        dim = dims[k % len(dims)]
        n_points = rng.randint(dim + 1, 10)
        members.append(random_hull(rng, dim, n_points, name=f"random{k}_d{dim}"))
    return members


def small_corpus() -> list[Polytope]:
    """A quick corpus for unit tests."""
    return [
        point_polytope(),
        simplex(1),
        simplex(2, name="triangle"),
        simplex(3),
        hypercube(2, name="square"),
        hypercube(3, name="cube"),
        cross_polytope(3, name="octahedron"),
    ]


def random_invertible_affine(rng: random.Random, d: int) -> tuple[QMatrix, tuple]:
    """An exact invertible rational affine map (A, t), built from shears and
    nonzero diagonal scalings so invertibility never needs a determinant check."""
    A = QMatrix.identity(d)
    scalars = [Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2), Fraction(-3, 2)]
    for _ in range(3 * d):
        kind = rng.randrange(3)
        rows = [list(r) for r in A.entries]
        if d >= 2 and kind == 0:  # shear
            i, j = rng.sample(range(d), 2)
            c = Fraction(rng.randint(-2, 2))
            rows[i] = [x + c * y for x, y in zip(rows[i], rows[j])]
        elif kind == 1:  # scale a row
            i = rng.randrange(d)
            c = rng.choice(scalars)
            rows[i] = [c * x for x in rows[i]]
        else:  # swap rows
            if d >= 2:
                i, j = rng.sample(range(d), 2)
                rows[i], rows[j] = rows[j], rows[i]
        A = QMatrix.from_rows(rows, cols=d)
    t = tuple(Fraction(rng.randint(-4, 4), rng.choice((1, 2))) for _ in range(d))
    return A, t


def apply_affine(P: Polytope, A: QMatrix, t: tuple, name: str | None = None) -> Polytope:
    verts = [tuple(x + s for x, s in zip(A.mat_vec(v), qvec(t))) for v in P.vertices]
    return validate(verts, name=name or (P.name and P.name + "_affine"))
