"""Independent oracles for the test suite.

Everything here deliberately avoids the library's computational paths:
determinants by Leibniz expansion over permutations, rank by maximal nonzero
minors, convex-hull membership by Caratheodory enumeration, face enumeration
by maximizing integer directions, and the classical simplicial boundary
formula with alternating signs.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations

from polyk.linalg import QMatrix


def leibniz_det(rows) -> Fraction:
    """Determinant as the signed sum over all permutations."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("square matrix required")
    total = Fraction(0)
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):  # count inversions for the permutation sign
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = Fraction(1)
        for i in range(n):
            term *= Fraction(rows[i][perm[i]])
        total += sign * term
    return total


def oracle_rank(rows, n_cols: int) -> int:
    """Largest k with a nonzero k x k minor."""
    n_rows = len(rows)
    for k in range(min(n_rows, n_cols), 0, -1):
        for rsel in combinations(range(n_rows), k):
            for csel in combinations(range(n_cols), k):
                minor = [[rows[r][c] for c in csel] for r in rsel]
                if leibniz_det(minor) != 0:
                    return k
    return 0


def in_convex_hull(point, points, dim: int) -> bool:
    """Caratheodory enumeration: is the point a convex combination of the
    others?  Solves the affine system exactly on every subset of size at
    most dim + 1 and checks nonnegativity."""
    from polyk.linalg import solve_in_span

    target = tuple(Fraction(x) for x in point) + (Fraction(1),)
    for k in range(1, dim + 2):
        for subset in combinations(range(len(points)), k):
            cols = [tuple(Fraction(x) for x in points[i]) + (Fraction(1),) for i in subset]
            sol = solve_in_span(QMatrix.from_columns(cols), target)
            if sol is not None and all(c >= 0 for c in sol):
                return True
    return False


def faces_by_direction(vertices, dim: int, radius: int = 1) -> set[tuple[int, ...]]:
    """Vertex sets of faces found as argmax sets of small integer directions.

    Complete for the structured corpus (simplices, cubes, cross-polytopes,
    and their affine friends with radius 2): every face's normal cone there
    contains a direction with coordinates in [-radius, radius].
    """
    def directions(prefix):
        if not prefix:
            yield ()
            return
        for rest in directions(prefix[1:]):
            for c in range(-radius, radius + 1):
                yield (c,) + rest

    found: set[tuple[int, ...]] = set()
    for a in directions([0] * dim):
        values = [sum(Fraction(c) * x for c, x in zip(a, v)) for v in vertices]
        top = max(values)
        found.add(tuple(i for i, v in enumerate(values) if v == top))
    return found


def simplicial_boundary_matrices(d: int) -> list[list[list[int]]]:
    """Augmented simplicial chain complex of the d-simplex on vertices 0..d.

    Faces of dimension j are the (j+1)-subsets in lexicographic order; the
    boundary of a face drops one vertex at a time with alternating signs,
    and the augmentation sends every vertex to the empty face with sign +1.
    """
    levels = [[()]] + [sorted(combinations(range(d + 1), j + 1)) for j in range(d + 1)]
    matrices = []
    for j in range(0, d + 1):
        rows = {face: i for i, face in enumerate(levels[j])}
        cols = levels[j + 1]
        mat = [[0] * len(cols) for _ in rows]
        for cj, face in enumerate(cols):
            for drop in range(len(face)):
                sub = face[:drop] + face[drop + 1:]
                mat[rows[sub]][cj] = (-1) ** drop if sub else 1
        matrices.append(mat)
    return matrices
