"""The lifted cone of a polytope and its duality apparatus.

A polytope P in R^d lifts to the cone over 1 x P in R^n, n = d + 1; each
face F of P spans a subcone whose linear span has dimension dim F + 1.  For
every face we compute

  * a deterministic basis of the span (lifted vertices, greedy in index order),
  * the generators of the dual face (facet normals of the cone vanishing on F),
  * the generators of the associated dual-of-the-dual-face cone, taken inside
    the linear span of the dual face (written ``circledast`` here).

For a covering pair E < F the intersection of the circledast cone of E with
the orthogonal complement of the dual face of F is a single extreme ray; its
primitive integer generator plays the role of the unit edge vector in the
incidence-sign determinant.  Unit normalization is irrelevant to signs, so
primitive integer ray generators replace unit vectors throughout and keep
the arithmetic exact.

A second, independent construction of the same ray (orthogonal projection of
the barycenter of the lifted F-vertices away from the span of E) is used as
a cross-check: the two must agree up to a strictly positive rational factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import InternalInvariantError
from .linalg import (
    IntVector,
    QMatrix,
    Vector,
    cofactor_kernel_vector,
    coords_in_basis,
    dot,
    is_zero_vector,
    primitive_vector,
    qvec,
    rank,
    rank_of_vectors,
)
from .polytope import Face, Polytope


@dataclass(frozen=True)
class LiftedCone:
    """The cone over 1 x P: pointed, solid, with explicit dual generators."""

    dim: int  # n = ambient polytope dimension + 1
    base: Polytope
    generators: tuple[Vector, ...]  # lifted vertices (1, v_i), in vertex order
    facet_normals: tuple[IntVector, ...]  # primitive generators of the dual cone


@dataclass(frozen=True)
class FaceConeData:
    """Per-face duality data inside the lifted cone."""

    face: Face
    span_basis: QMatrix  # columns: greedy independent lifted vertices of the face
    dual_face_gens: tuple[IntVector, ...]
    circledast_gens: tuple[IntVector, ...]


@dataclass(frozen=True)
class EdgeRay:
    """Primitive generator of the edge ray attached to a covering pair."""

    pair: tuple[Face, Face]
    direction: IntVector


def dual_cone(gens: Sequence[Sequence], ambient_dim: int | None = None) -> tuple[IntVector, ...]:
    """Primitive generators (extreme rays) of {y : <y, g> >= 0 for all g}.

    The input generators must span the ambient space (the cone must be
    solid), which makes the dual pointed; its extreme rays are then exactly
    the facet normals of the input cone, found by brute-force enumeration of
    spanning (n-1)-subsets.
    """
    gens = [qvec(g) for g in gens]
    if ambient_dim is None:
        if not gens:
            raise InternalInvariantError("dual_cone needs generators or an explicit dimension")
        ambient_dim = len(gens[0])
    n = ambient_dim
    if n == 0:
        return ()
    if rank_of_vectors(gens, n) < n:
        raise InternalInvariantError("dual_cone: input cone is not solid in its ambient space")
    int_gens = [primitive_vector(g) for g in gens if not is_zero_vector(g)]
    seen: set[IntVector] = set()  # hyperplanes already classified, canonical orientation
    out: set[IntVector] = set()
    for subset in combinations(range(len(int_gens)), n - 1):
        normal = cofactor_kernel_vector([int_gens[i] for i in subset], n)
        if normal is None:
            continue
        normal = primitive_vector(normal)
        lead = next(x for x in normal if x != 0)
        canonical = normal if lead > 0 else tuple(-x for x in normal)
        if canonical in seen:
            continue
        seen.add(canonical)
        supports_pos = supports_neg = True
        for g in int_gens:
            s = sum(a * b for a, b in zip(normal, g))
            if s > 0:
                supports_neg = False
            elif s < 0:
                supports_pos = False
            if not supports_pos and not supports_neg:
                break
        if supports_pos:
            out.add(normal)
        elif supports_neg:
            out.add(tuple(-x for x in normal))
    return tuple(sorted(out))


def dual_cone_in_span(span_basis: QMatrix, gens: Sequence[Sequence]) -> tuple[IntVector, ...]:
    """Dual of cone(gens) computed inside the column span of ``span_basis``.

    The generators must span the subspace.  Working in coordinates: a point
    B @ xi of the span pairs with y as <B @ xi, y> = <xi, B^T y>, so the dual
    inside the span is the ordinary dual of the cone over the vectors B^T y.
    Results are mapped back to ambient primitive integer vectors.
    """
    k = span_basis.cols
    if k == 0:
        return ()
    bt = span_basis.transpose()
    projected = [bt.mat_vec(qvec(y)) for y in gens]
    rays = dual_cone(projected, ambient_dim=k)
    ambient = [primitive_vector(span_basis.mat_vec(xi)) for xi in rays]
    return tuple(sorted(ambient))


def lift(P: Polytope) -> LiftedCone:
    """Build the lifted cone with exact facet normals.

    Pointedness is witnessed by the functional (1, 0, ..., 0), which is
    strictly positive on every generator; solidity follows from the polytope
    being full-dimensional.  Both are asserted.
    """
    n = P.ambient_dim + 1
    gens = tuple(P.lifted_vertex(i) for i in range(P.nvertices))
    witness = (Fraction(1),) + (Fraction(0),) * P.ambient_dim
    if any(dot(witness, g) <= 0 for g in gens):
        raise InternalInvariantError("lifted cone is not pointed")
    if rank_of_vectors(gens, n) != n:
        raise InternalInvariantError("lifted cone is not solid")
    normals = dual_cone(gens, ambient_dim=n)
    return LiftedCone(dim=n, base=P, generators=gens, facet_normals=normals)


def span_basis_of_face(C: LiftedCone, F: Face) -> QMatrix:
    """Greedy maximal independent subset of the lifted vertices of F, in
    increasing vertex-index order; dim F + 1 columns (0 for the empty face)."""
    n = C.dim
    cols: list[Vector] = []
    current = QMatrix(n, 0, tuple(() for _ in range(n)))
    for i in F.vertex_set:
        candidate = QMatrix.from_columns(cols + [C.generators[i]], rows=n)
        if rank(candidate) > len(cols):
            cols.append(C.generators[i])
            current = candidate
        if len(cols) == F.dim + 1:
            break
    if len(cols) != F.dim + 1:
        raise InternalInvariantError(
            f"face {F}: span has {len(cols)} independent lifted vertices, expected {F.dim + 1}")
    return current if cols else QMatrix(n, 0, tuple(() for _ in range(n)))


def face_cone_data(C: LiftedCone, F: Face) -> FaceConeData:
    """Span basis, dual-face generators, and circledast generators of a face.

    The dual face is a face of the dual cone, hence generated by the facet
    normals of the cone that vanish on every lifted vertex of F.  Its span
    must have dimension n - (dim F + 1); anything else is a geometry bug.
    """
    n = C.dim
    span_basis = span_basis_of_face(C, F)
    dual_gens = tuple(
        y for y in C.facet_normals
        if all(dot(y, C.generators[i]) == 0 for i in F.vertex_set))
    expected = n - (F.dim + 1)
    if rank_of_vectors(dual_gens, n) != expected:
        raise InternalInvariantError(
            f"dual face of {F} spans rank {rank_of_vectors(dual_gens, n)}, expected {expected}")
    dual_span = _greedy_independent(dual_gens, n)
    circledast = dual_cone_in_span(dual_span, dual_gens)
    return FaceConeData(face=F, span_basis=span_basis,
                        dual_face_gens=dual_gens, circledast_gens=circledast)


def _greedy_independent(vectors: Sequence[Sequence], n: int) -> QMatrix:
    cols: list[Vector] = []
    for v in vectors:
        candidate = QMatrix.from_columns(cols + [qvec(v)], rows=n)
        if rank(candidate) > len(cols):
            cols.append(qvec(v))
    if not cols:
        return QMatrix(n, 0, tuple(() for _ in range(n)))
    return QMatrix.from_columns(cols, rows=n)


def edge_ray(C: LiftedCone, E: Face, F: Face,
             data_E: FaceConeData | None = None,
             data_F: FaceConeData | None = None) -> EdgeRay:
    """The primitive generator of the edge ray of a covering pair (E, F).

    It is the unique circledast generator of E orthogonal to the dual face
    of F; the sign is thereby fixed (membership in the circledast cone of E).
    All membership invariants are re-verified exactly before returning.
    """
    data_E = data_E or face_cone_data(C, E)
    data_F = data_F or face_cone_data(C, F)
    candidates = [g for g in data_E.circledast_gens
                  if all(dot(g, y) == 0 for y in data_F.dual_face_gens)]
    if len(candidates) != 1:
        raise InternalInvariantError(
            f"edge ray of ({E}, {F}): intersection has {len(candidates)} extreme rays, "
            "expected exactly 1")
    direction = candidates[0]
    span_F = data_F.span_basis
    stacked = span_F.hstack(QMatrix.from_columns([direction], rows=C.dim))
    if rank(stacked) != span_F.cols:
        raise InternalInvariantError(f"edge ray of ({E}, {F}) leaves the span of {F}")
    for col in data_E.span_basis.columns():
        if dot(direction, col) != 0:
            raise InternalInvariantError(f"edge ray of ({E}, {F}) not orthogonal to span of {E}")
    if any(dot(direction, y) < 0 for y in data_E.dual_face_gens):
        raise InternalInvariantError(f"edge ray of ({E}, {F}) outside circledast cone of {E}")
    return EdgeRay(pair=(E, F), direction=direction)


def edge_ray_crosscheck(C: LiftedCone, E: Face, F: Face) -> Vector:
    """Independent reconstruction of the edge-ray direction of (E, F).

    Returns the component of the barycenter of the lifted F-vertices
    orthogonal to the span of E (within the span of F).  By construction it
    must be a strictly positive rational multiple of the edge-ray direction.
    """
    lifted = [C.generators[i] for i in F.vertex_set]
    m = len(lifted)
    bary = tuple(sum(col, start=Fraction(0)) / m for col in zip(*lifted))
    A = span_basis_of_face(C, E)
    if A.cols == 0:
        w = bary
    else:
        at = A.transpose()
        gram = at @ A
        rhs = QMatrix.from_columns([at.mat_vec(bary)])
        x = coords_in_basis(gram, rhs)
        proj = A.mat_vec(x.column(0))
        w = tuple(b - p for b, p in zip(bary, proj))
    if is_zero_vector(w):
        raise InternalInvariantError(f"barycenter of {F} projects to zero over {E}")
    return w


def positive_multiple_ratio(w: Sequence, direction: Sequence) -> Fraction | None:
    """The rational lambda > 0 with w = lambda * direction, or None."""
    wq = qvec(w)
    dq = qvec(direction)
    idx = next((i for i, x in enumerate(dq) if x != 0), None)
    if idx is None:
        return None
    lam = wq[idx] / dq[idx]
    if lam <= 0:
        return None
    if wq != tuple(lam * x for x in dq):
        return None
    return lam


class ConeSystem:
    """Memoizing wrapper around per-face cone data and edge rays.

    Safe to share within a run: all cached values are immutable.
    """

    def __init__(self, cone: LiftedCone):
        self.cone = cone
        self._face_data: dict[Face, FaceConeData] = {}
        self._rays: dict[tuple[Face, Face], EdgeRay] = {}
        self._crosschecks: dict[tuple[Face, Face], Vector] = {}

    @classmethod
    def ensure(cls, obj: "LiftedCone | ConeSystem") -> "ConeSystem":
        return obj if isinstance(obj, ConeSystem) else cls(obj)

    def face_data(self, F: Face) -> FaceConeData:
        if F not in self._face_data:
            self._face_data[F] = face_cone_data(self.cone, F)
        return self._face_data[F]

    def ray(self, E: Face, F: Face) -> EdgeRay:
        key = (E, F)
        if key not in self._rays:
            self._rays[key] = edge_ray(self.cone, E, F,
                                       data_E=self.face_data(E), data_F=self.face_data(F))
        return self._rays[key]

    def crosscheck(self, E: Face, F: Face) -> Vector:
        key = (E, F)
        if key not in self._crosschecks:
            self._crosschecks[key] = edge_ray_crosscheck(self.cone, E, F)
        return self._crosschecks[key]
