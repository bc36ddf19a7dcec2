"""Combinatorial type: recover the face lattice from unsigned incidence data
and decide lattice isomorphism between polytopes.

The absolute values of the boundary-matrix entries record exactly the
covering relation of the face lattice; transitive closure then recovers the
whole order, so the unsigned complex determines the combinatorial type.
Isomorphism testing is rank-by-rank backtracking, pruned by f-vector and
up/down cover degrees, returning either a verified bijection on faces or a
certificate of non-isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable

from .cellular import ChainComplex
from .errors import InternalInvariantError
from .linalg import IntMatrix, int_mat_abs
from .polytope import FaceLattice

Element = Hashable


@dataclass(frozen=True)
class UnsignedIncidence:
    """Entrywise absolute values of the boundary matrices."""

    matrices: tuple[IntMatrix, ...]


def strip_signs(X: ChainComplex) -> UnsignedIncidence:
    return UnsignedIncidence(matrices=tuple(int_mat_abs(m) for m in X.boundary))


@dataclass(frozen=True)
class AbstractLattice:
    """A graded lattice reconstructed without coordinates.

    Elements are (rank, index) pairs with rank from -1 (bottom) to dim (top).
    """

    dim: int
    f_vector: tuple[int, ...]
    covering: tuple[tuple[tuple[int, int], tuple[int, int]], ...]

    def elements(self, rank: int) -> tuple[tuple[int, int], ...]:
        return tuple((rank, i) for i in range(self.f_vector[rank + 1]))


def lattice_from_incidence(U: UnsignedIncidence) -> AbstractLattice:
    """Rebuild the abstract face lattice from unsigned boundary matrices.

    The support of the matrices is taken as the covering relation; the
    result is checked against the lattice axioms of a polytope face lattice
    (bounded, graded, diamond property, meets exist) and any failure means
    the incidence data is corrupt.
    """
    mats = U.matrices
    if not mats:
        raise InternalInvariantError("no incidence matrices")
    dim = len(mats) - 1
    f_vector = [len(mats[0])] + [len(m[0]) if m else 0 for m in mats]
    for j in range(1, len(mats)):
        if len(mats[j]) != f_vector[j]:
            raise InternalInvariantError(
                f"incidence matrices dimensionally inconsistent at rank {j}")
    covering = []
    for j, m in enumerate(mats):
        for r, row in enumerate(m):
            for c, x in enumerate(row):
                if x not in (0, 1):
                    raise InternalInvariantError(f"unsigned incidence entry {x} not in {{0, 1}}")
                if x == 1:
                    covering.append(((j - 1, r), (j, c)))
    lat = AbstractLattice(dim=dim, f_vector=tuple(f_vector), covering=tuple(covering))
    _verify_abstract_lattice(lat)
    return lat


def _verify_abstract_lattice(lat: AbstractLattice) -> None:
    if lat.f_vector[0] != 1 or lat.f_vector[-1] != 1:
        raise InternalInvariantError(
            f"reconstructed poset is not bounded: f-vector {lat.f_vector}")
    up: dict[tuple[int, int], set] = {e: set() for r in range(-1, lat.dim + 1)
                                      for e in lat.elements(r)}
    down: dict[tuple[int, int], set] = {e: set() for e in up}
    for a, b in lat.covering:
        up[a].add(b)
        down[b].add(a)
    for rank in range(-1, lat.dim):
        for e in lat.elements(rank):
            if not up[e]:
                raise InternalInvariantError(f"element {e} has no upper cover: not graded")
    for rank in range(0, lat.dim + 1):
        for e in lat.elements(rank):
            if not down[e]:
                raise InternalInvariantError(f"element {e} has no lower cover: not graded")
    for rank in range(-1, lat.dim - 1):
        for low in lat.elements(rank):
            for high in lat.elements(rank + 2):
                mids = [m for m in up[low] if high in up[m]]
                if mids and len(mids) != 2:
                    raise InternalInvariantError(
                        f"diamond property fails between {low} and {high}: {len(mids)} mids")
    # meets must exist: the common down-set of any two elements has a unique maximum
    downset: dict[tuple[int, int], frozenset] = {}
    for rank in range(-1, lat.dim + 1):
        for e in lat.elements(rank):
            ds = {e}
            for d in down[e]:
                ds |= downset[d]
            downset[e] = frozenset(ds)
    all_elements = [e for r in range(-1, lat.dim + 1) for e in lat.elements(r)]
    for i, a in enumerate(all_elements):
        for b in all_elements[i + 1:]:
            common = downset[a] & downset[b]
            maximal = [x for x in common if not any(y != x and x in downset[y] for y in common)]
            if len(maximal) != 1:
                raise InternalInvariantError(
                    f"meet of {a} and {b} is not unique: poset is not a lattice")


@dataclass(frozen=True)
class LatticeIso:
    """A verified rank-preserving bijection, or a non-isomorphism certificate."""

    isomorphic: bool
    mapping: tuple[tuple[Element, Element], ...] | None = None
    certificate: str | None = None


def _normalize(L: "FaceLattice | AbstractLattice") -> tuple[int, list[list[Element]], set]:
    if isinstance(L, FaceLattice):
        ranks = [list(L.faces(j)) for j in range(-1, L.dim + 1)]
        covers = set(L.covering)
        return L.dim, ranks, covers
    ranks = [list(L.elements(r)) for r in range(-1, L.dim + 1)]
    return L.dim, ranks, set(L.covering)


def is_isomorphic(L1: "FaceLattice | AbstractLattice",
                  L2: "FaceLattice | AbstractLattice") -> LatticeIso:
    """Backtracking search for a cover-preserving rank bijection.

    Prunes on f-vector and per-element (down-degree, up-degree), and extends
    rank by rank requiring the already-mapped lower covers to match exactly;
    a complete assignment is re-verified on all covering pairs in both
    directions before being returned.
    """
    dim1, ranks1, covers1 = _normalize(L1)
    dim2, ranks2, covers2 = _normalize(L2)
    if dim1 != dim2:
        return LatticeIso(False, certificate=f"dimension mismatch: {dim1} != {dim2}")
    fv1 = tuple(len(r) for r in ranks1)
    fv2 = tuple(len(r) for r in ranks2)
    if fv1 != fv2:
        return LatticeIso(False, certificate=f"f-vector mismatch: {fv1} != {fv2}")

    def degree_maps(ranks: list[list[Element]], covers: set) -> tuple[dict, dict]:
        up: dict[Element, set] = {e: set() for level in ranks for e in level}
        down: dict[Element, set] = {e: set() for level in ranks for e in level}
        for a, b in covers:
            up[a].add(b)
            down[b].add(a)
        return up, down

    up1, down1 = degree_maps(ranks1, covers1)
    up2, down2 = degree_maps(ranks2, covers2)

    for level1, level2 in zip(ranks1, ranks2):
        sig1 = sorted((len(down1[e]), len(up1[e])) for e in level1)
        sig2 = sorted((len(down2[e]), len(up2[e])) for e in level2)
        if sig1 != sig2:
            return LatticeIso(False, certificate="up/down cover degree multisets differ")

    mapping: dict[Element, Element] = {}

    def assign_rank(rank_idx: int) -> bool:
        if rank_idx == len(ranks1):
            return True
        sources = ranks1[rank_idx]
        targets = ranks2[rank_idx]
        used: set[int] = set()

        def place(i: int) -> bool:
            if i == len(sources):
                return assign_rank(rank_idx + 1)
            s = sources[i]
            wanted_down = {mapping[d] for d in down1[s]}
            for t_idx, t in enumerate(targets):
                if t_idx in used:
                    continue
                if len(up2[t]) != len(up1[s]) or down2[t] != wanted_down:
                    continue
                mapping[s] = t
                used.add(t_idx)
                if place(i + 1):
                    return True
                del mapping[s]
                used.discard(t_idx)
            return False

        return place(0)

    if not assign_rank(0):
        return LatticeIso(False, certificate="exhausted search: no cover-preserving bijection")

    forward = {(mapping[a], mapping[b]) for a, b in covers1}
    if forward != covers2:
        raise InternalInvariantError("lattice bijection failed final cover verification")
    pairs = tuple((e, mapping[e]) for level in ranks1 for e in level)
    return LatticeIso(True, mapping=pairs)
