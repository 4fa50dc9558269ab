"""Hypergraphs, the boundary operator and static embedded homology.

Hyperedges are strictly increasing tuples of vertex indices.  Chains live in
the ambient simplex space over the roster: the basis for dimension ``k`` is
every ``(k+1)``-subset of the roster in lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from . import gf2
from .gf2 import BitMatrix, BitVector, Subspace

Hyperedge = tuple[int, ...]

# Ambient simplex spaces grow as C(|V|, k+1); static homology is desk-scale only.
MAX_AMBIENT_VERTICES = 12


class RosterTooLarge(ValueError):
    pass


def make_edge(members: Iterable[int]) -> Hyperedge:
    e = tuple(sorted(set(members)))
    if not e:
        raise ValueError("hyperedges are non-empty")
    return e


def faces(e: Hyperedge) -> list[Hyperedge]:
    """Codimension-1 faces of ``e`` in lexicographic order."""
    if len(e) == 1:
        return []
    return [e[:i] + e[i + 1:] for i in reversed(range(len(e)))]


@dataclass(frozen=True)
class Chain:
    """A GF(2) chain, stored as its set of simplices."""

    dimension: int
    simplices: frozenset[Hyperedge] = frozenset()

    def __add__(self, other: "Chain") -> "Chain":
        if other.dimension != self.dimension:
            raise ValueError("dimension mismatch")
        return Chain(self.dimension, self.simplices ^ other.simplices)

    def __bool__(self):
        return bool(self.simplices)

    def vector(self, n_vertices: int) -> BitVector:
        index = _basis_index(n_vertices, self.dimension)
        return BitVector.from_support(len(index), (index[s] for s in self.simplices))


def boundary(e: Hyperedge | Chain) -> Chain:
    """Boundary in characteristic 2: the sum of codimension-1 faces."""
    if isinstance(e, Chain):
        out: set[Hyperedge] = set()
        for s in e.simplices:
            out.symmetric_difference_update(faces(s))
        return Chain(e.dimension - 1, frozenset(out))
    return Chain(len(e) - 2, frozenset(faces(tuple(e))))


@lru_cache(maxsize=None)
def ambient_basis(n_vertices: int, k: int) -> tuple[Hyperedge, ...]:
    if k < 0:
        return ()
    return tuple(combinations(range(n_vertices), k + 1))


@lru_cache(maxsize=None)
def _basis_index(n_vertices: int, k: int) -> dict[Hyperedge, int]:
    return {s: i for i, s in enumerate(ambient_basis(n_vertices, k))}


@lru_cache(maxsize=None)
def boundary_matrix(n_vertices: int, k: int) -> BitMatrix:
    """Matrix of the boundary map from dimension ``k`` to ``k-1`` on ambient bases."""
    rows = len(ambient_basis(n_vertices, k - 1))
    if k <= 0:
        return BitMatrix.zeros(rows, len(ambient_basis(n_vertices, k)))
    index = _basis_index(n_vertices, k - 1)
    cols = []
    for s in ambient_basis(n_vertices, k):
        c = 0
        for f in faces(s):
            c |= 1 << index[f]
        cols.append(c)
    return BitMatrix.from_columns(rows, cols)


@dataclass(frozen=True)
class Hypergraph:
    roster: tuple[str, ...]
    edges: frozenset[Hyperedge] = field(default_factory=frozenset)

    def __post_init__(self):
        if len(set(self.roster)) != len(self.roster):
            raise ValueError("vertex ids must be unique")
        n = len(self.roster)
        for e in self.edges:
            if not e or list(e) != sorted(set(e)):
                raise ValueError(f"hyperedge {e!r} is not strictly increasing")
            if e[-1] >= n or e[0] < 0:
                raise ValueError(f"hyperedge {e!r} references a vertex outside the roster")

    @classmethod
    def from_labels(cls, roster: Sequence[str], edges: Iterable[Iterable[str]]) -> "Hypergraph":
        index = {v: i for i, v in enumerate(roster)}
        return cls(tuple(roster), frozenset(make_edge(index[v] for v in e) for e in edges))

    @property
    def n_vertices(self) -> int:
        return len(self.roster)

    def edges_of_dim(self, k: int) -> list[Hyperedge]:
        return sorted(e for e in self.edges if len(e) == k + 1)

    def label(self, e: Hyperedge) -> str:
        return "".join(self.roster[i] for i in e)

    def with_edges(self, edges: Iterable[Hyperedge]) -> "Hypergraph":
        return Hypergraph(self.roster, frozenset(edges))


def _guard(h: Hypergraph) -> None:
    if h.n_vertices > MAX_AMBIENT_VERTICES:
        raise RosterTooLarge(
            f"roster of {h.n_vertices} vertices exceeds the ambient cap of {MAX_AMBIENT_VERTICES}")


def delta_closure(h: Hypergraph) -> Hypergraph:
    """Smallest simplicial complex containing ``h``."""
    out: set[Hyperedge] = set()
    for e in h.edges:
        for r in range(1, len(e) + 1):
            out.update(combinations(e, r))
    return h.with_edges(out)


def lower_delta(h: Hypergraph) -> Hypergraph:
    """Largest simplicial complex contained in ``h`` (all non-empty subsets required)."""
    keep = []
    for e in h.edges:
        if all(s in h.edges for r in range(1, len(e)) for s in combinations(e, r)):
            keep.append(e)
    return h.with_edges(keep)


def edge_space(h: Hypergraph, n: int) -> Subspace:
    """Span of the dimension-``n`` hyperedges inside the ambient chain space."""
    _guard(h)
    index = _basis_index(h.n_vertices, n)
    size = len(ambient_basis(h.n_vertices, n))
    return Subspace.span(size, (1 << index[e] for e in h.edges if len(e) == n + 1))


def inf_chain_space(h: Hypergraph, n: int) -> Subspace:
    """Chains of ``h`` whose boundary is again a chain of ``h``."""
    if n < 0:
        raise ValueError("dimension must be non-negative")
    own = edge_space(h, n)
    if n == 0:
        return own
    pre = gf2.preimage_space(boundary_matrix(h.n_vertices, n), edge_space(h, n - 1))
    return gf2.subspace_intersection(pre, own)


def sup_chain_space(h: Hypergraph, n: int) -> Subspace:
    """Chains of ``h`` plus boundaries of chains one dimension up."""
    if n < 0:
        raise ValueError("dimension must be non-negative")
    up = gf2.image_space(boundary_matrix(h.n_vertices, n + 1), edge_space(h, n + 1))
    return gf2.subspace_sum(edge_space(h, n), up)


def boundary_image(h: Hypergraph, n: int, chains: Subspace) -> Subspace:
    """Image of a dimension-``n`` subspace under the boundary map."""
    return gf2.image_space(boundary_matrix(h.n_vertices, n), chains)


def cycle_space(h: Hypergraph, n: int, chains: Subspace) -> Subspace:
    """Cycles inside a dimension-``n`` subspace."""
    if n == 0:
        return chains
    m = boundary_matrix(h.n_vertices, n)
    combos = gf2.kernel_basis(gf2.restrict(m, chains))
    vecs = []
    for c in combos.basis:
        v = 0
        for i in gf2.support_of(c):
            v ^= chains.basis[i]
        vecs.append(v)
    return Subspace.span(chains.ambient_size, vecs)


def _homology_dim(h: Hypergraph, n: int, space) -> int:
    here = space(h, n)
    cycles = here.dim - (boundary_image(h, n, here).dim if n > 0 else 0)
    bounds = boundary_image(h, n + 1, space(h, n + 1)).dim
    return cycles - bounds


def embedded_betti(h: Hypergraph, n: int) -> int:
    """Dimension of embedded homology; both chain-complex sides are computed and cross-checked."""
    inf_side = _homology_dim(h, n, inf_chain_space)
    sup_side = _homology_dim(h, n, sup_chain_space)
    assert inf_side == sup_side, (
        f"inf/sup homology disagree at n={n}: {inf_side} != {sup_side}")
    return inf_side


def hat_betti(h: Hypergraph, n: int) -> int:
    sup_n = sup_chain_space(h, n)
    cycles = sup_n.dim - (boundary_image(h, n, sup_n).dim if n > 0 else 0)
    return cycles - boundary_image(h, n + 1, inf_chain_space(h, n + 1)).dim


def simplicial_betti(h: Hypergraph, n: int) -> int:
    """Classical Betti number by rank bookkeeping; ``h`` must be downward closed."""
    def rank_of(k):
        edges = h.edges_of_dim(k)
        if k <= 0 or not edges:
            return 0
        index = {e: i for i, e in enumerate(h.edges_of_dim(k - 1))}
        cols = []
        for e in edges:
            c = 0
            for f in faces(e):
                c |= 1 << index[f]
            cols.append(c)
        return gf2.rank(BitMatrix.from_columns(len(index), cols))
    return len(h.edges_of_dim(n)) - rank_of(n) - rank_of(n + 1)


def is_simplicial(h: Hypergraph) -> bool:
    return all(f in h.edges for e in h.edges for f in faces(e))


@dataclass(frozen=True)
class MorphismCheck:
    is_morphism: bool
    injective: bool
    embedding: bool

    def __bool__(self):
        return self.is_morphism

    @property
    def classification(self) -> str | None:
        if not self.is_morphism:
            return None
        if self.embedding:
            return "embedding"
        return "injective" if self.injective else "morphism"


def validate_morphism(phi: Mapping[int, int] | Sequence[int], h: Hypergraph,
                      k: Hypergraph) -> MorphismCheck:
    """Check that a vertex map sends every hyperedge of ``h`` onto a hyperedge of ``k``."""
    if not isinstance(phi, Mapping):
        phi = dict(enumerate(phi))
    missing = [v for v in range(h.n_vertices) if v not in phi]
    if missing:
        raise ValueError(f"vertex map is not total; missing {missing}")
    images = {}
    ok = True
    for e in h.edges:
        img = make_edge(phi[v] for v in e)
        if img not in k.edges:
            ok = False
        images[e] = img
    values = [phi[v] for v in range(h.n_vertices)]
    injective = ok and len(set(values)) == len(values)
    embedding = injective and len(set(images.values())) == len(images)
    return MorphismCheck(ok, injective, embedding)
