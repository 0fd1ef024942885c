from dataclasses import dataclass
from functools import cached_property

from app.utils.exact import RatVector

from .halfspace import Halfspace


@dataclass(frozen=True, eq=False)
class Polytope:
    """
    Rational polytope carrying both representations.

    `dim` is the ambient dimension and `affine_dim` the dimension of the polytope
    itself (-1 when empty). Vertices and facets are sorted lexicographically;
    `incidence[j]` holds the indices of the vertices lying on `facets[j]`.
    For a lower-dimensional polytope the facets are the relative ones.
    """

    dim: int
    vertices: tuple[RatVector, ...]
    facets: tuple[Halfspace, ...]
    incidence: tuple[frozenset[int], ...]
    affine_dim: int
    dropped_halfspaces: int = 0

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def is_full_dimensional(self) -> bool:
        return self.affine_dim == self.dim

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def facet_count(self) -> int:
        return len(self.facets)

    @cached_property
    def is_lattice(self) -> bool:
        """All vertices are integral."""
        return all(x.denominator == 1 for vertex in self.vertices for x in vertex)

    @cached_property
    def facet_masks(self) -> tuple[int, ...]:
        """Incidence sets as vertex bitmasks."""
        return tuple(sum(1 << i for i in members) for members in self.incidence)

    @cached_property
    def vertex_facets(self) -> tuple[frozenset[int], ...]:
        """For every vertex, the indices of the facets through it."""
        through: list[set[int]] = [set() for _ in self.vertices]
        for j, members in enumerate(self.incidence):
            for i in members:
                through[i].add(j)
        return tuple(frozenset(s) for s in through)

    @cached_property
    def vertex_index(self) -> dict[RatVector, int]:
        return {vertex: i for i, vertex in enumerate(self.vertices)}

    def contains(self, point: RatVector) -> bool:
        """Closed membership test against the stored facets."""
        if self.is_empty:
            return False
        return all(h.value(point) >= 0 for h in self.facets)

    def has_vertex(self, point: RatVector) -> bool:
        return point in self.vertex_index

    def __repr__(self) -> str:
        return (
            f"Polytope<dim={self.dim} affine_dim={self.affine_dim} "
            f"vertices={self.vertex_count} facets={self.facet_count}>"
        )
