from dataclasses import dataclass
from functools import cached_property

from app.utils.exact import IntVector


def unit_vector(dim: int, index: int, sign: int = 1) -> IntVector:
    """sign * e_index (0-based)."""
    return tuple(sign if i == index else 0 for i in range(dim))


def vector_sum(dim: int, *vectors: IntVector) -> IntVector:
    return tuple(sum(column) for column in zip(*vectors, strict=True)) if vectors else (0,) * dim


@dataclass(frozen=True)
class XrSpec:
    """
    Generators of the 5r-dimensional Fano polytope of the blow-up family.

    Coordinates split into blocks of sizes 2r, 2r and r; u_i and v_i are the
    rays of the two copies of P^{2r}, w_{i,1}, w_{i,2} those of the i-th P^1,
    y_i = u_i + v_i and z_i = w_{i,1} + y_i the added rays.
    """

    r: int

    def __post_init__(self) -> None:
        if self.r < 1:
            msg = f"r must be positive, got {self.r}"
            raise ValueError(msg)

    @property
    def dimension(self) -> int:
        return 5 * self.r

    @property
    def vertex_count(self) -> int:
        return 8 * self.r + 2

    @property
    def picard_number(self) -> int:
        return self.vertex_count - self.dimension

    @cached_property
    def u(self) -> tuple[IntVector, ...]:
        """u_1 .. u_{2r+1} (index 0 is u_1)."""
        base = [unit_vector(self.dimension, i) for i in range(2 * self.r)]
        return (*base, tuple(-x for x in vector_sum(self.dimension, *base)))

    @cached_property
    def v(self) -> tuple[IntVector, ...]:
        base = [unit_vector(self.dimension, 2 * self.r + i) for i in range(2 * self.r)]
        return (*base, tuple(-x for x in vector_sum(self.dimension, *base)))

    @cached_property
    def w(self) -> tuple[tuple[IntVector, IntVector], ...]:
        """(w_{i,1}, w_{i,2}) for i = 1 .. r."""
        offset = 4 * self.r
        return tuple(
            (unit_vector(self.dimension, offset + i), unit_vector(self.dimension, offset + i, -1))
            for i in range(self.r)
        )

    @cached_property
    def y(self) -> tuple[IntVector, ...]:
        return tuple(vector_sum(self.dimension, self.u[i], self.v[i]) for i in range(self.r))

    @cached_property
    def z(self) -> tuple[IntVector, ...]:
        return tuple(vector_sum(self.dimension, self.w[i][0], self.y[i]) for i in range(self.r))

    @cached_property
    def generators(self) -> tuple[IntVector, ...]:
        """Listing order: u-block, v-block, w-block, y-block, z-block."""
        w_block = tuple(g for pair in self.w for g in pair)
        return (*self.u, *self.v, *w_block, *self.y, *self.z)

    @cached_property
    def labels(self) -> tuple[str, ...]:
        """Names of `generators`, in the same order."""
        u = [f"u{i + 1}" for i in range(2 * self.r + 1)]
        v = [f"v{i + 1}" for i in range(2 * self.r + 1)]
        w = [f"w{i + 1},{j}" for i in range(self.r) for j in (1, 2)]
        y = [f"y{i + 1}" for i in range(self.r)]
        z = [f"z{i + 1}" for i in range(self.r)]
        return (*u, *v, *w, *y, *z)


@dataclass(frozen=True, slots=True)
class RelationCheck:
    """One linear relation sum(lhs) = sum(rhs) among generators."""

    family: str
    i: int
    lhs: tuple[str, ...]
    rhs: tuple[str, ...]
    holds: bool
    degree: int
    expected_degree: int

    @property
    def degree_ok(self) -> bool:
        return self.degree == self.expected_degree


@dataclass(frozen=True, slots=True)
class MoriRelationReport:
    r: int
    relations: tuple[RelationCheck, ...]

    @property
    def all_hold(self) -> bool:
        return all(rel.holds and rel.degree_ok for rel in self.relations)

    @property
    def degree_chain(self) -> tuple[int, ...]:
        """Degrees of the first family for i = 1..r followed by the second family."""
        first = [rel.degree for rel in self.relations if rel.family == "Z"]
        second = [rel.degree for rel in self.relations if rel.family == "Y"]
        return (*first, *second)

    @property
    def chain_strictly_decreasing(self) -> bool:
        chain = self.degree_chain
        return all(a > b for a, b in zip(chain, chain[1:], strict=False)) and chain[0] == 2 * self.r and chain[-1] == 1
