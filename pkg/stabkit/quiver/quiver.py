"""Acyclic quivers and their representations over small prime fields."""
import logging
from dataclasses import dataclass
from itertools import product
from typing import Any, Dict, Iterator, List, Sequence, Tuple

from stabkit.errors import InputError
from stabkit.lattice.charges import Class
from stabkit.quiver.subspaces import matvec_mod

logger = logging.getLogger(__name__)

SUPPORTED_FIELDS = (2, 3, 5)

MapMatrix = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class Quiver:
    """Finite quiver with vertices 0..n-1 and arrows (source, target)."""

    vertex_count: int
    arrows: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        arrows = tuple((int(s), int(t)) for s, t in self.arrows)
        for s, t in arrows:
            if not (0 <= s < self.vertex_count and 0 <= t < self.vertex_count):
                raise InputError(f"Arrow ({s}, {t}) out of range for {self.vertex_count} vertices")
        object.__setattr__(self, "arrows", arrows)
        self.topological_order()

    @classmethod
    def linear(cls, n: int) -> "Quiver":
        """A_n: 0 → 1 → … → n-1."""
        return cls(n, tuple((i, i + 1) for i in range(n - 1)))

    @classmethod
    def kronecker(cls, arrows: int = 2) -> "Quiver":
        return cls(2, tuple((0, 1) for _ in range(arrows)))

    def topological_order(self) -> List[int]:
        """Kahn's algorithm; sources first.

        Raises:
            InputError: If the quiver has an oriented cycle
        """
        indegree = [0] * self.vertex_count
        for _, t in self.arrows:
            indegree[t] += 1
        ready = [v for v in range(self.vertex_count) if indegree[v] == 0]
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for s, t in self.arrows:
                if s == v:
                    indegree[t] -= 1
                    if indegree[t] == 0:
                        ready.append(t)
        if len(order) != self.vertex_count:
            raise InputError("Quiver has an oriented cycle")
        return order

    def paths_from(self, vertex: int) -> List[Tuple[int, ...]]:
        """All paths starting at ``vertex`` as arrow-index tuples (the trivial path first)."""
        paths = [()]
        frontier = [((), vertex)]
        while frontier:
            new = []
            for path, end in frontier:
                for a, (s, t) in enumerate(self.arrows):
                    if s == end:
                        new.append((path + (a,), t))
            paths.extend(p for p, _ in new)
            frontier = new
        return paths

    def path_end(self, start: int, path: Tuple[int, ...]) -> int:
        return self.arrows[path[-1]][1] if path else start


@dataclass(frozen=True)
class Representation:
    """Vector spaces 𝔽_q^{dims[v]} and, per arrow s→t, a dims[t]×dims[s] matrix."""

    quiver: Quiver
    field_char: int
    dims: Class
    maps: Tuple[MapMatrix, ...]

    def __post_init__(self):
        if self.field_char not in SUPPORTED_FIELDS:
            raise InputError(
                f"Field 𝔽_{self.field_char} unsupported; use one of {SUPPORTED_FIELDS}"
            )
        dims = tuple(int(d) for d in self.dims)
        if len(dims) != self.quiver.vertex_count or any(d < 0 for d in dims):
            raise InputError(f"Dimension vector {dims} does not fit the quiver")
        if len(self.maps) != len(self.quiver.arrows):
            raise InputError(f"Expected {len(self.quiver.arrows)} maps, got {len(self.maps)}")
        q = self.field_char
        maps = []
        for a, ((s, t), m) in enumerate(zip(self.quiver.arrows, self.maps)):
            rows = tuple(tuple(int(x) % q for x in row) for row in m)
            if len(rows) != dims[t] or any(len(r) != dims[s] for r in rows):
                raise InputError(
                    f"Map for arrow {a} must be {dims[t]}×{dims[s]}, got {len(rows)} rows"
                )
            maps.append(rows)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "maps", tuple(maps))

    @property
    def is_zero(self) -> bool:
        return not any(self.dims)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def apply(self, arrow: int, v: Sequence[int]) -> Tuple[int, ...]:
        return matvec_mod(self.maps[arrow], v, self.field_char)

    @classmethod
    def parse(cls, data: Dict[str, Any]) -> "Representation":
        """Decode ``{"field", "vertices", "arrows", "dims", "maps": {"index": matrix}}``.

        Arrows without an entry in ``maps`` carry the zero map.
        """
        try:
            quiver = Quiver(int(data["vertices"]), tuple(tuple(a) for a in data.get("arrows", [])))
            dims = tuple(int(d) for d in data["dims"])
            field_char = int(data["field"])
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"Malformed representation document: {e}") from e
        raw_maps = data.get("maps", {}) or {}
        maps = []
        for a, (s, t) in enumerate(quiver.arrows):
            m = raw_maps.get(str(a), raw_maps.get(a))
            if m is None:
                m = [[0] * dims[s] for _ in range(dims[t])]
            maps.append(tuple(tuple(row) for row in m))
        return cls(quiver, field_char, dims, tuple(maps))

    def to_json(self) -> Dict[str, Any]:
        return {
            "field": self.field_char,
            "vertices": self.quiver.vertex_count,
            "arrows": [list(a) for a in self.quiver.arrows],
            "dims": list(self.dims),
            "maps": {str(a): [list(r) for r in m] for a, m in enumerate(self.maps)},
        }


def zero_representation(quiver: Quiver, field_char: int = 2) -> Representation:
    dims = tuple(0 for _ in range(quiver.vertex_count))
    return Representation(quiver, field_char, dims, tuple(() for _ in quiver.arrows))


def simple(quiver: Quiver, vertex: int, field_char: int = 2) -> Representation:
    dims = tuple(int(v == vertex) for v in range(quiver.vertex_count))
    maps = tuple(
        tuple(tuple(0 for _ in range(dims[s])) for _ in range(dims[t])) for s, t in quiver.arrows
    )
    return Representation(quiver, field_char, dims, maps)


def projective(quiver: Quiver, vertex: int, field_char: int = 2) -> Representation:
    """Indecomposable projective P_vertex, spanned by the paths leaving ``vertex``."""
    paths = quiver.paths_from(vertex)
    basis: Dict[int, List[Tuple[int, ...]]] = {v: [] for v in range(quiver.vertex_count)}
    for p in paths:
        basis[quiver.path_end(vertex, p)].append(p)
    dims = tuple(len(basis[v]) for v in range(quiver.vertex_count))
    maps = []
    for a, (s, t) in enumerate(quiver.arrows):
        m = [[0] * dims[s] for _ in range(dims[t])]
        for col, p in enumerate(basis[s]):
            m[basis[t].index(p + (a,))][col] = 1
        maps.append(tuple(tuple(r) for r in m))
    return Representation(quiver, field_char, dims, tuple(maps))


def direct_sum(a: Representation, b: Representation) -> Representation:
    if a.quiver != b.quiver or a.field_char != b.field_char:
        raise InputError("Direct sum needs representations of the same quiver over the same field")
    dims = tuple(x + y for x, y in zip(a.dims, b.dims))
    maps = []
    for (s, t), ma, mb in zip(a.quiver.arrows, a.maps, b.maps):
        rows = [tuple(r) + (0,) * b.dims[s] for r in ma]
        rows += [(0,) * a.dims[s] + tuple(r) for r in mb]
        maps.append(tuple(rows))
    return Representation(a.quiver, a.field_char, dims, tuple(maps))


def representation_corpus(
    quiver: Quiver, field_char: int = 2, max_dim: int = 2
) -> Iterator[Representation]:
    """Every representation with componentwise dims ≤ max_dim, in a fixed order."""
    n = quiver.vertex_count
    q = field_char
    for dims in product(range(max_dim + 1), repeat=n):
        shapes = [(dims[t], dims[s]) for s, t in quiver.arrows]
        entry_counts = [r * c for r, c in shapes]
        for entries in product(range(q), repeat=sum(entry_counts)):
            maps = []
            pos = 0
            for (r, c), count in zip(shapes, entry_counts):
                flat = entries[pos:pos + count]
                pos += count
                maps.append(tuple(tuple(flat[i * c:(i + 1) * c]) for i in range(r)))
            yield Representation(quiver, q, dims, tuple(maps))


@dataclass(frozen=True)
class QuiverHeart:
    """The heart of representations of a quiver over 𝔽_q."""

    quiver: Quiver
    field_char: int = 2

    def simples(self) -> List[Representation]:
        return [simple(self.quiver, v, self.field_char) for v in range(self.quiver.vertex_count)]

    def projectives(self) -> List[Representation]:
        return [
            projective(self.quiver, v, self.field_char) for v in range(self.quiver.vertex_count)
        ]

    def generators(self) -> List[Representation]:
        """Simples followed by the indecomposable projectives that are not simple."""
        simples = self.simples()
        return simples + [p for p in self.projectives() if p not in simples]

    def contains(self, r: Representation) -> bool:
        return r.quiver == self.quiver and r.field_char == self.field_char

    def corpus(self, max_dim: int = 2) -> Iterator[Representation]:
        return representation_corpus(self.quiver, self.field_char, max_dim)
