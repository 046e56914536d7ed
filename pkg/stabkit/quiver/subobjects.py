"""Subrepresentations: exhaustive enumeration, witnesses, lattice operations, quotients."""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

from stabkit.errors import BudgetExceededError, InputError
from stabkit.lattice.charges import CentralCharge, Class
from stabkit.quiver import subspaces
from stabkit.quiver.quiver import Representation
from stabkit.quiver.subspaces import Basis

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 10_000_000


@dataclass(frozen=True)
class Subrepresentation:
    """A tuple of subspaces, one RREF basis per vertex, inside ``parent``."""

    parent: Representation
    bases: Tuple[Basis, ...]

    @property
    def dims(self) -> Class:
        return tuple(len(b) for b in self.bases)

    def is_closed(self) -> bool:
        q = self.parent.field_char
        for a, (s, t) in enumerate(self.parent.quiver.arrows):
            for u in self.bases[s]:
                if not subspaces.contains(self.bases[t], self.parent.apply(a, u), q):
                    return False
        return True

    def contains(self, other: "Subrepresentation") -> bool:
        q = self.parent.field_char
        return all(
            subspaces.contains(mine, v, q)
            for mine, theirs in zip(self.bases, other.bases)
            for v in theirs
        )

    def as_representation(self) -> Representation:
        """The subobject as a representation in the coordinates of its RREF bases."""
        q = self.parent.field_char
        maps = []
        for a, (s, t) in enumerate(self.parent.quiver.arrows):
            cols = [subspaces.coords_in_basis(self.parent.apply(a, u), self.bases[t], q)
                    for u in self.bases[s]]
            if any(c is None for c in cols):
                raise InputError(f"Subspace tuple is not closed under arrow {a}")
            rows = tuple(tuple(col[i] for col in cols) for i in range(len(self.bases[t])))
            maps.append(rows)
        return Representation(self.parent.quiver, q, self.dims, tuple(maps))

    def relative_to(self, ambient: "Subrepresentation") -> "Subrepresentation":
        """This subobject as a subrepresentation of ``ambient.as_representation()``."""
        q = self.parent.field_char
        new_bases = []
        for mine, outer in zip(self.bases, ambient.bases):
            rows = []
            for v in mine:
                c = subspaces.coords_in_basis(v, outer, q)
                if c is None:
                    raise InputError("Subobject is not contained in the ambient subobject")
                rows.append(c)
            new_bases.append(subspaces.rref_mod(rows, len(outer), q)[0])
        return Subrepresentation(ambient.as_representation(), tuple(new_bases))

    def intersection(self, other: "Subrepresentation") -> "Subrepresentation":
        q = self.parent.field_char
        return Subrepresentation(self.parent, tuple(
            subspaces.intersection(a, b, n, q)
            for a, b, n in zip(self.bases, other.bases, self.parent.dims)
        ))

    def span(self, other: "Subrepresentation") -> "Subrepresentation":
        q = self.parent.field_char
        return Subrepresentation(self.parent, tuple(
            subspaces.span(a, b, n, q) for a, b, n in zip(self.bases, other.bases, self.parent.dims)
        ))


def whole(r: Representation) -> Subrepresentation:
    return Subrepresentation(r, tuple(
        tuple(tuple(int(i == j) for j in range(n)) for i in range(n)) for n in r.dims
    ))


def zero_subobject(r: Representation) -> Subrepresentation:
    return Subrepresentation(r, tuple(() for _ in r.dims))


@dataclass(frozen=True)
class SubobjectClassSet:
    """Dimension vectors realized by subrepresentations of an object of class ``dims``."""

    classes: FrozenSet[Class]
    dims: Class

    def __post_init__(self):
        for c in self.classes:
            if len(c) != len(self.dims) or any(not 0 <= x <= d for x, d in zip(c, self.dims)):
                raise InputError(f"Class {c} is not bounded by {self.dims}")

    def __contains__(self, c) -> bool:
        return tuple(c) in self.classes

    def __iter__(self) -> Iterator[Class]:
        return iter(sorted(self.classes))

    def __len__(self) -> int:
        return len(self.classes)

    def nonzero(self) -> List[Class]:
        return [c for c in self if any(c)]

    def proper_nonzero(self) -> List[Class]:
        return [c for c in self if any(c) and c != self.dims]


def search_space_size(r: Representation) -> int:
    return prod(subspaces.subspace_count(n, r.field_char) for n in r.dims)


def _check_budget(r: Representation, budget: int) -> None:
    required = search_space_size(r)
    if required > budget:
        raise BudgetExceededError(
            f"Subobject enumeration needs {required} subspace tuples, budget is {budget}",
            required=required,
            budget=budget,
        )


@lru_cache(maxsize=4096)
def _all_subrepresentations(r: Representation) -> Tuple[Subrepresentation, ...]:
    """Depth-first over vertices sinks first, pruning on every arrow once both ends are fixed."""
    q = r.field_char
    order = list(reversed(r.quiver.topological_order()))
    chosen: Dict[int, Basis] = {}
    found: List[Subrepresentation] = []
    candidates = {v: list(subspaces.iter_subspaces(r.dims[v], q)) for v in order}

    def compatible(v: int, basis: Basis) -> bool:
        for a, (s, t) in enumerate(r.quiver.arrows):
            if s == v and t in chosen:
                if any(not subspaces.contains(chosen[t], r.apply(a, u), q) for u in basis):
                    return False
            if t == v and s in chosen:
                if any(not subspaces.contains(basis, r.apply(a, u), q) for u in chosen[s]):
                    return False
        return True

    def descend(i: int) -> None:
        if i == len(order):
            found.append(Subrepresentation(r, tuple(chosen[v] for v in range(len(r.dims)))))
            return
        v = order[i]
        for basis in candidates[v]:
            if compatible(v, basis):
                chosen[v] = basis
                descend(i + 1)
                del chosen[v]

    descend(0)
    found.sort(key=lambda s: (sum(s.dims), s.dims, s.bases))
    logger.debug(f"Enumerated {len(found)} subrepresentations of dims {r.dims}")
    return tuple(found)


def iter_subrepresentations(
    r: Representation, budget: int = DEFAULT_BUDGET
) -> Tuple[Subrepresentation, ...]:
    """All subrepresentations in canonical order (total dimension, class, bases).

    Raises:
        BudgetExceededError: If the product of per-vertex subspace counts exceeds ``budget``
    """
    _check_budget(r, budget)
    return _all_subrepresentations(r)


def enumerate_subobject_classes(
    r: Representation, budget: int = DEFAULT_BUDGET
) -> SubobjectClassSet:
    classes = frozenset(s.dims for s in iter_subrepresentations(r, budget))
    return SubobjectClassSet(classes, r.dims)


def enumerate_bounded(
    r: Representation,
    z: CentralCharge,
    bound: Optional[Fraction] = None,
    budget: int = DEFAULT_BUDGET,
) -> SubobjectClassSet:
    """Subobject classes with Re Z(class) < bound; ``bound=None`` is the +∞ sentinel."""
    full = enumerate_subobject_classes(r, budget)
    if bound is None:
        return full
    return SubobjectClassSet(frozenset(c for c in full.classes if z(c).re < bound), r.dims)


def subrep_witness(
    r: Representation, d: Class, budget: int = DEFAULT_BUDGET
) -> Optional[Subrepresentation]:
    """First subrepresentation of class ``d`` in canonical order, or None."""
    d = tuple(d)
    for s in iter_subrepresentations(r, budget):
        if s.dims == d:
            if not s.is_closed():
                raise InputError(f"Enumerated subspace tuple of class {d} is not closed")
            return s
    return None


def quotient(r: Representation, s: Subrepresentation) -> Representation:
    """R/S in the coordinates of the non-pivot columns of each RREF basis.

    Raises:
        InputError: If S is not closed under the arrow maps of R
    """
    if s.parent != r:
        raise InputError("Witness does not belong to this representation")
    if not s.is_closed():
        raise InputError("Witness fails closure under the arrow maps")
    q = r.field_char
    complements = []
    for basis, n in zip(s.bases, r.dims):
        pivots = set(subspaces.pivot_columns(basis))
        complements.append([c for c in range(n) if c not in pivots])
    dims = tuple(len(c) for c in complements)
    maps = []
    for a, (src, tgt) in enumerate(r.quiver.arrows):
        cols = []
        for c in complements[src]:
            e = tuple(int(i == c) for i in range(r.dims[src]))
            image = subspaces.reduce_vector(r.apply(a, e), s.bases[tgt], q)
            cols.append(tuple(image[i] for i in complements[tgt]))
        maps.append(tuple(tuple(col[i] for col in cols) for i in range(dims[tgt])))
    return Representation(r.quiver, q, dims, tuple(maps))
