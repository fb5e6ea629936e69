from __future__ import annotations
import logging
from collections.abc import Iterable, Sequence
from functools import cached_property

from sympy.polys.domains import QQ
from sympy.polys.domains.domain import Domain

from constants import DEFAULT_MAX_ORDER
from errors import GroupTooLargeError, PreconditionError
from exactmath.field import coefficient_field
from exactmath.linalg import IntMat, determinant, identity, integer_kernel, mat_mul, mat_vec, minus_identity, rank, solve, transpose

logger = logging.getLogger(__name__)


def _as_matrix(m: Sequence[Sequence[int]]) -> IntMat:
    return tuple(tuple(int(x) for x in row) for row in m)


class GroupData:
    """
    A finite group W of integer matrices acting on the lattice H_2(BT, Z) = Z^n.
    Attributes:
        rank (int): Rank n of the lattice.
        elements (tuple[IntMat, ...]): Group elements; element 0 is the identity.
        table (tuple[tuple[int, ...], ...]): table[i][j] is the index of elements[i] @ elements[j].
        generator_indices (tuple[int, ...]): Indices of the generators used to build the group.
        characteristic (int): Coefficient characteristic p (0 or a prime not dividing |W|).
        name (str | None): Optional label (preset name).
    Instances are immutable after close() and can be shared between characteristics
    through with_characteristic().
    """
    def __init__(self, rank: int, elements: Sequence[IntMat], table: Sequence[Sequence[int]],
                 generator_indices: Sequence[int], characteristic: int = 0, name: str | None = None):
        """
        Store a closed group. Use close() instead of calling this directly.
        Raises:
            PreconditionError: If p is not 0 or a prime, or p divides the order.
        """
        self.rank = rank
        self.elements = tuple(elements)
        self.table = tuple(tuple(row) for row in table)
        self.generator_indices = tuple(generator_indices)
        self.name = name
        self._index = {m: i for i, m in enumerate(self.elements)}
        self.characteristic = check_characteristic(characteristic, len(self.elements))
        self._variants = {self.characteristic: self}

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def field(self) -> Domain:
        return coefficient_field(self.characteristic)

    @property
    def generators(self) -> list[IntMat]:
        return [self.elements[i] for i in self.generator_indices]

    def index_of(self, matrix: Sequence[Sequence[int]]) -> int:
        """
        Index of a matrix in the element list.
        Raises:
            KeyError: If the matrix is not a group element.
        """
        return self._index[_as_matrix(matrix)]

    def multiply(self, i: int, j: int) -> int:
        return self.table[i][j]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        return tuple(row.index(0) for row in self.table)

    def with_characteristic(self, p: int) -> GroupData:
        """
        The same group with another coefficient characteristic.
        Raises:
            PreconditionError: If p is not admissible for this group.
        """
        if p not in self._variants:
            variant = GroupData(self.rank, self.elements, self.table, self.generator_indices, p, self.name)
            variant._variants = self._variants
            self._variants[p] = variant
        return self._variants[p]

    def whole(self) -> Subgroup:
        return Subgroup(self, range(self.order))

    def trivial(self) -> Subgroup:
        return Subgroup(self, [0])

    def __repr__(self) -> str:
        label = f"{self.name}, " if self.name else ""
        return f"GroupData({label}rank={self.rank}, order={self.order}, p={self.characteristic})"


def check_characteristic(p: int, order: int) -> int:
    """
    Validate a coefficient characteristic for a group of the given order.
    Raises:
        PreconditionError: If p is not 0 or prime, or if p divides the order (modular case).
    """
    coefficient_field(p)
    if p and order % p == 0:
        raise PreconditionError(f"Characteristic {p} divides the group order {order}; the modular case is not supported")
    return p


def close(gens: Sequence[Sequence[Sequence[int]]], max_order: int = DEFAULT_MAX_ORDER, rank: int | None = None,
          characteristic: int = 0, name: str | None = None) -> GroupData:
    """
    Close a set of integer matrices under multiplication.
    Args:
        gens (Sequence): Generator matrices, all n x n and invertible over Z.
        max_order (int): Upper bound on the group order.
        rank (int | None): Lattice rank; required only when gens is empty.
        characteristic (int): Coefficient characteristic attached to the result.
        name (str | None): Optional label.
    Returns:
        GroupData: Smallest closed set containing gens and the identity, with multiplication table.
    Raises:
        PreconditionError: On shape mismatch or a generator with determinant other than ±1.
        GroupTooLargeError: If the closure exceeds max_order elements.
    """
    mats = [_as_matrix(g) for g in gens]
    if rank is None:
        if not mats:
            raise PreconditionError("Rank is required for an empty generator list")
        rank = len(mats[0])
    if rank < 1:
        raise PreconditionError(f"Rank must be >= 1 (got: {rank})")
    for k, g in enumerate(mats):
        if len(g) != rank or any(len(row) != rank for row in g):
            raise PreconditionError(f"Generator {k} is not {rank}x{rank}")
        det = determinant(g)
        if det not in (1, -1):
            raise PreconditionError(f"Generator {k} has determinant {det}; it is not invertible over Z")

    one = identity(rank)
    elements = [one]
    index = {one: 0}
    frontier = [one]
    while frontier:
        new = []
        for x in frontier:
            for g in mats:
                y = mat_mul(x, g)
                if y not in index:
                    if len(elements) >= max_order:
                        raise GroupTooLargeError(f"Closure exceeds max_order = {max_order}")
                    index[y] = len(elements)
                    elements.append(y)
                    new.append(y)
        frontier = new

    table = [[index[mat_mul(a, b)] for b in elements] for a in elements]
    gen_idx = tuple(dict.fromkeys(index[g] for g in mats))
    logger.debug("closed %d generators of rank %d to a group of order %d", len(mats), rank, len(elements))
    return GroupData(rank, elements, table, gen_idx, characteristic, name)


class Subgroup:
    """
    A subgroup of a GroupData, stored as a sorted tuple of element indices.
    Attributes:
        parent (GroupData): The ambient group.
        indices (tuple[int, ...]): Sorted element indices; always contains 0.
        reflection_verdicts (dict[int, bool]): is_reflection_group results by characteristic.
    Derived data (fixed lattice basis, reflection verdicts) is computed lazily and cached;
    concurrent duplicate computation yields the same value.
    """
    def __init__(self, parent: GroupData, indices: Iterable[int]):
        """
        Raises:
            ValueError: If the indices miss the identity or are not closed under multiplication.
        """
        self.parent = parent
        self.indices = tuple(sorted(set(indices)))
        if not self.indices or self.indices[0] != 0:
            raise ValueError("A subgroup must contain the identity")
        members = set(self.indices)
        for i in self.indices:
            for j in self.indices:
                if parent.table[i][j] not in members:
                    raise ValueError(f"Index set {self.indices} is not closed under multiplication")
        self.reflection_verdicts: dict[int, bool] = {}

    @property
    def order(self) -> int:
        return len(self.indices)

    @property
    def matrices(self) -> list[IntMat]:
        return [self.parent.elements[i] for i in self.indices]

    def __contains__(self, i: int) -> bool:
        return i in self.indices

    def issubset(self, other: Subgroup) -> bool:
        return set(self.indices) <= set(other.indices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.indices == other.indices

    def __hash__(self) -> int:
        return hash(self.indices)

    def __lt__(self, other: Subgroup) -> bool:
        return (self.order, self.indices) < (other.order, other.indices)

    @cached_property
    def fixed_basis(self) -> IntMat:
        """Canonical integral basis of the fixed lattice: the kernel of the stacked (M_g - I)."""
        rows = [row for m in self.matrices[1:] for row in minus_identity(m)]
        return integer_kernel(rows, self.parent.rank)

    @cached_property
    def is_closed(self) -> bool:
        """True iff this is the full pointwise stabilizer of its fixed lattice."""
        return pointwise_fixer(self.parent, self.fixed_basis) == self

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, indices={self.indices})"


def generate(parent: GroupData, indices: Iterable[int]) -> Subgroup:
    """Subgroup generated by a set of element indices (closure under the table)."""
    members = {0}
    frontier = [0]
    gens = list(dict.fromkeys(indices))
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = parent.table[x][g]
                if y not in members:
                    members.add(y)
                    new.append(y)
        frontier = new
    return Subgroup(parent, members)


def pointwise_fixer(parent: GroupData, basis: Sequence[Sequence[int]]) -> Subgroup:
    """All elements fixing every vector of `basis` (the empty basis is fixed by everything)."""
    fixing = [i for i, m in enumerate(parent.elements) if all(mat_vec(m, b) == tuple(b) for b in basis)]
    return Subgroup(parent, fixing)


def subgroups(parent: GroupData) -> list[Subgroup]:
    """
    Enumerate every subgroup exactly once.
    Cyclic subgroups are joined with each other until no new subgroup appears.
    Returns:
        list[Subgroup]: Sorted by order, then by element index set.
    """
    cyclic = {generate(parent, [i]) for i in range(parent.order)}
    found = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        new = []
        for a in frontier:
            for c in cyclic:
                if c.issubset(a):
                    continue
                joined = generate(parent, a.indices + c.indices)
                if joined not in found:
                    found.add(joined)
                    new.append(joined)
        frontier = new
    logger.debug("group of order %d has %d subgroups", parent.order, len(found))
    return sorted(found)


def is_pseudoreflection(matrix: Sequence[Sequence[int]], p: int = 0) -> bool:
    """
    True iff the matrix fixes a hyperplane, i.e. rank(M - I) == 1 over the field of characteristic p.
    """
    return rank(minus_identity(matrix), coefficient_field(p), len(matrix)) == 1


def is_reflection_group(subgroup: Subgroup, p: int | None = None) -> bool:
    """
    True iff the subgroup is generated by its pseudoreflections.
    The trivial subgroup is a reflection group (generated by the empty set).
    Verdicts are cached on the subgroup per characteristic.
    """
    parent = subgroup.parent
    p = parent.characteristic if p is None else check_characteristic(p, parent.order)
    if p not in subgroup.reflection_verdicts:
        reflections = [i for i in subgroup.indices if is_pseudoreflection(parent.elements[i], p)]
        subgroup.reflection_verdicts[p] = generate(parent, reflections) == subgroup
    return subgroup.reflection_verdicts[p]


def restrict(subgroup: Subgroup, basis: Sequence[Sequence[int]]) -> list[IntMat]:
    """
    Matrices of the subgroup acting on the sublattice spanned by `basis` (rows).
    Column j of the result holds the coordinates of M b_j in the basis.
    Raises:
        PreconditionError: If the sublattice is not stable under the subgroup or the
            coordinates are not integral.
    """
    if not basis:
        return [() for _ in subgroup.indices]
    columns = transpose(basis)
    out = []
    for m in subgroup.matrices:
        coords = []
        for b in basis:
            image = mat_vec(m, b)
            x = solve(columns, image, QQ)
            if x is None:
                raise PreconditionError("Sublattice is not stable under the subgroup")
            if any(QQ.denom(c) != 1 for c in x):
                raise PreconditionError("Restricted action is not integral on the given basis")
            coords.append([int(QQ.numer(c)) for c in x])
        out.append(_as_matrix(transpose(coords)))
    return out


def is_reflection_action(matrices: Sequence[Sequence[Sequence[int]]], p: int = 0) -> bool:
    """
    Reflection-group test for a finite group given by the full list of its matrices.
    Args:
        matrices (Sequence): Every element of a finite matrix group (faithful action).
        p (int): Coefficient characteristic.
    Returns:
        bool: True iff closing the pseudoreflections among the matrices yields all of them.
    """
    mats = list(dict.fromkeys(_as_matrix(m) for m in matrices))
    if not mats or not mats[0]:
        return True
    reflections = [m for m in mats if is_pseudoreflection(m, p)]
    closed = close(reflections, max_order = len(mats), rank = len(mats[0]))
    return closed.order == len(mats)
