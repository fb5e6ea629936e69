"""
Dense exact linear algebra: row reduction over QQ / GF(p) and lattice bases over Z.
Matrices are plain row lists (or tuples of tuples for integer group elements); field
computations go through sympy's DomainMatrix.
"""
from __future__ import annotations
from math import gcd, lcm
from collections.abc import Sequence

from sympy import Matrix
from sympy.polys.domains import QQ
from sympy.polys.domains.domain import Domain
from sympy.polys.matrices import DomainMatrix

from errors import PreconditionError
from exactmath.field import coerce

IntMat = tuple[tuple[int, ...], ...]


def _check_rectangular(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    """Return the column count, raising ValueError if the rows are ragged."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    for r, row in enumerate(rows):
        if len(row) != ncols:
            raise ValueError(f"Row {r} has {len(row)} entries, expected {ncols}")
    return ncols


def field_matrix(rows: Sequence[Sequence], field: Domain, ncols: int | None = None) -> DomainMatrix:
    """
    Wrap a row list as a sparse DomainMatrix over field.
    Raises:
        ValueError: If the rows are ragged.
        PreconditionError: If an entry lies in another field.
    """
    ncols = _check_rectangular(rows, ncols)
    entries = [[coerce(field, x) for x in row] for row in rows]
    return DomainMatrix(entries, (len(entries), ncols), field, fmt = "sparse")


def echelon_form(rows: Sequence[Sequence], field: Domain, ncols: int | None = None) -> tuple[list[list], list[int]]:
    """
    Reduced row echelon form over an exact field.
    Args:
        rows (Sequence[Sequence]): Matrix entries (ints or elements of field).
        field (Domain): Coefficient field.
        ncols (int | None): Column count, needed when rows is empty.
    Returns:
        tuple[list[list], list[int]]: The nonzero rows of the reduced row echelon form
            (pivots equal to 1) and the pivot columns.
    Raises:
        PreconditionError: If an entry lies in another field.
    """
    a = field_matrix(rows, field, ncols)
    if not rows:
        return [], []
    reduced, pivots = a.rref()
    return reduced.to_list()[:len(pivots)], list(pivots)


def rank(rows: Sequence[Sequence], field: Domain, ncols: int | None = None) -> int:
    """Rank of a matrix over field."""
    return len(echelon_form(rows, field, ncols)[1])


def rref(rows: Sequence[Sequence], field: Domain, ncols: int | None = None) -> tuple[int, list[list]]:
    """
    Rank and kernel of a matrix over an exact field.
    Args:
        rows (Sequence[Sequence]): Matrix A.
        field (Domain): Coefficient field.
        ncols (int | None): Column count, needed when A has no rows.
    Returns:
        tuple[int, list[list]]: rank(A) and a basis of {v : A v = 0} that is itself in
            reduced row echelon form, so equal inputs give identical bases.
    """
    a = field_matrix(rows, field, ncols)
    n = a.shape[1]
    if not rows:
        return 0, DomainMatrix.eye(n, field).to_list()
    reduced, pivots = a.rref()
    if len(pivots) == n:
        return n, []
    null = reduced.nullspace_from_rref(pivots).to_list()
    basis, _ = echelon_form(null, field, n)
    return len(pivots), basis


def kernel(rows: Sequence[Sequence], field: Domain, ncols: int | None = None) -> list[list]:
    return rref(rows, field, ncols)[1]


def complement_basis(candidates: Sequence[Sequence], span_rows: Sequence[Sequence], field: Domain, ncols: int) -> list[list]:
    """
    Deterministic basis of a complement of U = span(span_rows) inside W = span(span_rows + candidates).
    The pivot columns of U are pivot columns of W; the reduced rows of W whose pivots
    are not pivots of U span a complement.
    """
    _, taken = echelon_form(span_rows, field, ncols)
    reduced, pivots = echelon_form(list(span_rows) + list(candidates), field, ncols)
    taken = set(taken)
    return [row for row, pc in zip(reduced, pivots) if pc not in taken]


def solve(rows: Sequence[Sequence], rhs: Sequence, field: Domain) -> list | None:
    """
    One solution x of A x = rhs over field, or None if the system is inconsistent.
    Free variables are set to zero.
    """
    ncols = _check_rectangular(rows)
    augmented = [list(row) + [b] for row, b in zip(rows, rhs)]
    reduced, pivots = echelon_form(augmented, field, ncols + 1)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for row, pc in zip(reduced, pivots):
        x[pc] = row[ncols]
    return x


# -- integer matrices -------------------------------------------------------

def identity(n: int) -> IntMat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> IntMat:
    """Product of two matrices given as row sequences (entries of any common ring)."""
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), 0 * row[0]) for col in cols) for row in a)


def mat_vec(a: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum((x * y for x, y in zip(row, v)), 0 * v[0]) for row in a)


def minus_identity(a: Sequence[Sequence]) -> list[list[int]]:
    return [[x - int(i == j) for j, x in enumerate(row)] for i, row in enumerate(a)]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*a)]


def determinant(a: Sequence[Sequence[int]]) -> int:
    return int(Matrix(a).det())


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries (zero stays zero)."""
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        return tuple(int(x) for x in v)
    return tuple(int(x) // g for x in v)


def clear_denominators(v: Sequence, field: Domain) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector with the same span."""
    dens = [int(field.denom(x)) for x in v]
    scale = lcm(*dens) if dens else 1
    return primitive([int(field.numer(x)) * (scale // d) for x, d in zip(v, dens)])


def hermite_form(rows: Sequence[Sequence[int]]) -> IntMat:
    """
    Canonical row echelon basis over Z of the lattice spanned by rows.
    Pivots are positive, entries above a pivot lie in [0, pivot), zero rows are dropped.
    Two bases of the same lattice give identical output.
    """
    m = [[int(x) for x in row] for row in rows]
    ncols = _check_rectangular(m)
    piv_r = 0
    pivots = []
    for c in range(ncols):
        if piv_r == len(m):
            break
        # Euclid on column c among rows piv_r..end
        while True:
            nonzero = [i for i in range(piv_r, len(m)) if m[i][c] != 0]
            if not nonzero:
                break
            i = min(nonzero, key = lambda r: abs(m[r][c]))
            m[piv_r], m[i] = m[i], m[piv_r]
            done = True
            for r in range(piv_r + 1, len(m)):
                q = m[r][c] // m[piv_r][c]
                if q:
                    m[r] = [a - q * b for a, b in zip(m[r], m[piv_r])]
                if m[r][c] != 0:
                    done = False
            if done:
                break
        if m[piv_r][c] == 0:
            continue
        if m[piv_r][c] < 0:
            m[piv_r] = [-x for x in m[piv_r]]
        for r in range(piv_r):
            q = m[r][c] // m[piv_r][c]
            if q:
                m[r] = [a - q * b for a, b in zip(m[r], m[piv_r])]
        pivots.append(c)
        piv_r += 1
    return tuple(tuple(row) for row in m[:piv_r])


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> IntMat:
    """
    Lattice basis of {x in Z^ncols : A x = 0}, in hermite_form.
    Runs unimodular row operations on [A^T | I]; rows whose A^T part vanishes carry the kernel.
    The kernel of an integer matrix is always saturated.
    """
    _check_rectangular(rows, ncols)
    m_rows = len(rows)
    work = [[int(rows[i][j]) for i in range(m_rows)] + [int(j == k) for k in range(ncols)] for j in range(ncols)]
    piv_r = 0
    for c in range(m_rows):
        while True:
            nonzero = [i for i in range(piv_r, ncols) if work[i][c] != 0]
            if not nonzero:
                break
            i = min(nonzero, key = lambda r: abs(work[r][c]))
            work[piv_r], work[i] = work[i], work[piv_r]
            for r in range(piv_r + 1, ncols):
                q = work[r][c] // work[piv_r][c]
                if q:
                    work[r] = [a - q * b for a, b in zip(work[r], work[piv_r])]
            if all(work[r][c] == 0 for r in range(piv_r + 1, ncols)):
                break
        if piv_r < ncols and work[piv_r][c] != 0:
            piv_r += 1
    kernel_rows = [row[m_rows:] for row in work[piv_r:]]
    return hermite_form(kernel_rows)


def saturate(rows: Sequence[Sequence[int]], ncols: int | None = None) -> IntMat:
    """
    Saturation span_Q(rows) ∩ Z^n of the lattice spanned by independent integer rows.
    Args:
        rows (Sequence[Sequence[int]]): Independent integer vectors.
        ncols (int | None): Ambient rank, needed when rows is empty.
    Returns:
        IntMat: Canonical hermite_form basis; saturating twice changes nothing.
    Raises:
        PreconditionError: If the rows are linearly dependent over Q.
    """
    ncols = _check_rectangular(rows, ncols)
    r, orthogonal = rref(rows, QQ, ncols)
    if r != len(rows):
        raise PreconditionError(f"Rows are linearly dependent over Q (rank {r} < {len(rows)})")
    if not orthogonal:
        return identity(ncols)
    constraints = [clear_denominators(v, QQ) for v in orthogonal]
    return integer_kernel(constraints, ncols)
