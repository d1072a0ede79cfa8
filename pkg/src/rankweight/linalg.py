"""Canonical exact linear algebra over any backend field.

Subspaces of F^n are kept in reduced row echelon form with no zero rows, so
two subspaces are equal iff their canonical matrices are identical; that
makes deduplication and equality checks O(1) after one reduction.

Intersection is computed through the double orthogonal complement
(a ∩ b = (a^⊥ + b^⊥)^⊥ for the standard bilinear form), which reuses the
complement path instead of a separate Zassenhaus routine.

``enumerate_subspaces`` streams every r-dimensional subspace of F^n exactly
once, ordered by pivot profile and then lexicographically on the free
entries; the census equals the Gaussian binomial coefficient.
"""

from __future__ import annotations

import itertools
from typing import Iterator, List, Sequence

from .errors import AmbientMismatch, InfiniteField
from .fields import Field, FieldElement


class Matrix:
    """Row-major grid of elements of one field; zero-row matrices are legal."""

    __slots__ = ("field", "rows", "num_cols")

    def __init__(self, field: Field, rows: Sequence[Sequence[FieldElement]], num_cols: int | None = None):
        rows = [list(r) for r in rows]
        if num_cols is None:
            if not rows:
                raise ValueError("num_cols is required for a matrix with no rows")
            num_cols = len(rows[0])
        for r in rows:
            if len(r) != num_cols:
                raise ValueError("ragged matrix")
            for e in r:
                if not (e.field is field or e.field == field):
                    raise AmbientMismatch("matrix entry from a foreign field")
        self.field = field
        self.rows = rows
        self.num_cols = num_cols

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def __repr__(self):
        return f"Matrix({self.num_rows}x{self.num_cols} over {self.field})"


class Subspace:
    """A subspace of F^n held as a canonical RREF basis matrix.

    The constructor trusts its input; build through ``rref_canonical`` or the
    classmethods unless the rows are canonical by construction.
    """

    __slots__ = ("field", "ambient_dim", "rows")

    def __init__(self, field: Field, ambient_dim: int, rows: tuple):
        self.field = field
        self.ambient_dim = ambient_dim
        self.rows = rows

    @classmethod
    def zero(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, ())

    @classmethod
    def full(cls, field: Field, ambient_dim: int) -> "Subspace":
        zero, one = field.zero(), field.one()
        rows = tuple(
            tuple(one if i == j else zero for j in range(ambient_dim))
            for i in range(ambient_dim)
        )
        return cls(field, ambient_dim, rows)

    @classmethod
    def from_vectors(cls, field: Field, ambient_dim: int, vectors) -> "Subspace":
        rows, _ = _rref_rows(field, vectors, ambient_dim)
        return cls(field, ambient_dim, tuple(rows))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains(self, v: Sequence[FieldElement]) -> bool:
        return contains(self, v)

    def contains_space(self, other: "Subspace") -> bool:
        if other.ambient_dim != self.ambient_dim or other.field != self.field:
            raise AmbientMismatch("subspaces live in different ambient spaces")
        return all(self.contains(r) for r in other.rows)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.field == other.field
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.rows))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.field}^{self.ambient_dim})"


def _rref_rows(field: Field, rows, num_cols: int):
    """In-place Gaussian elimination to unique RREF; returns (rows, pivot_cols)."""
    work: List[List[FieldElement]] = [list(r) for r in rows]
    for r in work:
        if len(r) != num_cols:
            raise ValueError(f"row of length {len(r)} in an ambient of {num_cols}")
    pivot_cols: List[int] = []
    r = 0
    for col in range(num_cols):
        pivot = None
        for i in range(r, len(work)):
            if work[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        lead = work[r][col]
        if lead != field.one():
            inv = lead.inverse()
            work[r] = [e * inv for e in work[r]]
        for i in range(len(work)):
            if i != r and work[i][col]:
                f = work[i][col]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivot_cols.append(col)
        r += 1
        if r == len(work):
            break
    return [tuple(row) for row in work[:r]], pivot_cols


def rref_canonical(m: Matrix) -> Subspace:
    """Row space of m as a canonical subspace; idempotent."""
    rows, _ = _rref_rows(m.field, m.rows, m.num_cols)
    return Subspace(m.field, m.num_cols, tuple(rows))


def kernel(m: Matrix) -> Subspace:
    """{v : m v^T = 0}; dim = cols - rank."""
    field = m.field
    n = m.num_cols
    rows, pivot_cols = _rref_rows(field, m.rows, n)
    pivot_set = set(pivot_cols)
    zero, one = field.zero(), field.one()
    basis = []
    for j in range(n):
        if j in pivot_set:
            continue
        v = [zero] * n
        v[j] = one
        for i, p in enumerate(pivot_cols):
            v[p] = -rows[i][j]
        basis.append(v)
    reduced, _ = _rref_rows(field, basis, n)
    return Subspace(field, n, tuple(reduced))


def orthogonal_complement(s: Subspace) -> Subspace:
    """Complement for the standard bilinear form; dim s + dim s^⊥ = n."""
    if s.dim == 0:
        return Subspace.full(s.field, s.ambient_dim)
    return kernel(Matrix(s.field, [list(r) for r in s.rows], s.ambient_dim))


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim or a.field != b.field:
        raise AmbientMismatch("subspace sum needs a common ambient space")
    rows, _ = _rref_rows(a.field, list(a.rows) + list(b.rows), a.ambient_dim)
    return Subspace(a.field, a.ambient_dim, tuple(rows))


def subspace_intersection(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim or a.field != b.field:
        raise AmbientMismatch("subspace intersection needs a common ambient space")
    return orthogonal_complement(
        subspace_sum(orthogonal_complement(a), orthogonal_complement(b))
    )


def contains(a: Subspace, v: Sequence[FieldElement]) -> bool:
    """True iff v reduces to zero against a's canonical basis."""
    if len(v) != a.ambient_dim:
        raise AmbientMismatch(f"vector has length {len(v)}, ambient is {a.ambient_dim}")
    residue = list(v)
    for row in a.rows:
        pivot = next(j for j, e in enumerate(row) if e)
        c = residue[pivot]
        if c:
            residue = [x - c * y for x, y in zip(residue, row)]
    return not any(residue)


def enumerate_subspaces(field: Field, ambient_dim: int, dim: int) -> Iterator[Subspace]:
    """Every dim-dimensional subspace of field^ambient_dim, exactly once.

    Ordered by pivot profile (lexicographic column combinations), then by the
    free entries in row-major position order, each running through the field
    enumeration order.
    """
    if field.order is None:
        raise InfiniteField("subspace enumeration needs a finite field")
    if not 0 <= dim <= ambient_dim:
        raise ValueError(f"dimension {dim} outside 0..{ambient_dim}")
    if dim == 0:
        yield Subspace.zero(field, ambient_dim)
        return
    elems = list(field.elements())
    zero, one = field.zero(), field.one()
    for pivots in itertools.combinations(range(ambient_dim), dim):
        pivot_set = set(pivots)
        free = [
            (i, j)
            for i in range(dim)
            for j in range(pivots[i] + 1, ambient_dim)
            if j not in pivot_set
        ]
        for values in itertools.product(elems, repeat=len(free)):
            rows = [[zero] * ambient_dim for _ in range(dim)]
            for i, p in enumerate(pivots):
                rows[i][p] = one
            for (i, j), val in zip(free, values):
                rows[i][j] = val
            yield Subspace(field, ambient_dim, tuple(tuple(r) for r in rows))


def gaussian_binomial(n: int, r: int, q: int) -> int:
    """Number of r-dimensional subspaces of an n-space over GF(q)."""
    if r < 0 or r > n:
        return 0
    num = 1
    den = 1
    for i in range(r):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def invert(m: Matrix) -> Matrix:
    """Inverse of a square matrix; raises ValueError when singular."""
    n = m.num_cols
    if m.num_rows != n:
        raise ValueError("only square matrices can be inverted")
    field = m.field
    zero, one = field.zero(), field.one()
    augmented = [
        list(row) + [one if i == j else zero for j in range(n)]
        for i, row in enumerate(m.rows)
    ]
    reduced, pivots = _rref_rows(field, augmented, 2 * n)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return Matrix(field, [list(row[n:]) for row in reduced], n)


def vec_add(a, b):
    return [x + y for x, y in zip(a, b)]


def vec_sub(a, b):
    return [x - y for x, y in zip(a, b)]


def vec_scale(c, v):
    return [c * x for x in v]


def vec_dot(a, b):
    acc = None
    for x, y in zip(a, b):
        term = x * y
        acc = term if acc is None else acc + term
    return acc


def zero_vector(field: Field, n: int):
    return [field.zero()] * n
