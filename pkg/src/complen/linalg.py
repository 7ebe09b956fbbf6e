"""Exact linear algebra over the fields in this package.

Vectors are tuples of scalars. A Subspace is stored as the reduced row
echelon form of any spanning set, which is canonical: two subspaces are equal
exactly when their stored rows are equal, so equality and hashing are O(1)
after construction.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import DimensionMismatch
from .fields import Field, Scalar

Vector = tuple


def _leading_index(field: Field, v: Sequence[Scalar]) -> int:
    zero = field.zero()
    for i, x in enumerate(v):
        if x != zero:
            return i
    return -1


class Subspace:
    """A subspace of F^n in reduced row echelon form.

    rows are pivot-normalized (pivot entry 1, pivot column zero elsewhere) and
    sorted by strictly increasing pivot index. The zero subspace has no rows.
    """

    __slots__ = ("field", "ambient", "rows", "pivots")

    def __init__(self, field: Field, ambient: int, rows: tuple = (), pivots: tuple = ()):
        self.field = field
        self.ambient = ambient
        self.rows = rows
        self.pivots = pivots

    @staticmethod
    def zero(field: Field, ambient: int) -> "Subspace":
        return Subspace(field, ambient)

    @staticmethod
    def span(field: Field, ambient: int, vectors: Iterable[Sequence[Scalar]]) -> "Subspace":
        s = Subspace.zero(field, ambient)
        for v in vectors:
            s = s.insert(tuple(v))
        return s

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: Vector) -> Vector:
        """v minus its projection onto this subspace along the pivot columns."""
        if len(v) != self.ambient:
            raise DimensionMismatch(f"vector length {len(v)} in ambient {self.ambient}")
        f = self.field
        zero = f.zero()
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c != zero:
                for i, r in enumerate(row):
                    if r != zero:
                        v[i] = f.sub(v[i], f.mul(c, r))
        return tuple(v)

    def contains(self, v: Sequence[Scalar]) -> bool:
        zero = self.field.zero()
        return all(x == zero for x in self.reduce(tuple(v)))

    def insert(self, v: Sequence[Scalar]) -> "Subspace":
        """The span of this subspace and v (canonical form maintained)."""
        f = self.field
        zero = f.zero()
        res = self.reduce(tuple(v))
        lead = _leading_index(f, res)
        if lead < 0:
            return self
        c = f.inv(res[lead])
        new_row = tuple(f.mul(c, x) for x in res)
        rows = []
        pivots = []
        inserted = False
        for row, p in zip(self.rows, self.pivots):
            if not inserted and lead < p:
                rows.append(new_row)
                pivots.append(lead)
                inserted = True
            # clear the new pivot column from the existing row
            coef = row[lead]
            if coef != zero:
                row = tuple(f.sub(x, f.mul(coef, y)) for x, y in zip(row, new_row))
            rows.append(row)
            pivots.append(p)
        if not inserted:
            rows.append(new_row)
            pivots.append(lead)
        return Subspace(self.field, self.ambient, tuple(rows), tuple(pivots))

    def sum(self, other: "Subspace") -> "Subspace":
        if other.ambient != self.ambient:
            raise DimensionMismatch("ambient dimensions differ")
        s = self
        for row in other.rows:
            s = s.insert(row)
        return s

    def key(self):
        """Deterministic total-order key (used for witness tie-breaking)."""
        f = self.field
        return (self.dim, self.pivots, tuple(tuple(f.sort_key(x) for x in row) for row in self.rows))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.ambient, self.rows))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def solve_linear(field: Field, rows: list, rhs: list):
    """One solution x of the system rows * x = rhs, or None.

    rows is a list of coefficient tuples (one equation each). Free variables
    are set to zero in the returned solution.
    """
    f = field
    zero = f.zero()
    n = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(n):
        sel = None
        for i in range(r, len(aug)):
            if aug[i][col] != zero:
                sel = i
                break
        if sel is None:
            continue
        aug[r], aug[sel] = aug[sel], aug[r]
        inv = f.inv(aug[r][col])
        aug[r] = [f.mul(inv, x) for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col] != zero:
                c = aug[i][col]
                aug[i] = [f.sub(x, f.mul(c, y)) for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == len(aug):
            break
    for i in range(r, len(aug)):
        if aug[i][n] != zero:
            return None
    x = [zero] * n
    for i, col in enumerate(pivots):
        x[col] = aug[i][n]
    return tuple(x)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of GF(q)^n."""
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den
