"""Exact linear algebra over Z and over prime fields F_p.

Two small immutable matrix types back everything downstream: `IntMatrix`
(arbitrary-precision integers; Smith normal form, Bareiss determinants,
unimodular inverses) and `FpMatrix` (residues mod an odd prime; reduced
row echelon form, annihilators under a symmetric form, and canonical
enumeration of subspaces).

Subspaces are always represented by their reduced row echelon basis, so
two subspaces are equal exactly when their representing matrices are
equal, and deduplication is plain equality of tuples.

Enumeration is budgeted: any request whose subspace count exceeds the
budget (default 10**6, overridable per call or through the
KNOTORDER_SUBSPACE_BUDGET environment variable) raises
`SubspaceBudgetError` before any work is done.  Streams of subspaces may
be consumed from several workers, provided the caller partitions the
stream so each item is processed exactly once.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .number_theory import PreconditionError, is_prime

__all__ = [
    "DEFAULT_SUBSPACE_BUDGET",
    "SUBSPACE_BUDGET_ENV",
    "SubspaceBudgetError",
    "PreconditionError",
    "IntMatrix",
    "SmithForm",
    "smith_normal_form",
    "FpMatrix",
    "row_reduce",
    "rref_basis",
    "rank",
    "nullspace",
    "annihilator",
    "gaussian_binomial",
    "subspace_budget",
    "enumerate_subspaces",
]

DEFAULT_SUBSPACE_BUDGET = 1_000_000
SUBSPACE_BUDGET_ENV = "KNOTORDER_SUBSPACE_BUDGET"


class SubspaceBudgetError(RuntimeError):
    """A subspace enumeration would exceed the configured budget."""


def _as_entries(entries: Iterable[Iterable[int]], cols: int | None) -> tuple:
    rows = tuple(tuple(int(x) for x in row) for row in entries)
    if rows:
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise PreconditionError("matrix rows must all have the same length")
        if cols is not None and cols != width:
            raise PreconditionError(f"rows have length {width}, expected {cols}")
        return rows
    if cols is None:
        cols = 0
    return rows


class IntMatrix:
    """Immutable integer matrix.  Arithmetic is exact at any size of entry."""

    __slots__ = ("entries", "rows", "cols")

    def __init__(self, entries: Iterable[Iterable[int]], cols: int | None = None):
        self.entries = _as_entries(entries, cols)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else (cols or 0)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(tuple((0,) * cols for _ in range(rows)), cols=cols)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.cols, self.entries))

    def __repr__(self) -> str:
        return f"IntMatrix({list(map(list, self.entries))!r})"

    def transpose(self) -> "IntMatrix":
        if not self.entries:
            return IntMatrix(((),) * self.cols, cols=0)
        return IntMatrix(zip(*self.entries), cols=self.rows)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(((-x for x in row) for row in self.entries), cols=self.cols)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(
            ((a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)),
            cols=self.cols,
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(
            ((a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)),
            cols=self.cols,
        )

    def __mul__(self, other):
        if isinstance(other, int):
            return IntMatrix(((other * x for x in row) for row in self.entries), cols=self.cols)
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise PreconditionError(
                    f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
                )
            cols = other.transpose().entries
            return IntMatrix(
                (
                    tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                    for row in self.entries
                ),
                cols=other.cols,
            )
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, k: int) -> "IntMatrix":
        if self.rows != self.cols:
            raise PreconditionError("matrix power needs a square matrix")
        if k < 0:
            raise PreconditionError("negative matrix powers are not defined here")
        result = IntMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def block_diag(self, other: "IntMatrix") -> "IntMatrix":
        """Block-diagonal sum; the empty matrix is the identity for it."""
        top = tuple(row + (0,) * other.cols for row in self.entries)
        bottom = tuple((0,) * self.cols + row for row in other.entries)
        return IntMatrix(top + bottom, cols=self.cols + other.cols)

    def det(self) -> int:
        """Determinant by fraction-free Bareiss elimination (exact)."""
        if self.rows != self.cols:
            raise PreconditionError("determinant needs a square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = [list(row) for row in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k]:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def inverse_unimodular(self) -> "IntMatrix":
        """Inverse of a matrix with determinant +-1; exact, integral."""
        if self.rows != self.cols:
            raise PreconditionError("only square matrices can be inverted")
        n = self.rows
        aug = [
            [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
            for i, row in enumerate(self.entries)
        ]
        for col in range(n):
            pivot = next((i for i in range(col, n) if aug[i][col]), None)
            if pivot is None:
                raise PreconditionError("matrix is singular, not unimodular")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [x * inv for x in aug[col]]
            for i in range(n):
                if i != col and aug[i][col]:
                    f = aug[i][col]
                    aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
        out = [row[n:] for row in aug]
        if any(x.denominator != 1 for row in out for x in row):
            raise PreconditionError("matrix is not unimodular (inverse is not integral)")
        return IntMatrix(((int(x) for x in row) for row in out), cols=n)

    def _same_shape(self, other: "IntMatrix") -> None:
        if not isinstance(other, IntMatrix):
            raise PreconditionError("expected an IntMatrix")
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise PreconditionError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )


@dataclass(frozen=True)
class SmithForm:
    """Diagonal of the Smith normal form, with optional transforms.

    diagonal: nonnegative invariant factors d_1 | d_2 | ... with zeros
    trailing; length min(rows, cols) of the input.  When transforms are
    retained, left * A * right equals the diagonal matrix and both
    transforms are unimodular.
    """

    diagonal: tuple[int, ...]
    left: IntMatrix | None = None
    right: IntMatrix | None = None

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def nontrivial(self) -> tuple[int, ...]:
        """Invariant factors > 1 (the torsion the diagonal describes)."""
        return tuple(d for d in self.diagonal if d > 1)


def smith_normal_form(A: IntMatrix, with_transforms: bool = False) -> SmithForm:
    """Smith normal form over Z.

    Classic pivoting by smallest absolute value with Euclidean
    reduction; after each pivot settles, the pivot is forced to divide
    every entry of the remaining submatrix, so the divisibility chain
    holds by construction.

    >>> smith_normal_form(IntMatrix([[2, 0], [0, 3]])).diagonal
    (1, 6)
    """
    nrows, ncols = A.rows, A.cols
    m = [list(row) for row in A.entries]
    left = [[int(i == j) for j in range(nrows)] for i in range(nrows)] if with_transforms else None
    right = [[int(i == j) for j in range(ncols)] for i in range(ncols)] if with_transforms else None

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        if left is not None:
            left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        if right is not None:
            for row in right:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, factor):
        m[dst] = [a + factor * b for a, b in zip(m[dst], m[src])]
        if left is not None:
            left[dst] = [a + factor * b for a, b in zip(left[dst], left[src])]

    def add_col(dst, src, factor):
        for row in m:
            row[dst] += factor * row[src]
        if right is not None:
            for row in right:
                row[dst] += factor * row[src]

    def negate_row(i):
        m[i] = [-a for a in m[i]]
        if left is not None:
            left[i] = [-a for a in left[i]]

    t = 0
    while t < min(nrows, ncols):
        # find the smallest nonzero entry of the trailing submatrix
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if m[i][j] and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        while True:
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            if m[t][t] < 0:
                negate_row(t)
            piv = m[t][t]
            # Euclidean reduction of column t, then row t; a nonzero
            # remainder is strictly smaller than the pivot and becomes
            # the next pivot.
            smaller = None
            for i in range(t + 1, nrows):
                if m[i][t]:
                    add_row(i, t, -(m[i][t] // piv))
                    if m[i][t]:
                        smaller = (i, t)
            if smaller is None:
                for j in range(t + 1, ncols):
                    if m[t][j]:
                        add_col(j, t, -(m[t][j] // piv))
                        if m[t][j]:
                            smaller = (t, j)
            if smaller is not None:
                best = smaller
                continue
            # pivot must divide the whole remaining submatrix, or the
            # divisibility chain could break later
            offender = None
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if m[i][j] % piv:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
            best = (t, t)
        t += 1

    diag = tuple(m[i][i] for i in range(min(nrows, ncols)))
    if with_transforms:
        return SmithForm(diag, IntMatrix(left, cols=nrows), IntMatrix(right, cols=ncols))
    return SmithForm(diag)


class FpMatrix:
    """Immutable matrix over F_p, p an odd prime.  Entries live in [0, p)."""

    __slots__ = ("p", "entries", "rows", "cols")

    def __init__(self, p: int, entries: Iterable[Iterable[int]], cols: int | None = None):
        if p == 2 or not is_prime(p):
            raise PreconditionError(f"modulus {p} must be an odd prime")
        self.p = p
        raw = _as_entries(entries, cols)
        self.entries = tuple(tuple(x % p for x in row) for row in raw)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else (cols or 0)

    @classmethod
    def identity(cls, p: int, n: int) -> "FpMatrix":
        return cls(p, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), cols=n)

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> "FpMatrix":
        return cls(p, tuple((0,) * cols for _ in range(rows)), cols=cols)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FpMatrix)
            and self.p == other.p
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.p, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"FpMatrix(p={self.p}, {list(map(list, self.entries))!r})"

    def transpose(self) -> "FpMatrix":
        if not self.entries:
            return FpMatrix(self.p, ((),) * self.cols, cols=0)
        return FpMatrix(self.p, zip(*self.entries), cols=self.rows)

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        if not isinstance(other, FpMatrix) or self.p != other.p:
            raise PreconditionError("matrix product needs two FpMatrix over the same p")
        if self.cols != other.rows:
            raise PreconditionError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        cols = tuple(zip(*other.entries)) if other.entries else ((),) * other.cols
        return FpMatrix(
            self.p,
            (
                tuple(sum(a * b for a, b in zip(row, col)) % self.p for col in cols)
                for row in self.entries
            ),
            cols=other.cols,
        )

    def scale(self, k: int) -> "FpMatrix":
        return FpMatrix(self.p, ((k * x for x in row) for row in self.entries), cols=self.cols)

    def stack(self, other: "FpMatrix") -> "FpMatrix":
        if self.p != other.p or self.cols != other.cols:
            raise PreconditionError("can only stack matrices over the same p with equal width")
        return FpMatrix(self.p, self.entries + other.entries, cols=self.cols)

    def mat_vec(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise PreconditionError("vector length must match column count")
        return tuple(sum(a * b for a, b in zip(row, v)) % self.p for row in self.entries)


def row_reduce(M: FpMatrix) -> FpMatrix:
    """Reduced row echelon form over F_p (same shape, zero rows at the bottom)."""
    p = M.p
    rows = [list(r) for r in M.entries]
    nrows, ncols = M.rows, M.cols
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == nrows:
            break
    return FpMatrix(p, rows, cols=ncols)


def rref_basis(M: FpMatrix) -> FpMatrix:
    """Canonical basis of the row space: RREF with zero rows dropped."""
    red = row_reduce(M)
    kept = tuple(row for row in red.entries if any(row))
    return FpMatrix(M.p, kept, cols=M.cols)


def rank(M: FpMatrix) -> int:
    """Rank over F_p.

    >>> rank(FpMatrix(7, [[1, 1], [2, 2]]))
    1
    """
    return rref_basis(M).rows


def nullspace(M: FpMatrix) -> FpMatrix:
    """Canonical (RREF) basis of the right kernel {x : Mx = 0}."""
    p, ncols = M.p, M.cols
    red = rref_basis(M)
    pivots = []
    for row in red.entries:
        pivots.append(next(j for j, x in enumerate(row) if x))
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-red.entries[r][f]) % p
        basis.append(v)
    return rref_basis(FpMatrix(p, basis, cols=ncols))


def annihilator(S: FpMatrix, form: FpMatrix) -> FpMatrix:
    """Annihilator of the subspace S under a symmetric nonsingular form.

    S is given by basis rows; the result is the canonical basis of
    {x : form(s, x) = 0 for all s in S}.  Applying it twice returns S's
    canonical basis (the form is nonsingular, so annihilation is an
    involution on subspaces).

    >>> G = FpMatrix(7, [[0, 1], [1, 0]])
    >>> annihilator(FpMatrix(7, [[1, 0]]), G).entries
    ((1, 0),)
    """
    p = form.p
    if form.rows != form.cols:
        raise PreconditionError("the form must be square")
    if form.entries != form.transpose().entries:
        raise PreconditionError("the form must be symmetric")
    if rank(form) != form.rows:
        raise PreconditionError("the form is singular; annihilators need a nonsingular form")
    if S.p != p or S.cols != form.cols:
        raise PreconditionError("subspace and form live in different spaces")
    if S.rows == 0:
        return rref_basis(FpMatrix.identity(p, form.cols))
    return nullspace(S @ form)


def gaussian_binomial(d: int, k: int, p: int) -> int:
    """Number of k-dimensional subspaces of F_p^d.

    >>> gaussian_binomial(2, 1, 7), gaussian_binomial(4, 2, 7)
    (8, 2850)
    """
    if not 0 <= k <= d:
        return 0
    n = 1
    for i in range(k):
        n = n * (p ** (d - i) - 1) // (p ** (i + 1) - 1)
    return n


def subspace_budget(budget: int | None = None) -> int:
    """Resolve the enumeration budget: explicit arg, else env var, else default."""
    if budget is not None:
        return budget
    env = os.environ.get(SUBSPACE_BUDGET_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise PreconditionError(
                f"{SUBSPACE_BUDGET_ENV}={env!r} is not an integer"
            ) from exc
    return DEFAULT_SUBSPACE_BUDGET


def enumerate_subspaces(
    d: int, k: int, p: int, budget: int | None = None
) -> Iterator[FpMatrix]:
    """All k-dimensional subspaces of F_p^d as canonical RREF bases.

    The enumeration is deterministic: pivot column sets in lexicographic
    order, then free entries in counting order.  Raises
    SubspaceBudgetError before yielding anything if the subspace count
    exceeds the budget.
    """
    if not 0 <= k <= d:
        raise PreconditionError(f"need 0 <= k <= d, got k={k}, d={d}")
    count = gaussian_binomial(d, k, p)
    limit = subspace_budget(budget)
    if count > limit:
        raise SubspaceBudgetError(
            f"{count} subspaces of dimension {k} in F_{p}^{d} exceed the budget {limit}; "
            f"raise it explicitly or via {SUBSPACE_BUDGET_ENV}"
        )
    if k == 0:
        yield FpMatrix(p, (), cols=d)
        return
    for pivots in itertools.combinations(range(d), k):
        pivot_set = set(pivots)
        free = [
            (r, c)
            for r in range(k)
            for c in range(pivots[r] + 1, d)
            if c not in pivot_set
        ]
        template = [[0] * d for _ in range(k)]
        for r, c in enumerate(pivots):
            template[r][c] = 1
        for values in itertools.product(range(p), repeat=len(free)):
            rows = [row[:] for row in template]
            for (r, c), v in zip(free, values):
                rows[r][c] = v
            yield FpMatrix(p, rows, cols=d)
