"""Exact matrices and canonical subspaces over Q and Q(i).

Matrices are dense and immutable; every entry is an exact scalar and all
entries of one matrix live in one field ("Q" or "Qi" - mixed input is
promoted to "Qi").  Subspaces are represented by their reduced-row-echelon
basis, which is unique, so equal subspaces are structurally equal objects.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from . import kernel
from .errors import AmbientMismatch, NotInvolution
from .scalars import Gaussian, Q0, Q1, Rational, Scalar, conj, format_scalar

__all__ = [
    "ExactMatrix",
    "RowReducer",
    "Subspace",
    "rref_rank",
    "kernel_basis",
    "subspace_sum_intersect",
    "conjugate_vector",
    "Vector",
]

Vector = tuple[Scalar, ...]


def _coerce_scalar(x) -> Scalar:
    if isinstance(x, (Rational, Gaussian)):
        return x
    if isinstance(x, int):
        return Rational(x)
    raise TypeError(f"not a scalar: {x!r}")


class ExactMatrix:
    """Immutable dense matrix of exact scalars."""

    __slots__ = ("rows", "cols", "entries", "field")

    def __init__(self, entries: Iterable[Iterable], cols: int | None = None):
        grid = tuple(tuple(_coerce_scalar(x) for x in row) for row in entries)
        nrows = len(grid)
        if nrows:
            ncols = len(grid[0])
            if any(len(r) != ncols for r in grid):
                raise ValueError("ragged rows")
        else:
            if cols is None:
                raise ValueError("empty matrix needs an explicit column count")
            ncols = cols
        field = "Q"
        if any(isinstance(x, Gaussian) for row in grid for x in row):
            field = "Qi"
            grid = tuple(
                tuple(x if isinstance(x, Gaussian) else Gaussian(x) for x in row)
                for row in grid
            )
        object.__setattr__(self, "rows", nrows)
        object.__setattr__(self, "cols", ncols)
        object.__setattr__(self, "entries", grid)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[Q1 if i == j else Q0 for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls([[Q0] * cols for _ in range(rows)], cols=cols)

    # -- basics --------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and all(
                a == b
                for ra, rb in zip(self.entries, other.entries)
                for a, b in zip(ra, rb)
            )
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __getitem__(self, idx: tuple[int, int]) -> Scalar:
        i, j = idx
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def __repr__(self):
        body = "; ".join(
            " ".join(format_scalar(x) for x in row) for row in self.entries
        )
        return f"ExactMatrix({self.rows}x{self.cols} [{body}])"

    def is_zero(self) -> bool:
        return all(not x for row in self.entries for x in row)

    # -- algebra ---------------------------------------------------------------

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            [self.column(j) for j in range(self.cols)] if self.cols else [],
            cols=self.rows,
        )

    def stack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.cols:
            raise AmbientMismatch(f"cannot stack {self.cols} with {other.cols} columns")
        return ExactMatrix(self.entries + other.entries, cols=self.cols)

    def augment(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.rows != other.rows:
            raise AmbientMismatch("row count mismatch in augment")
        return ExactMatrix(
            [ra + rb for ra, rb in zip(self.entries, other.entries)],
            cols=self.cols + other.cols,
        )

    def scale(self, c) -> "ExactMatrix":
        c = _coerce_scalar(c)
        return ExactMatrix(
            [[c * x for x in row] for row in self.entries], cols=self.cols
        )

    def add(self, other: "ExactMatrix") -> "ExactMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise AmbientMismatch("shape mismatch in add")
        return ExactMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
            cols=self.cols,
        )

    def matmul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise AmbientMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        # Sparse-aware triple loop: differential matrices are mostly zeros.
        out = [[Q0] * other.cols for _ in range(self.rows)]
        for i, row in enumerate(self.entries):
            acc = out[i]
            for k, a in enumerate(row):
                if not a:
                    continue
                orow = other.entries[k]
                for j, b in enumerate(orow):
                    if b:
                        acc[j] = acc[j] + a * b
        return ExactMatrix(out, cols=other.cols)

    def matvec(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise AmbientMismatch("vector length mismatch in matvec")
        vec = [_coerce_scalar(x) for x in v]
        out = []
        for row in self.entries:
            s: Scalar = Q0
            for a, x in zip(row, vec):
                if a and x:
                    s = s + a * x
            out.append(s)
        return tuple(out)

    def conj_entrywise(self) -> "ExactMatrix":
        return ExactMatrix(
            [[conj(x) for x in row] for row in self.entries], cols=self.cols
        )

    # -- elimination ------------------------------------------------------------

    def _to_pairs(self):
        if self.field == "Q":
            return [[(x.num, x.den) for x in row] for row in self.entries]
        return [
            [(x.re.num, x.re.den, x.im.num, x.im.den) for x in row]
            for row in self.entries
        ]

    @staticmethod
    def _from_pairs(rows, ncols: int, field: str) -> "ExactMatrix":
        if field == "Q":
            grid = [[Rational(n, d) for (n, d) in row] for row in rows]
        else:
            grid = [
                [Gaussian(Rational(a, b), Rational(c, d)) for (a, b, c, d) in row]
                for row in rows
            ]
        return ExactMatrix(grid, cols=ncols)

    def rref(self) -> tuple["ExactMatrix", list[int]]:
        """Unique reduced row echelon form and its pivot columns."""
        if self.rows == 0 or self.cols == 0:
            return self, []
        pairs = self._to_pairs()
        if self.field == "Q":
            out, pivots = kernel.rref_q(pairs, self.cols)
        else:
            out, pivots = kernel.rref_qi(pairs, self.cols)
        return self._from_pairs(out, self.cols, self.field), pivots

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        pairs = self._to_pairs()
        if self.field == "Q":
            return kernel.rank_q(pairs, self.cols)
        return kernel.rank_qi(pairs, self.cols)

    def inverse(self) -> "ExactMatrix":
        """Inverse of a square matrix; raises ValueError when singular."""
        if self.rows != self.cols:
            raise ValueError("only square matrices can be inverted")
        n = self.rows
        if n == 0:
            return self
        aug = self.augment(ExactMatrix.identity(n))
        red, pivots = aug.rref()
        if pivots != list(range(n)):
            raise ValueError("matrix is singular")
        return ExactMatrix(
            [row[n:] for row in red.entries], cols=n
        )


def rref_rank(m: ExactMatrix) -> tuple[ExactMatrix, int]:
    """Reduced row echelon form together with the rank."""
    red, pivots = m.rref()
    return red, len(pivots)


def kernel_basis(m: ExactMatrix) -> "Subspace":
    """Null space of ``m`` acting on column vectors, as a canonical subspace."""
    n = m.cols
    red, pivots = m.rref()
    free = [j for j in range(n) if j not in set(pivots)]
    zero = Q0 if m.field == "Q" else Gaussian(0)
    one = Q1 if m.field == "Q" else Gaussian(1)
    vecs = []
    for f in free:
        v = [zero] * n
        v[f] = one
        for r, p in enumerate(pivots):
            coeff = red.entries[r][f]
            if coeff:
                v[p] = -coeff
        vecs.append(v)
    return Subspace.from_spanning(vecs, ambient_dim=n)


class Subspace:
    """Row space with a canonical (RREF) basis; equality is structural."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: ExactMatrix):
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def from_spanning(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        rows = [tuple(_coerce_scalar(x) for x in v) for v in vectors]
        for r in rows:
            if len(r) != ambient_dim:
                raise AmbientMismatch(
                    f"vector of length {len(r)} in ambient dimension {ambient_dim}"
                )
        if not rows:
            return cls(ambient_dim, ExactMatrix([], cols=ambient_dim))
        m = ExactMatrix(rows, cols=ambient_dim)
        red, pivots = m.rref()
        basis = ExactMatrix(red.entries[: len(pivots)], cols=ambient_dim)
        return cls(ambient_dim, basis)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ExactMatrix([], cols=ambient_dim))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ExactMatrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def vectors(self) -> tuple[Vector, ...]:
        return self.basis.entries

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} in ambient {self.ambient_dim})"

    def contains(self, v: Sequence) -> bool:
        vec = tuple(_coerce_scalar(x) for x in v)
        if len(vec) != self.ambient_dim:
            raise AmbientMismatch("vector length mismatch")
        residual = self.reduce(vec)
        return all(not x for x in residual)

    def reduce(self, v: Sequence) -> Vector:
        """Reduce a vector against the canonical basis (residual coordinates)."""
        vec = [_coerce_scalar(x) for x in v]
        # basis is already RREF; its pivots are the leading columns of each row
        for row in self.basis.entries:
            lead = next((j for j, x in enumerate(row) if x), None)
            if lead is None:
                continue
            c = vec[lead]
            if c:
                for j in range(lead, self.ambient_dim):
                    if row[j]:
                        vec[j] = vec[j] - c * row[j]
        return tuple(vec)

    def sum(self, other: "Subspace") -> "Subspace":
        return subspace_sum_intersect(self, other)[0]

    def intersect(self, other: "Subspace") -> "Subspace":
        return subspace_sum_intersect(self, other)[1]

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.vectors())


class RowReducer:
    """Incremental exact row reduction for dimension/membership queries.

    Rows are kept as Gaussian-rational integer quadruples and reduced with
    the same tuple arithmetic as the pure kernel, which keeps this cheap for
    the search's many small rank queries.
    """

    __slots__ = ("ncols", "rows", "leads")

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[list] = []
        self.leads: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    @staticmethod
    def _quad(x):
        if isinstance(x, Gaussian):
            return (x.re.num, x.re.den, x.im.num, x.im.den)
        if isinstance(x, Rational):
            return (x.num, x.den, 0, 1)
        return (x, 1, 0, 1)

    def _reduce(self, vec):
        from ._purekernel import qi_mul, qi_sub

        v = [self._quad(x) for x in vec]
        for lead, row in zip(self.leads, self.rows):
            c = v[lead]
            if c[0] or c[2]:
                for j in range(lead, self.ncols):
                    r = row[j]
                    if r[0] or r[2]:
                        v[j] = qi_sub(v[j], qi_mul(c, r))
        return v

    def add(self, vec) -> bool:
        """Reduce and insert; True when the span grew."""
        from ._purekernel import qi_div

        v = self._reduce(vec)
        lead = next((j for j, x in enumerate(v) if x[0] or x[2]), None)
        if lead is None:
            return False
        inv = v[lead]
        v = [qi_div(x, inv) if (x[0] or x[2]) else x for x in v]
        self.rows.append(v)
        self.leads.append(lead)
        return True

    def contains(self, vec) -> bool:
        return not any(x[0] or x[2] for x in self._reduce(vec))


def subspace_sum_intersect(a: Subspace, b: Subspace) -> tuple[Subspace, Subspace]:
    """Sum and intersection; dim(sum) + dim(intersection) = dim a + dim b."""
    if a.ambient_dim != b.ambient_dim:
        raise AmbientMismatch(
            f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}"
        )
    n = a.ambient_dim
    total = Subspace.from_spanning(a.vectors() + b.vectors(), ambient_dim=n)
    if a.dim == 0 or b.dim == 0:
        return total, Subspace.zero(n)
    # Null space of [A^T | B^T]: alpha*A = -beta*B gives the intersection.
    stacked = a.basis.stack(b.basis).transpose()
    null = kernel_basis(stacked)
    vecs = []
    for w in null.vectors():
        alpha = w[: a.dim]
        vec = [Q0] * n
        for c, row in zip(alpha, a.basis.entries):
            if c:
                vec = [acc + c * x for acc, x in zip(vec, row)]
        vecs.append(vec)
    inter = Subspace.from_spanning(vecs, ambient_dim=n)
    return total, inter


def check_real_structure(s: ExactMatrix) -> None:
    """Require S * conj(S) = identity (an antilinear involution)."""
    if s.rows != s.cols:
        raise NotInvolution("real structure must be square")
    if not s.matmul(s.conj_entrywise()) == ExactMatrix.identity(s.rows):
        raise NotInvolution("S * conj(S) is not the identity")


def conjugate_vector(v: Sequence, real_structure: ExactMatrix) -> Vector:
    """Apply the antilinear involution v -> S * conj(v)."""
    check_real_structure(real_structure)
    return real_structure.matvec([conj(_coerce_scalar(x)) for x in v])
