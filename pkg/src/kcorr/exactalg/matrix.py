"""Exact matrices over quotient rings, plus the linear algebra the package
needs: block assembly, inverses of scalar matrices, and rank over the
fraction field of an integral coordinate ring."""

from __future__ import annotations

from ..errors import AmbientMismatch, ShapeError
from .groebner import GroebnerBasis
from .poly import Poly
from .quotient import QElem


class Matrix:
    """Immutable matrix with QElem entries over a fixed quotient ring."""

    __slots__ = ("basis", "nrows", "ncols", "rows", "_hash")

    def __init__(self, basis: GroebnerBasis, rows, nrows=None, ncols=None):
        rows = tuple(tuple(r) for r in rows)
        if nrows is None:
            nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise ShapeError("ragged matrix data")
        for r in rows:
            for e in r:
                if e.basis != basis:
                    raise AmbientMismatch("matrix entry over a different ring")
        self.basis = basis
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows
        self._hash = None

    # constructors --------------------------------------------------------

    @staticmethod
    def zeros(basis: GroebnerBasis, nrows: int, ncols: int) -> "Matrix":
        z = QElem.zero(basis)
        return Matrix(basis, [[z] * ncols for _ in range(nrows)], nrows, ncols)

    @staticmethod
    def identity(basis: GroebnerBasis, n: int) -> "Matrix":
        z = QElem.zero(basis)
        o = QElem.one(basis)
        return Matrix(basis, [[o if i == j else z for j in range(n)]
                              for i in range(n)], n, n)

    @staticmethod
    def diagonal(basis: GroebnerBasis, entries) -> "Matrix":
        entries = list(entries)
        n = len(entries)
        z = QElem.zero(basis)
        return Matrix(basis, [[entries[i] if i == j else z for j in range(n)]
                              for i in range(n)], n, n)

    # basic operations ------------------------------------------------------

    def _check_ring(self, other: "Matrix"):
        if self.basis != other.basis:
            raise AmbientMismatch("matrices over different rings")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_ring(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ShapeError("matrix addition shape mismatch")
        return Matrix(self.basis,
                      [[a + b for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.rows, other.rows)],
                      self.nrows, self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_ring(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ShapeError("matrix subtraction shape mismatch")
        return Matrix(self.basis,
                      [[a - b for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.rows, other.rows)],
                      self.nrows, self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix(self.basis, [[-a for a in r] for r in self.rows],
                      self.nrows, self.ncols)

    def __mul__(self, other: "Matrix") -> "Matrix":
        self._check_ring(other)
        if self.ncols != other.nrows:
            raise ShapeError(
                f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
        if self.nrows == 0 or other.ncols == 0 or self.ncols == 0:
            return Matrix.zeros(self.basis, self.nrows, other.ncols)
        cols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            out_row = []
            for col in cols:
                acc = Poly.zero(self.basis.ambient)
                for a, b in zip(row, col):
                    if a.rep.is_zero() or b.rep.is_zero():
                        continue
                    acc = acc + a.rep * b.rep
                out_row.append(QElem(self.basis, acc))
            out.append(out_row)
        return Matrix(self.basis, out, self.nrows, other.ncols)

    def scale(self, c) -> "Matrix":
        return Matrix(self.basis, [[a.scale(c) for a in r] for r in self.rows],
                      self.nrows, self.ncols)

    def scale_elem(self, q: QElem) -> "Matrix":
        return Matrix(self.basis, [[a * q for a in r] for r in self.rows],
                      self.nrows, self.ncols)

    def transpose(self) -> "Matrix":
        out = [[self.rows[i][j] for i in range(self.nrows)]
               for j in range(self.ncols)]
        return Matrix(self.basis, out, self.ncols, self.nrows)

    def map_entries(self, fn, basis: GroebnerBasis | None = None) -> "Matrix":
        basis = basis if basis is not None else self.basis
        return Matrix(basis, [[fn(a) for a in r] for r in self.rows],
                      self.nrows, self.ncols)

    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self.rows for a in r)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    # block assembly ----------------------------------------------------

    @staticmethod
    def block_diag(basis: GroebnerBasis, blocks) -> "Matrix":
        blocks = list(blocks)
        nrows = sum(b.nrows for b in blocks)
        ncols = sum(b.ncols for b in blocks)
        out = [[QElem.zero(basis)] * ncols for _ in range(nrows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.nrows):
                for j in range(b.ncols):
                    out[r0 + i][c0 + j] = b.rows[i][j]
            r0 += b.nrows
            c0 += b.ncols
        return Matrix(basis, out, nrows, ncols)

    @staticmethod
    def permutation(basis: GroebnerBasis, images) -> "Matrix":
        """Matrix sending basis vector j to basis vector images[j]."""
        n = len(images)
        z = QElem.zero(basis)
        o = QElem.one(basis)
        out = [[z] * n for _ in range(n)]
        for j, i in enumerate(images):
            out[i][j] = o
        return Matrix(basis, out, n, n)

    # equality ------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.basis == other.basis
                and self.nrows == other.nrows and self.ncols == other.ncols
                and self.rows == other.rows)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.basis, self.nrows, self.ncols, self.rows))
        return self._hash

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"


class _Frac:
    """Fraction of ring elements; valid over an integral domain only."""

    __slots__ = ("num", "den")

    def __init__(self, num: QElem, den: QElem):
        self.num = num
        self.den = den

    def is_zero(self):
        return self.num.is_zero()

    def sub_mul(self, other: "_Frac", factor: "_Frac") -> "_Frac":
        # self - other*factor
        a = self.num * other.den * factor.den - other.num * factor.num * self.den
        b = self.den * other.den * factor.den
        return _Frac(a, b)

    def div(self, other: "_Frac") -> "_Frac":
        return _Frac(self.num * other.den, self.den * other.num)


def rank_over_fraction_field(mat: Matrix) -> int:
    """Rank of ``mat`` over Frac(R); the ring must be an integral domain."""
    one = QElem.one(mat.basis)
    rows = [[_Frac(e, one) for e in r] for r in mat.rows]
    rank = 0
    col = 0
    while rank < len(rows) and col < mat.ncols:
        pivot_row = None
        for i in range(rank, len(rows)):
            if not rows[i][col].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            col += 1
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        pivot = rows[rank][col]
        for i in range(rank + 1, len(rows)):
            entry = rows[i][col]
            if entry.is_zero():
                continue
            factor = entry.div(pivot)
            rows[i] = [rows[i][j].sub_mul(rows[rank][j], factor)
                       for j in range(mat.ncols)]
        rank += 1
        col += 1
    return rank


def scalar_value(e: QElem):
    """The constant value of an entry known to be a scalar."""
    if not e.rep.is_constant():
        raise ShapeError(f"entry {e} is not a scalar")
    return e.rep.constant_value()


def invert_scalar_matrix(mat: Matrix) -> Matrix | None:
    """Inverse of a square matrix with scalar entries; None when singular."""
    if mat.nrows != mat.ncols:
        raise ShapeError("only square matrices can be inverted")
    n = mat.nrows
    field = mat.basis.ambient.field
    a = [[scalar_value(e) for e in row] for row in mat.rows]
    inv = [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot_row = None
        for i in range(col, n):
            if a[i][col]:
                pivot_row = i
                break
        if pivot_row is None:
            return None
        a[col], a[pivot_row] = a[pivot_row], a[col]
        inv[col], inv[pivot_row] = inv[pivot_row], inv[col]
        p = field.inv(a[col][col])
        a[col] = [field.mul(p, v) for v in a[col]]
        inv[col] = [field.mul(p, v) for v in inv[col]]
        for i in range(n):
            if i == col or not a[i][col]:
                continue
            f = a[i][col]
            a[i] = [field.sub(v, field.mul(f, w)) for v, w in zip(a[i], a[col])]
            inv[i] = [field.sub(v, field.mul(f, w)) for v, w in zip(inv[i], inv[col])]
    basis = mat.basis
    return Matrix(basis, [[QElem.const(basis, v) for v in row] for row in inv], n, n)
