"""A small immutable matrix type over any ring context.

Entries may be ints, RationalR, GroupRingElement, TwistedLaurentElement or
TruncatedSeries; the ``ring`` object supplies zero and one so that empty
sums and zero-sized shapes behave.
"""
from __future__ import annotations

from typing import Any, Callable, Iterable, List, Sequence

from .errors import ContextMismatch, DimensionMismatch


class Matrix:
    __slots__ = ("ring", "nrows", "ncols", "rows")

    def __init__(self, ring, rows: Iterable[Sequence[Any]], nrows: int = None, ncols: int = None):
        rows = tuple(tuple(r) for r in rows)
        if nrows is None:
            nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if len(rows) != nrows:
            if rows or ncols:
                raise DimensionMismatch(f"expected {nrows} rows, got {len(rows)}")
            rows = tuple(() for _ in range(nrows))
        if ncols and any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged matrix rows")
        if not ncols and any(len(r) for r in rows):
            raise DimensionMismatch("ragged matrix rows")
        self.ring = ring
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if ncols else tuple(() for _ in range(nrows))

    # construction helpers
    @classmethod
    def zeros(cls, ring, nrows: int, ncols: int) -> "Matrix":
        z = ring.zero
        return cls(ring, [[z] * ncols for _ in range(nrows)], nrows, ncols)

    @classmethod
    def identity(cls, ring, n: int) -> "Matrix":
        z, o = ring.zero, ring.one
        return cls(ring, [[o if i == j else z for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def block(cls, ring, blocks: Sequence[Sequence["Matrix"]]) -> "Matrix":
        """Assemble a block matrix; every block in a row shares nrows, every block in a column ncols."""
        heights = [row[0].nrows for row in blocks]
        widths = [b.ncols for b in blocks[0]] if blocks else []
        out: List[list] = []
        for bi, row in enumerate(blocks):
            if len(row) != len(widths):
                raise DimensionMismatch("block rows of different lengths")
            for b, w in zip(row, widths):
                if b.nrows != heights[bi] or b.ncols != w:
                    raise DimensionMismatch(
                        f"block of shape {b.shape} does not fit ({heights[bi]}, {w})")
            for r in range(heights[bi]):
                line: list = []
                for b in row:
                    line.extend(b.rows[r])
                out.append(line)
        return cls(ring, out, sum(heights), sum(widths))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def entries(self):
        for i, row in enumerate(self.rows):
            for j, x in enumerate(row):
                yield i, j, x

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(self.ring, [[self.rows[i][j] for j in cols] for i in rows], len(rows), len(cols))

    def map(self, fn: Callable[[Any], Any], ring=None) -> "Matrix":
        ring = self.ring if ring is None else ring
        return Matrix(ring, [[fn(x) for x in row] for row in self.rows], self.nrows, self.ncols)

    def is_zero(self) -> bool:
        return not any(x for row in self.rows for x in row)

    def nonzero_entries(self):
        return [(i, j, x) for i, j, x in self.entries() if x]

    # arithmetic
    def _check_same(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected a Matrix, got {type(other).__name__}")
        if other.ring != self.ring:
            raise ContextMismatch(f"matrices over {self.ring!r} and {other.ring!r}")
        if other.shape != self.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                      self.nrows, self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix(self.ring, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                      self.nrows, self.ncols)

    def __neg__(self) -> "Matrix":
        return self.map(lambda x: -x)

    def __mul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return self.map(lambda x: x * other)
        if other.ring != self.ring:
            raise ContextMismatch(f"matrices over {self.ring!r} and {other.ring!r}")
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        zero = self.ring.zero
        cols = list(zip(*other.rows)) if other.ncols and other.nrows else [()] * other.ncols
        out = []
        for row in self.rows:
            support = [(k, a) for k, a in enumerate(row) if a]
            line = []
            for col in cols:
                s = zero
                for k, a in support:
                    b = col[k]
                    if b:
                        s = s + a * b
                line.append(s)
            out.append(line)
        return Matrix(self.ring, out, self.nrows, other.ncols)

    def __rmul__(self, scalar) -> "Matrix":
        return self.map(lambda x: scalar * x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.ring == other.ring and (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]

    def transpose(self) -> "Matrix":
        return Matrix(self.ring, [list(c) for c in zip(*self.rows)] if self.nrows else [],
                      self.ncols, self.nrows)

    def tolist(self) -> List[list]:
        return [list(r) for r in self.rows]

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix[{self.nrows}x{self.ncols}]({body})"


def integer_matrix(rows: Sequence[Sequence[int]], nrows: int = None, ncols: int = None) -> Matrix:
    from .ring_core import ZZ

    return Matrix(ZZ, rows, nrows, ncols)
