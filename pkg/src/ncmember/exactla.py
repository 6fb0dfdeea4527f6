"""
Exact dense linear algebra over the rationals.

Scalars are :class:`fractions.Fraction` values, which are always kept in
lowest terms with a positive denominator.  Nothing here ever rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

Rat = Fraction

__all__ = [
    "Rat",
    "DimensionError",
    "RatMatrix",
    "as_rat",
    "rref",
    "rank",
    "solve_linear",
    "in_column_space",
    "IncrementalSpan",
]


class DimensionError(ValueError):
    """Raised when matrix/vector shapes do not fit together."""


def as_rat(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rational scalars")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot use {value!r} as a rational scalar")


@dataclass(frozen=True)
class RatMatrix:
    """Immutable dense matrix, entries stored row-major."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("negative matrix dimension")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )
        object.__setattr__(self, "entries", tuple(as_rat(e) for e in self.entries))

    # -- constructors -----------------------------------------------------

    @classmethod
    def _trusted(cls, rows: int, cols: int, entries: tuple) -> "RatMatrix":
        # entries already Fractions of the right count
        A = cls.__new__(cls)
        object.__setattr__(A, "rows", rows)
        object.__setattr__(A, "cols", cols)
        object.__setattr__(A, "entries", entries)
        return A

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "RatMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged rows")
        return cls(len(rows), cols, tuple(e for r in rows for e in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: Optional[int] = None) -> "RatMatrix":
        columns = [list(c) for c in columns]
        if rows is None:
            if not columns:
                raise DimensionError("row count required for an empty column list")
            rows = len(columns[0])
        for c in columns:
            if len(c) != rows:
                raise DimensionError("ragged columns")
        return cls(rows, len(columns), tuple(columns[j][i] for i in range(rows) for j in range(len(columns))))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        one, zero = Fraction(1), Fraction(0)
        return cls(n, n, tuple(one if i == j else zero for i in range(n) for j in range(n)))

    # -- access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return not any(self.entries)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return RatMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self + other.scale(-1)

    def scale(self, c) -> "RatMatrix":
        c = as_rat(c)
        return RatMatrix(self.rows, self.cols, tuple(c * e for e in self.entries))

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = other.columns()
        out = []
        for i in range(self.rows):
            r = self.row(i)
            nz = [(k, a) for k, a in enumerate(r) if a]
            for c in ocols:
                out.append(sum((a * c[k] for k, a in nz), Fraction(0)))
        return RatMatrix._trusted(self.rows, other.cols, tuple(out))

    def matvec(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} for {self.shape} matrix")
        out = []
        for i in range(self.rows):
            out.append(sum((a * b for a, b in zip(self.row(i), v) if a and b), Fraction(0)))
        return tuple(out)

    def hstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.rows != other.rows:
            raise DimensionError(f"cannot stack {self.shape} beside {other.shape}")
        rows = [self.row(i) + other.row(i) for i in range(self.rows)]
        return RatMatrix(self.rows, self.cols + other.cols, tuple(e for r in rows for e in r))

    def transpose(self) -> "RatMatrix":
        return RatMatrix.from_columns(self.to_rows(), rows=self.cols) if self.rows else RatMatrix(self.cols, 0, ())

    def __repr__(self):
        body = "; ".join(" ".join(str(e) for e in self.row(i)) for i in range(self.rows))
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"


def _eliminate(rows: list[dict], ncols: int) -> list[int]:
    """In-place Gauss-Jordan elimination on the first *ncols* columns.

    Rows are dicts of their nonzero entries, so zeros cost nothing.
    """
    pivots = []
    prow = 0
    nrows = len(rows)
    for c in range(ncols):
        if prow == nrows:
            break
        for i in range(prow, nrows):
            if c in rows[i]:
                break
        else:
            continue
        rows[prow], rows[i] = rows[i], rows[prow]
        pr = rows[prow]
        inv = 1 / pr[c]
        if inv != 1:
            for k in pr:
                pr[k] *= inv
        items = list(pr.items())
        for i in range(nrows):
            r = rows[i]
            if i == prow or c not in r:
                continue
            factor = r[c]
            for k, v in items:
                nv = r.get(k, 0) - factor * v
                if nv:
                    r[k] = nv
                else:
                    del r[k]
        pivots.append(c)
        prow += 1
    return pivots


def _sparse_rows(A: RatMatrix, extra: Optional[Sequence] = None) -> list[dict]:
    rows = []
    for i in range(A.rows):
        r = {k: e for k, e in enumerate(A.row(i)) if e}
        if extra is not None and extra[i]:
            r[A.cols] = extra[i]
        rows.append(r)
    return rows


def rref(A: RatMatrix) -> tuple[RatMatrix, list[int]]:
    """Reduced row echelon form of *A* and its pivot columns."""
    rows = _sparse_rows(A)
    pivots = _eliminate(rows, A.cols)
    zero = Fraction(0)
    entries = tuple(r.get(k, zero) for r in rows for k in range(A.cols))
    return RatMatrix._trusted(A.rows, A.cols, entries), pivots


def rank(A: RatMatrix) -> int:
    if A.rows == 0 or A.cols == 0:
        return 0
    return len(rref(A)[1])


def solve_linear(A: RatMatrix, b: Sequence) -> Optional[tuple]:
    """One exact solution of ``A x = b``, or ``None`` when inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    if len(b) != A.rows:
        raise DimensionError(f"right-hand side of length {len(b)} for {A.rows} rows")
    b = [as_rat(e) for e in b]
    rows = _sparse_rows(A, b)
    pivots = _eliminate(rows, A.cols)
    for r in rows[len(pivots):]:
        if A.cols in r:
            return None
    x = [Fraction(0)] * A.cols
    for r, c in zip(rows, pivots):
        x[c] = r.get(A.cols, Fraction(0))
    return tuple(x)


def in_column_space(A: RatMatrix, w: Sequence) -> bool:
    if len(w) != A.rows:
        raise DimensionError(f"vector of length {len(w)} for {A.rows} rows")
    return solve_linear(A, w) is not None


class IncrementalSpan:
    """A span grown one sparse vector at a time.

    Vectors are mappings ``key -> Fraction`` (missing keys are zero), so the
    ambient space never needs to be enumerated.  Every accepted vector gets
    an index, and :meth:`express` writes a vector in terms of the accepted
    ones.  Each stored echelon row is zero at the pivots of all rows stored
    before it, so a single pass in insertion order fully reduces a vector.
    """

    def __init__(self):
        self._rows: list[tuple[object, dict, dict]] = []  # (pivot, reduced, combination)
        self.size = 0

    def __len__(self):
        return self.size

    def _reduce(self, vec: Mapping) -> tuple[dict, dict]:
        res = {k: as_rat(v) for k, v in vec.items() if v}
        combo: dict[int, Fraction] = {}
        for pivot, row, rcombo in self._rows:
            c = res.get(pivot)
            if not c:
                continue
            for k, v in row.items():
                nv = res.get(k, 0) - c * v
                if nv:
                    res[k] = nv
                else:
                    res.pop(k, None)
            for k, v in rcombo.items():
                nv = combo.get(k, 0) + c * v
                if nv:
                    combo[k] = nv
                else:
                    combo.pop(k, None)
        return res, combo

    def contains(self, vec: Mapping) -> bool:
        return not self._reduce(vec)[0]

    def add(self, vec: Mapping) -> bool:
        """Accept *vec* if it enlarges the span; return whether it did."""
        res, combo = self._reduce(vec)
        if not res:
            return False
        pivot = next(iter(res))
        inv = 1 / res[pivot]
        row = {k: v * inv for k, v in res.items()}
        # res = vec - sum(combo_i * accepted_i), so row expresses through -combo and the new index
        rcombo = {k: -v * inv for k, v in combo.items()}
        rcombo[self.size] = inv
        self._rows.append((pivot, row, rcombo))
        self.size += 1
        return True

    def express(self, vec: Mapping) -> Optional[dict]:
        """Coefficients ``{index: c}`` with ``vec = sum c * accepted[index]``, or None."""
        res, combo = self._reduce(vec)
        if res:
            return None
        return combo


def column_dict(v: Iterable) -> dict:
    """Dense column to the sparse mapping used by :class:`IncrementalSpan`."""
    return {i: as_rat(e) for i, e in enumerate(v) if e}
