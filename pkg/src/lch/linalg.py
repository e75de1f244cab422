"""Dense exact matrices over a CoefficientRing.

Sizes in this library are tiny (a few hundred rows at most), so a plain
list-of-lists representation with schoolbook elimination is enough.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence

from .rings import CoefficientRing, Element, ZZ


class Matrix:
    """An ``nrows x ncols`` matrix whose entries live in ``ring``.

    Instances are treated as immutable; every operation returns a new one.
    """

    __slots__ = ("ring", "nrows", "ncols", "rows")

    def __init__(self, ring: CoefficientRing, nrows: int, ncols: int,
                 rows: Optional[Sequence[Sequence]] = None):
        self.ring = ring
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            self.rows = tuple(tuple(ring.zero for _ in range(ncols))
                              for _ in range(nrows))
        else:
            if len(rows) != nrows or any(len(r) != ncols for r in rows):
                raise ValueError(f"rows do not match shape {nrows}x{ncols}")
            self.rows = tuple(tuple(ring(x) for x in r) for r in rows)

    @classmethod
    def zeros(cls, ring, nrows, ncols) -> "Matrix":
        return cls(ring, nrows, ncols)

    @classmethod
    def identity(cls, ring, n) -> "Matrix":
        return cls(ring, n, n, [[1 if i == j else 0 for j in range(n)]
                                for i in range(n)])

    @classmethod
    def from_columns(cls, ring, nrows, columns: Sequence[Sequence]) -> "Matrix":
        return cls(ring, len(columns), nrows, columns).T

    @classmethod
    def block(cls, ring, row_sizes: Sequence[int], col_sizes: Sequence[int],
              blocks: Sequence[Sequence[Optional["Matrix"]]]) -> "Matrix":
        """Assemble from a grid of blocks; ``None`` means a zero block."""
        rows: List[List] = []
        for bi, h in enumerate(row_sizes):
            for r in range(h):
                line: List = []
                for bj, w in enumerate(col_sizes):
                    b = blocks[bi][bj]
                    if b is None:
                        line.extend([ring.zero] * w)
                    else:
                        if (b.nrows, b.ncols) != (h, w):
                            raise ValueError(
                                f"block ({bi},{bj}) has shape "
                                f"{b.nrows}x{b.ncols}, expected {h}x{w}")
                        line.extend(b.rows[r])
                rows.append(line)
        return cls(ring, sum(row_sizes), sum(col_sizes), rows)

    # -- basic protocol ----------------------------------------------------

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return (isinstance(other, Matrix) and self.ring == other.ring
                and self.shape == other.shape and self.rows == other.rows)

    def __hash__(self):
        return hash((self.ring, self.shape, self.rows))

    def __repr__(self) -> str:
        return f"Matrix({self.ring}, {self.nrows}x{self.ncols}, {list(map(list, self.rows))})"

    def tolist(self) -> List[List]:
        return [list(r) for r in self.rows]

    def column(self, j: int) -> List:
        return [r[j] for r in self.rows]

    def columns(self) -> List[List]:
        return [self.column(j) for j in range(self.ncols)]

    def with_entry(self, i: int, j: int, value) -> "Matrix":
        rows = self.tolist()
        rows[i][j] = value
        return Matrix(self.ring, self.nrows, self.ncols, rows)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Matrix":
        return Matrix(self.ring, len(row_idx), len(col_idx),
                      [[self.rows[i][j] for j in col_idx] for i in row_idx])

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def nonzero_entries(self) -> Iterable:
        for i, r in enumerate(self.rows):
            for j, x in enumerate(r):
                if x != 0:
                    yield i, j, x

    # -- arithmetic ----------------------------------------------------------

    @property
    def T(self) -> "Matrix":
        return Matrix(self.ring, self.ncols, self.nrows,
                      [list(c) for c in zip(*self.rows)] if self.nrows else
                      [[] for _ in range(self.ncols)])

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        R = self.ring
        return Matrix(R, self.nrows, self.ncols,
                      [[R.add(a, b) for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        R = self.ring
        return Matrix(R, self.nrows, self.ncols,
                      [[R.neg(a) for a in r] for r in self.rows])

    def scale(self, c) -> "Matrix":
        R = self.ring
        c = R(c)
        return Matrix(R, self.nrows, self.ncols,
                      [[R.mul(c, a) for a in r] for r in self.rows])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ring != other.ring:
            raise ValueError("ring mismatch")
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        R = self.ring
        # row-sparse accumulation: boundary matrices are mostly zeros
        orows = other.rows
        out = []
        for r in self.rows:
            line = [0] * other.ncols
            for j, a in enumerate(r):
                if a:
                    for k, b in enumerate(orows[j]):
                        if b:
                            line[k] += a * b
            out.append(line)
        return Matrix(R, self.nrows, other.ncols, out)

    def apply(self, vec: Sequence) -> List:
        R = self.ring
        return [R(sum(a * b for a, b in zip(r, vec))) for r in self.rows]

    def _check_same(self, other):
        if self.ring != other.ring or self.shape != other.shape:
            raise ValueError(f"shape/ring mismatch: {self.shape} vs {other.shape}")

    # -- elimination over a field ------------------------------------------

    def rref(self):
        """Reduced row echelon form over a field.

        Returns ``(rows, pivot_columns)``.
        """
        R = self.ring
        if not R.is_field():
            raise ValueError(f"row reduction needs a field, not {R}")
        m = [list(r) for r in self.rows]
        pivots: List[int] = []
        row = 0
        for col in range(self.ncols):
            piv = next((r for r in range(row, self.nrows) if m[r][col] != 0), None)
            if piv is None:
                continue
            m[row], m[piv] = m[piv], m[row]
            inv = R.inv(m[row][col])
            m[row] = [R.mul(inv, x) for x in m[row]]
            for r in range(self.nrows):
                if r != row and m[r][col] != 0:
                    f = m[r][col]
                    m[r] = [R.sub(x, R.mul(f, y)) for x, y in zip(m[r], m[row])]
            pivots.append(col)
            row += 1
            if row == self.nrows:
                break
        return m, pivots

    def rank(self) -> int:
        if self.nrows == 0 or self.ncols == 0:
            return 0
        if not self.ring.is_field():
            if self.ring == ZZ:
                return len(smith_invariants(self))
            raise ValueError(f"rank over {self.ring} is not supported")
        return len(self.rref()[1])

    def nullspace(self) -> List[List]:
        """Basis of the kernel (as column vectors) over a field."""
        R = self.ring
        m, pivots = self.rref()
        free = [j for j in range(self.ncols) if j not in set(pivots)]
        basis = []
        for f in free:
            v = [R.zero] * self.ncols
            v[f] = R.one
            for r, p in enumerate(pivots):
                v[p] = R.neg(m[r][f])
            basis.append(v)
        return basis

    def column_space(self) -> List[List]:
        """A basis of the column space chosen among the columns."""
        _, pivots = self.rref()
        return [self.column(j) for j in pivots]

    def solve(self, rhs: Sequence) -> Optional[List]:
        """One solution x of ``self @ x = rhs`` over a field, or None."""
        R = self.ring
        aug = Matrix(R, self.nrows, self.ncols + 1,
                     [list(r) + [R(b)] for r, b in zip(self.rows, rhs)])
        m, pivots = aug.rref()
        if pivots and pivots[-1] == self.ncols:
            return None
        x = [R.zero] * self.ncols
        for r, p in enumerate(pivots):
            x[p] = m[r][self.ncols]
        return x

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("only square matrices are invertible")
        n = self.nrows
        R = self.ring
        aug = Matrix(R, n, 2 * n, [list(r) + [1 if i == j else 0 for j in range(n)]
                                   for i, r in enumerate(self.rows)])
        m, pivots = aug.rref()
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return Matrix(R, n, n, [row[n:] for row in m])


def smith_invariants(mat: Matrix) -> List[int]:
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix.

    Classic Smith reduction: repeatedly move an entry of least absolute
    value to the pivot, clear its row and column by Euclidean steps, and
    push non-divisible entries back into the pivot row.  Pivot choice is
    deterministic (first minimal entry in row-major order).
    """
    if mat.ring != ZZ:
        raise ValueError("Smith normal form is implemented over Z only")
    a = [list(r) for r in mat.rows]
    m, n = mat.nrows, mat.ncols
    invariants: List[int] = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        for r in a:
            r[t], r[j] = r[j], r[t]
        while True:
            done = True
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t] != 0:
                    q = a[i][t] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t] != 0:
                        done = False
            for j in range(t + 1, n):
                if a[t][j] != 0:
                    q = a[t][j] // p
                    for r in a:
                        r[j] -= q * r[t]
                    if a[t][j] != 0:
                        done = False
            if done:
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if a[i][j] % p != 0), None)
                if bad is None:
                    break
                # fold the offending row into the pivot row and keep reducing
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # a remainder smaller than the pivot appeared; move it into place
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if (i == t or j == t) and a[i][j] != 0 and (
                            best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            i, j = best
            a[t], a[i] = a[i], a[t]
            for r in a:
                r[t], r[j] = r[j], r[t]
        invariants.append(abs(a[t][t]))
        t += 1
    return invariants
