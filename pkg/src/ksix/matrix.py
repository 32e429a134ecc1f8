"""Exact integer matrices and their normal forms.

Everything here works over Python ints, so entries never overflow.  The
two workhorses are :func:`smith_normal_form` (used to canonicalize
abelian group presentations) and :func:`hermite_normal_form` (used for
lattice bases, kernels and integer linear solving).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence


@dataclass(frozen=True)
class IntMatrix:
    """Immutable ``rows x cols`` integer matrix stored row-major.

    Zero-sized shapes are allowed and matter: a group with three
    generators and no relations has a ``3 x 0`` relation matrix.
    """

    rows: int
    cols: int
    data: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ValueError(f"data does not match shape {self.rows}x{self.cols}")

    # -- construction ---------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int) -> IntMatrix:
        columns = [list(c) for c in columns]
        return cls(nrows, len(columns), tuple(tuple(c[i] for c in columns) for i in range(nrows)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, entries: Sequence[int], rows: int | None = None, cols: int | None = None) -> IntMatrix:
        k = len(entries)
        rows = k if rows is None else rows
        cols = k if cols is None else cols
        return cls(rows, cols, tuple(
            tuple(entries[i] if i == j else 0 for j in range(cols)) for i in range(rows)))

    @classmethod
    def hstack(cls, blocks: Sequence[IntMatrix], rows: int | None = None) -> IntMatrix:
        if not blocks:
            return cls.zeros(rows or 0, 0)
        r = blocks[0].rows
        if any(b.rows != r for b in blocks):
            raise ValueError("hstack: row counts differ")
        return cls(r, sum(b.cols for b in blocks),
                   tuple(sum((b.data[i] for b in blocks), ()) for i in range(r)))

    @classmethod
    def vstack(cls, blocks: Sequence[IntMatrix], cols: int | None = None) -> IntMatrix:
        if not blocks:
            return cls.zeros(0, cols or 0)
        c = blocks[0].cols
        if any(b.cols != c for b in blocks):
            raise ValueError("vstack: column counts differ")
        return cls(sum(b.rows for b in blocks), c, sum((b.data for b in blocks), ()))

    @classmethod
    def block_diag(cls, blocks: Sequence[IntMatrix]) -> IntMatrix:
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = [[0] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                out[r0 + i][c0:c0 + b.cols] = b.data[i]
            r0 += b.rows
            c0 += b.cols
        return cls.from_rows(out, cols)

    # -- access ---------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.data[i][j]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> IntMatrix:
        rows, cols = list(rows), list(cols)
        return IntMatrix.from_rows([[self.data[i][j] for j in cols] for i in rows], len(cols))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    # -- arithmetic -----------------------------------------------------
    @property
    def T(self) -> IntMatrix:
        return IntMatrix(self.cols, self.rows,
                         tuple(tuple(self.data[i][j] for i in range(self.rows)) for j in range(self.cols)))

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = other.columns()
        return IntMatrix(self.rows, other.cols, tuple(
            tuple(sum(a * b for a, b in zip(r, c)) for c in ocols) for r in self.data))

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.data)

    def _zip(self, other: IntMatrix, op) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return IntMatrix(self.rows, self.cols, tuple(
            tuple(op(a, b) for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def __add__(self, other: IntMatrix) -> IntMatrix:
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self) -> IntMatrix:
        return self.scale(-1)

    def scale(self, k: int) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(tuple(k * x for x in r) for r in self.data))

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r})" if self.rows else f"IntMatrix.zeros(0, {self.cols})"


def as_matrix(m) -> IntMatrix:
    return m if isinstance(m, IntMatrix) else IntMatrix.from_rows(m)


# ---------------------------------------------------------------------------
# Smith normal form


class SmithForm(NamedTuple):
    U: IntMatrix
    U_inv: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(min(self.D.rows, self.D.cols)))


def smith_decomposition(M: IntMatrix) -> SmithForm:
    """Smith form with the inverse of the row transform tracked as well."""
    m, n = M.rows, M.cols
    A = M.tolist()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_add(dst, src, q):  # row_dst += q * row_src
        if q == 0:
            return
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]
        for r in Ui:  # inverse picks up column_src -= q * column_dst
            r[src] -= q * r[dst]

    def row_swap(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]
            for r in Ui:
                r[i], r[j] = r[j], r[i]

    def row_neg(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]
        for r in Ui:
            r[i] = -r[i]

    def col_add(dst, src, q):  # col_dst += q * col_src
        if q == 0:
            return
        for r in A:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]

    def col_swap(i, j):
        if i != j:
            for r in A:
                r[i], r[j] = r[j], r[i]
            for r in V:
                r[i], r[j] = r[j], r[i]

    for t in range(min(m, n)):
        # smallest nonzero entry of the trailing block as pivot bounds growth
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        row_swap(t, best[0])
        col_swap(t, best[1])
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    row_add(i, t, -(A[i][t] // p))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    col_add(j, t, -(A[t][j] // p))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                cand = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cand)
                row_swap(t, i)
                col_swap(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            row_add(t, bad[0], 1)
        if A[t][t] < 0:
            row_neg(t)

    return SmithForm(IntMatrix.from_rows(U, m), IntMatrix.from_rows(Ui, m),
                     IntMatrix.from_rows(A, n), IntMatrix.from_rows(V, n))


def smith_normal_form(M: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, D, V)`` with ``U @ M @ V == D``.

    ``U`` and ``V`` are unimodular and ``D`` is diagonal, nonnegative, with
    each diagonal entry dividing the next (zeros last).
    """
    s = smith_decomposition(as_matrix(M))
    return s.U, s.D, s.V


# ---------------------------------------------------------------------------
# Hermite normal form (column style) and what it buys us


def hermite_normal_form(M: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Column-style Hermite form: return ``(H, U)`` with ``M @ U == H``.

    ``U`` is unimodular, so ``H`` has the same column lattice as ``M``.
    ``H`` is in column echelon form: its nonzero columns come first, each
    has a positive pivot strictly below the pivot of the previous one, and
    entries to the left of a pivot are reduced into ``[0, pivot)``.  The
    columns of ``U`` matching zero columns of ``H`` span the kernel of ``M``.
    """
    M = as_matrix(M)
    m, n = M.rows, M.cols
    cols = [list(c) for c in M.columns()]
    U = [[int(i == j) for i in range(n)] for j in range(n)]  # stored by column

    def comb(j, k, a, b, c, d):
        # (col_j, col_k) <- (a col_j + b col_k, c col_j + d col_k), ad - bc = +-1
        cj, ck = cols[j], cols[k]
        cols[j] = [a * x + b * y for x, y in zip(cj, ck)]
        cols[k] = [c * x + d * y for x, y in zip(cj, ck)]
        uj, uk = U[j], U[k]
        U[j] = [a * x + b * y for x, y in zip(uj, uk)]
        U[k] = [c * x + d * y for x, y in zip(uj, uk)]

    piv = 0
    for r in range(m):
        if piv >= n:
            break
        for k in range(piv + 1, n):
            y = cols[k][r]
            if y == 0:
                continue
            x = cols[piv][r]
            g, s, t = _xgcd(x, y)
            comb(piv, k, s, t, -y // g, x // g)
        p = cols[piv][r]
        if p == 0:
            continue
        if p < 0:
            cols[piv] = [-x for x in cols[piv]]
            U[piv] = [-x for x in U[piv]]
            p = -p
        for k in range(piv):
            q = cols[k][r] // p
            if q:
                cols[k] = [x - q * y for x, y in zip(cols[k], cols[piv])]
                U[k] = [x - q * y for x, y in zip(U[k], U[piv])]
        piv += 1

    return IntMatrix.from_columns(cols, m), IntMatrix.from_columns(U, n)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def _pivots(H: IntMatrix) -> list[tuple[int, int]]:
    """(row, col) of each pivot of a column-echelon matrix."""
    out = []
    for j in range(H.cols):
        col = H.column(j)
        r = next((i for i, x in enumerate(col) if x), None)
        if r is None:
            break
        out.append((r, j))
    return out


def lattice_basis(M: IntMatrix) -> IntMatrix:
    """Columns forming a basis of the lattice spanned by the columns of ``M``."""
    H, _ = hermite_normal_form(M)
    k = len(_pivots(H))
    return H.submatrix(range(H.rows), range(k))


def kernel_basis(M: IntMatrix) -> IntMatrix:
    """Columns forming a basis of ``{x in Z^n : M x = 0}``."""
    M = as_matrix(M)
    H, U = hermite_normal_form(M)
    k = len(_pivots(H))
    return U.submatrix(range(U.rows), range(k, U.cols))


def solve_integer(M: IntMatrix, b: Sequence[int]) -> tuple[int, ...] | None:
    """An integer ``x`` with ``M x = b``, or ``None`` when there is none."""
    M = as_matrix(M)
    if len(b) != M.rows:
        raise ValueError("right-hand side has the wrong length")
    H, U = hermite_normal_form(M)
    piv = _pivots(H)
    rest = list(b)
    y = [0] * M.cols
    for r, j in piv:
        if any(rest[i] for i in range(r)):
            return None
        q, rem = divmod(rest[r], H[r, j])
        if rem:
            return None
        y[j] = q
        if q:
            col = H.column(j)
            rest = [a - q * c for a, c in zip(rest, col)]
    if any(rest):
        return None
    return U.apply(y)


def solve_integer_matrix(M: IntMatrix, B: IntMatrix) -> IntMatrix | None:
    """Integer ``X`` with ``M @ X == B`` (column by column), or ``None``."""
    M, B = as_matrix(M), as_matrix(B)
    cols = []
    for c in B.columns():
        x = solve_integer(M, c)
        if x is None:
            return None
        cols.append(x)
    return IntMatrix.from_columns(cols, M.cols)


def lattice_contains(M: IntMatrix, v: Sequence[int]) -> bool:
    return solve_integer(M, v) is not None


def same_lattice(M: IntMatrix, N: IntMatrix) -> bool:
    """Mutual membership test for the column lattices of ``M`` and ``N``."""
    return (all(lattice_contains(M, c) for c in N.columns())
            and all(lattice_contains(N, c) for c in M.columns()))


def is_unimodular(M: IntMatrix) -> bool:
    return M.rows == M.cols and abs(M.det()) == 1
