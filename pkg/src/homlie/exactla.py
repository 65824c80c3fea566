"""Exact linear algebra over the rationals.

Vectors are tuples of :class:`fractions.Fraction`; matrices act on column
vectors.  Subspaces are stored by their reduced row echelon basis, which is
the canonical representative, so two subspaces are equal exactly when their
bases are equal.

Nothing here is clever.  Row operations skip zero entries, which keeps the
structure-constant tensors of nilpotent algebras (mostly zeros) cheap.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import gcd, isqrt
from typing import Iterable, Sequence

from .errors import SingularMatrix

Scalar = Fraction
Vector = tuple

ZERO = Fraction(0)
ONE = Fraction(1)


def to_scalar(x) -> Fraction:
    if type(x) is Fraction:
        return x
    if isinstance(x, float):
        raise TypeError("floating point input is not allowed; pass int, str or Fraction")
    return Fraction(x)


def vector(entries: Iterable) -> Vector:
    return tuple(to_scalar(x) for x in entries)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    v = [ZERO] * n
    v[i] = ONE
    return tuple(v)


def is_zero_vector(v: Sequence) -> bool:
    return not any(v)


def add_vectors(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub_vectors(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale_vector(c, v: Sequence) -> Vector:
    c = to_scalar(c)
    if not c:
        return zero_vector(len(v))
    return tuple(c * a for a in v)


def lincomb(coeffs: Sequence, vectors: Sequence[Sequence], n: int) -> Vector:
    """Return sum(c_i * v_i) as a vector of length ``n``."""
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if not c:
            continue
        for k, a in enumerate(v):
            if a:
                out[k] += c * a
    return tuple(out)


def dot(u: Sequence, v: Sequence) -> Fraction:
    s = ZERO
    for a, b in zip(u, v):
        if a and b:
            s += a * b
    return s


# --------------------------------------------------------------------------
# matrices
# --------------------------------------------------------------------------


class Matrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "data", "_sparse", "_hash")

    def __init__(self, rows: int, cols: int, data: Sequence[Sequence]):
        data = tuple(tuple(to_scalar(x) for x in row) for row in data)
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError(f"entries do not match shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self.data = data
        self._sparse = None
        self._hash = None

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        rows = list(rows)
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        columns = list(columns)
        if nrows is None:
            nrows = len(columns[0]) if columns else 0
        data = [[col[i] for col in columns] for i in range(nrows)]
        return cls(nrows, len(columns), data)

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, [[ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, entries: Sequence) -> "Matrix":
        entries = [to_scalar(x) for x in entries]
        n = len(entries)
        return cls(n, n, [[entries[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, rows: int, cols: int, i: int, j: int) -> "Matrix":
        data = [[ZERO] * cols for _ in range(rows)]
        data[i][j] = ONE
        return cls(rows, cols, data)

    # ---- accessors -------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> Vector:
        return self.data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def flat(self) -> Vector:
        """Row-major entries."""
        return tuple(x for r in self.data for x in r)

    @classmethod
    def from_flat(cls, rows: int, cols: int, entries: Sequence) -> "Matrix":
        return cls(rows, cols, [entries[i * cols:(i + 1) * cols] for i in range(rows)])

    def sparse_rows(self) -> list[list[tuple[int, Fraction]]]:
        if self._sparse is None:
            self._sparse = [[(j, x) for j, x in enumerate(r) if x] for r in self.data]
        return self._sparse

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    def is_identity(self) -> bool:
        return self.is_square and self == Matrix.identity(self.rows)

    # ---- arithmetic ------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.shape == other.shape and self.data == other.data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.data))
        return self._hash

    def __add__(self, other: "Matrix") -> "Matrix":
        _same_shape(self, other)
        return Matrix(self.rows, self.cols,
                      [[(a + b if a else b) if b else a for a, b in zip(r, s)]
                       for r, s in zip(self.data, other.data)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        _same_shape(self, other)
        return Matrix(self.rows, self.cols,
                      [[(a - b if a else -b) if b else a for a, b in zip(r, s)]
                       for r, s in zip(self.data, other.data)])

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, [[-a for a in r] for r in self.data])

    def scale(self, c) -> "Matrix":
        c = to_scalar(c)
        return Matrix(self.rows, self.cols, [[c * a for a in r] for r in self.data])

    def __mul__(self, c) -> "Matrix":
        if isinstance(c, Matrix):
            raise TypeError("use @ for matrix products")
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            b = other.sparse_rows()
            out = []
            for row in self.sparse_rows():
                acc = [ZERO] * other.cols
                for k, a in row:
                    for j, x in b[k]:
                        acc[j] += a * x
                out.append(acc)
            return Matrix(self.rows, other.cols, out)
        v = other
        if len(v) != self.cols:
            raise ValueError(f"cannot apply {self.shape} matrix to vector of length {len(v)}")
        return tuple(sum((a * v[k] for k, a in row if v[k]), ZERO) for row in self.sparse_rows())

    @property
    def T(self) -> "Matrix":
        return Matrix(self.cols, self.rows, [list(c) for c in zip(*self.data)] if self.rows else
                      [[] for _ in range(self.cols)])

    def power(self, k: int) -> "Matrix":
        if not self.is_square:
            raise ValueError("power of a non-square matrix")
        result = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def block_diag(self, other: "Matrix") -> "Matrix":
        return block_diagonal([self, other])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(len(rows), len(cols), [[self.data[i][j] for j in cols] for i in rows])

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


def _same_shape(a: Matrix, b: Matrix) -> None:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


def block_diagonal(blocks: Sequence[Matrix]) -> Matrix:
    n = sum(b.rows for b in blocks)
    m = sum(b.cols for b in blocks)
    data = [[ZERO] * m for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.data):
            data[r0 + i][c0:c0 + b.cols] = row
        r0 += b.rows
        c0 += b.cols
    return Matrix(n, m, data)


def tensor_matrix(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; e_i (x) f_j sits at index i*dim(W) + j."""
    data = [[ZERO] * (a.cols * b.cols) for _ in range(a.rows * b.rows)]
    bs = b.sparse_rows()
    for i, arow in enumerate(a.sparse_rows()):
        for j, x in arow:
            for k, brow in enumerate(bs):
                target = data[i * b.rows + k]
                off = j * b.cols
                for l, y in brow:
                    target[off + l] = x * y
    return Matrix(a.rows * b.rows, a.cols * b.cols, data)


# --------------------------------------------------------------------------
# row reduction
# --------------------------------------------------------------------------


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; zero rows are dropped."""
    work = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(work):
            break
        piv = next((i for i in range(r, len(work)) if work[i][c]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        prow = work[r]
        inv = ONE / prow[c]
        if inv != ONE:
            prow = [x * inv if x else x for x in prow]
            work[r] = prow
        nz = [(j, x) for j, x in enumerate(prow) if x and j >= c]
        for i in range(len(work)):
            if i == r:
                continue
            f = work[i][c]
            if f:
                wi = work[i]
                for j, x in nz:
                    wi[j] -= f * x
        pivots.append(c)
        r += 1
    return work[:r], pivots


def rank(m: Matrix) -> int:
    if m.rows > m.cols:
        m = m.T
    return len(rref(m.data, m.cols)[1])


def kernel(m: Matrix) -> "Subspace":
    """Null space of ``m`` as a canonical subspace."""
    red, pivots = rref(m.data, m.cols)
    pivset = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivset:
            continue
        v = [ZERO] * m.cols
        v[free] = ONE
        for row, p in zip(red, pivots):
            v[p] = -row[free]
        basis.append(v)
    return Subspace(m.cols, basis)


def image(m: Matrix) -> "Subspace":
    return Subspace(m.rows, m.T.data)


def inverse(m: Matrix) -> Matrix:
    if not m.is_square:
        raise SingularMatrix("non-square matrix has no inverse")
    n = m.rows
    aug = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(m.data)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise SingularMatrix("matrix is singular")
    return Matrix(n, n, [row[n:] for row in red])


def is_invertible(m: Matrix) -> bool:
    return m.is_square and rank(m) == m.rows


def solve(m: Matrix, b: Sequence) -> Vector | None:
    """One solution x of m x = b (free variables zero), or None."""
    aug = [list(r) + [to_scalar(bi)] for r, bi in zip(m.data, b)]
    red, pivots = rref(aug, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [ZERO] * m.cols
    for row, p in zip(red, pivots):
        x[p] = row[m.cols]
    return tuple(x)


# --------------------------------------------------------------------------
# subspaces
# --------------------------------------------------------------------------


class Subspace:
    """A subspace of Q^n held by its reduced echelon basis."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        vectors = [tuple(to_scalar(x) for x in v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        red, pivots = rref(vectors, ambient_dim)
        self.ambient_dim = ambient_dim
        self.basis: tuple[Vector, ...] = tuple(tuple(r) for r in red)
        self.pivots: tuple[int, ...] = tuple(pivots)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, [unit_vector(n, i) for i in range(n)])

    @classmethod
    def _trusted(cls, n: int, basis, pivots) -> "Subspace":
        s = cls.__new__(cls)
        s.ambient_dim = n
        s.basis = tuple(basis)
        s.pivots = tuple(pivots)
        return s

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        vs = ", ".join("(" + ", ".join(str(x) for x in v) + ")" for v in self.basis)
        return f"Subspace(dim={self.dim} in Q^{self.ambient_dim}: [{vs}])"

    def reduce(self, v: Sequence) -> Vector:
        """Remainder of v after eliminating the pivot entries."""
        w = list(v)
        for b, p in zip(self.basis, self.pivots):
            c = w[p]
            if c:
                for j, x in enumerate(b):
                    if x:
                        w[j] -= c * x
        return tuple(w)

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    __contains__ = contains

    def coordinates(self, v: Sequence) -> Vector:
        """Coordinates of a member in the canonical basis."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(to_scalar(v[p]) for p in self.pivots)

    def from_coordinates(self, coords: Sequence) -> Vector:
        return lincomb(coords, self.basis, self.ambient_dim)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains_subspace(self)

    def __ge__(self, other: "Subspace") -> bool:
        return self.contains_subspace(other)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def extend(self, vectors: Iterable[Sequence]) -> "Subspace":
        return Subspace(self.ambient_dim, self.basis + tuple(tuple(v) for v in vectors))

    def annihilator(self) -> "Subspace":
        """Linear functionals vanishing on self, written as vectors."""
        if not self.basis:
            return Subspace.full(self.ambient_dim)
        return kernel(Matrix(self.dim, self.ambient_dim, self.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.ambient_dim)
        if self.contains_subspace(other):
            return other
        if other.contains_subspace(self):
            return self
        return (self.annihilator() + other.annihilator()).annihilator()

    __and__ = intersect

    def map(self, m: Matrix) -> "Subspace":
        """Image of the subspace under m."""
        return Subspace(m.rows, [m @ v for v in self.basis])

    def is_invariant(self, m: Matrix) -> bool:
        return all(self.contains(m @ v) for v in self.basis)

    def complement_indices(self) -> tuple[int, ...]:
        """Standard basis positions spanning a complement (non-pivot columns)."""
        piv = set(self.pivots)
        return tuple(i for i in range(self.ambient_dim) if i not in piv)

    def basis_matrix(self) -> Matrix:
        """Columns are the canonical basis vectors."""
        return Matrix.from_columns(self.basis, self.ambient_dim)


def relative_complement(big: Subspace, small: Subspace) -> list[Vector]:
    """Vectors of ``big`` completing a basis of ``small`` to one of ``big``.

    Picks members of big's canonical basis greedily, so the choice is
    deterministic.
    """
    chosen: list[Vector] = []
    acc = small
    for v in big.basis:
        if not acc.contains(v):
            chosen.append(v)
            acc = acc.extend([v])
    return chosen


def restricted_matrix(m: Matrix, space: Subspace) -> Matrix:
    """Matrix of m restricted to an invariant subspace, in its canonical basis."""
    cols = []
    for v in space.basis:
        w = m @ v
        cols.append(space.coordinates(w))
    return Matrix.from_columns(cols, space.dim) if cols else Matrix.zeros(0, 0)


class QuotientMap:
    """V/U realised on a complement of U inside V.

    ``complement`` lists representatives in V; ``project`` sends a member of V
    to coordinates on that complement.
    """

    def __init__(self, big: Subspace, small: Subspace, complement: Sequence[Vector] | None = None):
        if not big.contains_subspace(small):
            raise ValueError("quotient of a subspace by something it does not contain")
        self.big = big
        self.small = small
        self.complement = list(relative_complement(big, small) if complement is None else complement)
        n = big.ambient_dim
        self._combined = Subspace(n, list(small.basis) + self.complement)
        cols = list(small.basis) + self.complement
        self._basis_matrix = Matrix.from_columns(cols, n) if cols else Matrix.zeros(n, 0)
        # coordinates on (small basis ++ complement) via the combined pivots
        if cols:
            piv = self._combined.pivots
            square = self._basis_matrix.submatrix(piv, range(len(cols)))
            self._inv = inverse(square)
        else:
            self._inv = None

    @property
    def dim(self) -> int:
        return len(self.complement)

    def project(self, v: Sequence) -> Vector:
        if not self.big.contains(v):
            raise ValueError("vector outside the ambient subspace")
        if self._inv is None:
            return ()
        coords = self._inv @ tuple(v[p] for p in self._combined.pivots)
        return coords[self.small.dim:]

    def lift(self, coords: Sequence) -> Vector:
        return lincomb(coords, self.complement, self.big.ambient_dim)

    def induced_matrix(self, m: Matrix) -> Matrix:
        """Matrix of the map induced by m on big/small (both must be m-stable)."""
        cols = [self.project(m @ c) for c in self.complement]
        return Matrix.from_columns(cols, self.dim) if cols else Matrix.zeros(0, 0)


# --------------------------------------------------------------------------
# polynomials (coefficient tuples, lowest degree first)
# --------------------------------------------------------------------------


def poly_trim(p: Sequence) -> tuple:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return tuple(to_scalar(c) for c in p)


def poly_eval(p: Sequence, x) -> Fraction:
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_of_matrix(p: Sequence, m: Matrix) -> Matrix:
    """p(m) by Horner's rule."""
    n = m.rows
    acc = Matrix.zeros(n, n)
    ident = Matrix.identity(n)
    for c in reversed(p):
        acc = acc @ m + ident.scale(c)
    return acc


def poly_divmod(a: Sequence, b: Sequence) -> tuple[tuple, tuple]:
    a = list(poly_trim(a))
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [ZERO] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        shift = len(a) - len(b)
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        a = list(poly_trim(a))
    return poly_trim(q), poly_trim(a)


def poly_str(p: Sequence, var: str = "T") -> str:
    terms = []
    for deg in range(len(p) - 1, -1, -1):
        c = p[deg]
        if not c:
            continue
        mag = abs(c)
        sign = "-" if c < 0 else "+"
        if deg == 0:
            body = str(mag)
        else:
            mono = var if deg == 1 else f"{var}^{deg}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def charpoly(m: Matrix) -> tuple:
    """Characteristic polynomial det(T*I - m), monic (Faddeev-LeVerrier)."""
    if not m.is_square:
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = m.rows
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    mk = Matrix.zeros(n, n)
    ident = Matrix.identity(n)
    for k in range(1, n + 1):
        mk = m @ mk + ident.scale(coeffs[n - k + 1])
        am = m @ mk
        trace = sum((am[i, i] for i in range(n)), ZERO)
        coeffs[n - k] = -trace / k
    return tuple(coeffs)


def minpoly(m: Matrix) -> tuple:
    """Minimal polynomial of a square matrix, monic, via the Krylov sequence of powers."""
    if not m.is_square:
        raise ValueError("minimal polynomial of a non-square matrix")
    n = m.rows
    powers = [Matrix.identity(n)]
    flats = [powers[0].flat()]
    while True:
        nxt = powers[-1] @ m
        k = len(powers)
        system = Matrix.from_columns(flats, n * n) if n else Matrix.zeros(0, k)
        sol = solve(system, nxt.flat()) if n else tuple([ZERO] * k)
        if sol is not None:
            return tuple(-c for c in sol) + (ONE,)
        powers.append(nxt)
        flats.append(nxt.flat())


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def rational_roots(p: Sequence) -> list[Fraction]:
    """Distinct rational roots of a polynomial, ascending."""
    p = poly_trim(p)
    if len(p) <= 1:
        return []
    roots = set()
    while p and not p[0]:
        roots.add(ZERO)
        p = p[1:]
    if len(p) > 1:
        denom = 1
        for c in p:
            denom = denom * c.denominator // gcd(denom, c.denominator)
        ints = [int(c * denom) for c in p]
        lead, const = ints[-1], ints[0]
        for a, b in product(_divisors(const), _divisors(lead)):
            for cand in (Fraction(a, b), Fraction(-a, b)):
                if cand not in roots and poly_eval(ints, cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def rational_eigenvectors(m: Matrix) -> list[tuple[Fraction, Vector]]:
    """One (eigenvalue, eigenvector) pair per rational eigenvalue, ascending by value."""
    if not m.is_square:
        raise ValueError("eigenvectors of a non-square matrix")
    out = []
    n = m.rows
    for lam in rational_roots(charpoly(m)):
        ker = kernel(m - Matrix.identity(n).scale(lam))
        out.append((lam, ker.basis[0]))
    return out


# --------------------------------------------------------------------------
# sparse square matrices
# --------------------------------------------------------------------------

SparseVector = dict  # index -> nonzero Fraction


class SparseMatrix:
    """Square matrix held as one ``{column: value}`` dict per row.

    Used where Kronecker products would make dense storage wasteful.
    """

    __slots__ = ("n", "rows", "_cols")

    def __init__(self, n: int, rows: Sequence[dict]):
        self.n = n
        self.rows = list(rows)
        self._cols = None

    @classmethod
    def from_matrix(cls, m: Matrix) -> "SparseMatrix":
        return cls(m.rows, [dict(r) for r in m.sparse_rows()])

    def to_matrix(self) -> Matrix:
        data = [[ZERO] * self.n for _ in range(self.n)]
        for i, r in enumerate(self.rows):
            for j, x in r.items():
                data[i][j] = x
        return Matrix(self.n, self.n, data)

    def kron(self, other: "SparseMatrix") -> "SparseMatrix":
        nb = other.n
        rows = []
        for ra in self.rows:
            for rb in other.rows:
                rows.append({j * nb + l: x * y for j, x in ra.items() for l, y in rb.items()})
        return SparseMatrix(self.n * nb, rows)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        return SparseMatrix.combine([ONE, ONE], [self, other])

    @staticmethod
    def combine(coeffs: Sequence, mats: Sequence["SparseMatrix"]) -> "SparseMatrix":
        n = mats[0].n
        rows: list[dict] = [{} for _ in range(n)]
        for c, m in zip(coeffs, mats):
            if not c:
                continue
            for i, r in enumerate(m.rows):
                acc = rows[i]
                for j, x in r.items():
                    v = acc.get(j, ZERO) + c * x
                    if v:
                        acc[j] = v
                    else:
                        acc.pop(j, None)
        return SparseMatrix(n, rows)

    def apply(self, v: SparseVector) -> SparseVector:
        if self._cols is None:
            cols: dict[int, list] = {}
            for i, r in enumerate(self.rows):
                for j, x in r.items():
                    cols.setdefault(j, []).append((i, x))
            self._cols = cols
        out: dict[int, Fraction] = {}
        for j, y in v.items():
            for i, x in self._cols.get(j, ()):
                out[i] = out.get(i, ZERO) + x * y
        return {i: x for i, x in out.items() if x}

    def kernel_vectors(self) -> list[SparseVector]:
        """Kernel basis, one vector per free column (ascending)."""
        piv_rows, order = _sparse_rref(self.rows)
        pivset = set(order)
        out = []
        for f in range(self.n):
            if f in pivset:
                continue
            v = {f: ONE}
            for p in order:
                x = piv_rows[p].get(f)
                if x:
                    v[p] = -x
            out.append(v)
        return out


def _sparse_rref(rows: Sequence[dict]) -> tuple[dict[int, dict], list[int]]:
    """Fully reduced echelon form of sparse rows, keyed by pivot column."""
    piv: dict[int, dict] = {}
    rank_of: dict[int, int] = {}
    for src in rows:
        row = dict(src)
        while True:
            hits = [c for c in row if c in piv]
            if not hits:
                break
            c = min(hits, key=rank_of.__getitem__)
            f = row[c]
            for j, x in piv[c].items():
                v = row.get(j, ZERO) - f * x
                if v:
                    row[j] = v
                else:
                    row.pop(j, None)
        if not row:
            continue
        c = min(row)
        inv = ONE / row[c]
        row = {j: x * inv for j, x in row.items()}
        rank_of[c] = len(piv)
        piv[c] = row
    # back substitution: later pivots never contain earlier pivot columns
    order = sorted(piv, key=rank_of.__getitem__)
    for idx in range(len(order) - 1, -1, -1):
        r = piv[order[idx]]
        for c in order[idx + 1:]:
            f = r.get(c)
            if f:
                for j, x in piv[c].items():
                    v = r.get(j, ZERO) - f * x
                    if v:
                        r[j] = v
                    else:
                        r.pop(j, None)
    return piv, sorted(piv)
