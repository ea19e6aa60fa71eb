# zpm_actions/fields.py
"""
Exact linear algebra over the prime field F_p.

Vectors are plain tuples of residues; matrices are immutable FpMatrix values.
Everything is reduced eagerly mod p so that results can be hashed and compared bit-for-bit.
"""
import functools
import itertools
import typing
from dataclasses import dataclass

from zpm_actions.exceptions import (
    NotPrimeError,
    DimensionMismatchError,
    SingularMatrixError,
)

Vector = typing.Tuple[int, ...]

MAX_PRIME = 1 << 15  # products of two residues stay far below machine-word overflow


# --- Primes and scalars ---

@functools.lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    """Trial division; p is small by construction."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_prime(p: typing.Any) -> int:
    """Returns p as int, or raises NotPrimeError."""
    if not isinstance(p, int) or isinstance(p, bool):
        raise NotPrimeError(p, "not an integer")
    if not is_prime(p):
        raise NotPrimeError(p)
    if p >= MAX_PRIME:
        raise NotPrimeError(p, f"too large (p must be below {MAX_PRIME})")
    return p


@dataclass(frozen=True)
class FpScalar:
    """An element of F_p."""
    value: int
    p: int

    def __post_init__(self):
        check_prime(self.p)
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other: typing.Any) -> int:
        if isinstance(other, FpScalar):
            if other.p != self.p:
                raise DimensionMismatchError(f"Cannot mix F_{self.p} and F_{other.p} scalars")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else FpScalar(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else FpScalar(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else FpScalar(v - self.value, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else FpScalar(self.value * v, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpScalar(-self.value, self.p)

    def inverse(self) -> 'FpScalar':
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return FpScalar(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return self * FpScalar(v, self.p).inverse()

    def __int__(self) -> int:
        return self.value


# --- Vector helpers ---

def reduce_vector(v: typing.Iterable[int], p: int) -> Vector:
    return tuple(int(x) % p for x in v)


def vec_add(x: Vector, y: Vector, p: int) -> Vector:
    return tuple((a + b) % p for a, b in zip(x, y))


def vec_scale(x: Vector, c: int, p: int) -> Vector:
    return tuple((a * c) % p for a in x)


def vec_combination(coeffs: typing.Sequence[int], vectors: typing.Sequence[Vector], p: int, m: int) -> Vector:
    """Σ coeffs[i]·vectors[i] in F_p^m."""
    out = [0] * m
    for c, v in zip(coeffs, vectors):
        if c:
            for i, a in enumerate(v):
                out[i] += c * a
    return tuple(x % p for x in out)


def dot(x: Vector, y: Vector, p: int) -> int:
    return sum(a * b for a, b in zip(x, y)) % p


def zero_vector(m: int) -> Vector:
    return (0,) * m


def unit_vector(m: int, i: int) -> Vector:
    return tuple(1 if j == i else 0 for j in range(m))


def all_vectors(p: int, m: int) -> typing.Iterator[Vector]:
    """All of F_p^m in lexicographic order."""
    return itertools.product(range(p), repeat=m)


def nonzero_vectors(p: int, m: int) -> typing.List[Vector]:
    return [v for v in all_vectors(p, m) if any(v)]


def encode_vector(v: Vector, p: int) -> int:
    """Base-p integer, first coordinate most significant (order-preserving for lex order)."""
    code = 0
    for a in v:
        code = code * p + a
    return code


def decode_vector(code: int, p: int, m: int) -> Vector:
    out = [0] * m
    for i in range(m - 1, -1, -1):
        code, out[i] = divmod(code, p)
    return tuple(out)


# --- Matrices ---

@dataclass(frozen=True)
class FpMatrix:
    """Immutable row-major matrix over F_p. Zero rows or columns are allowed."""
    p: int
    rows: int
    cols: int
    entries: typing.Tuple[int, ...]

    def __post_init__(self):
        check_prime(self.p)
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatchError(f"Matrix dimensions must be nonnegative, got {self.rows}x{self.cols}")
        entries = tuple(int(x) % self.p for x in self.entries)
        if len(entries) != self.rows * self.cols:
            raise DimensionMismatchError(
                f"Expected {self.rows * self.cols} entries for a {self.rows}x{self.cols} matrix, got {len(entries)}")
        object.__setattr__(self, "entries", entries)

    # --- Constructors ---
    @classmethod
    def from_rows(cls, p: int, rows: typing.Sequence[typing.Sequence[int]],
                  cols: typing.Optional[int] = None) -> 'FpMatrix':
        rows = [tuple(r) for r in rows]
        if cols is None:
            if not rows:
                raise DimensionMismatchError("Column count is required for a matrix without rows")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise DimensionMismatchError(f"All rows must have length {cols}")
        return cls(p, len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, p: int, columns: typing.Sequence[typing.Sequence[int]],
                     rows: typing.Optional[int] = None) -> 'FpMatrix':
        columns = [tuple(c) for c in columns]
        if rows is None:
            if not columns:
                raise DimensionMismatchError("Row count is required for a matrix without columns")
            rows = len(columns[0])
        if any(len(c) != rows for c in columns):
            raise DimensionMismatchError(f"All columns must have length {rows}")
        return cls(p, rows, len(columns), tuple(columns[j][i] for i in range(rows) for j in range(len(columns))))

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> 'FpMatrix':
        return cls(p, rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, p: int, n: int) -> 'FpMatrix':
        return cls(p, n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    # --- Access ---
    def __getitem__(self, index: typing.Tuple[int, int]) -> int:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> typing.List[Vector]:
        return [self.row(i) for i in range(self.rows)]

    def to_columns(self) -> typing.List[Vector]:
        return [self.column(j) for j in range(self.cols)]

    # --- Arithmetic ---
    def transpose(self) -> 'FpMatrix':
        return FpMatrix(self.p, self.cols, self.rows,
                        tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)))

    def __matmul__(self, other: 'FpMatrix') -> 'FpMatrix':
        if not isinstance(other, FpMatrix):
            return NotImplemented
        if self.p != other.p or self.cols != other.rows:
            raise DimensionMismatchError(
                f"Cannot multiply {self.rows}x{self.cols} over F_{self.p} by {other.rows}x{other.cols} over F_{other.p}")
        p = self.p
        other_cols = other.to_columns()
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.extend(sum(a * b for a, b in zip(r, c)) % p for c in other_cols)
        return FpMatrix(p, self.rows, other.cols, tuple(out))

    def apply(self, v: typing.Sequence[int]) -> Vector:
        """Matrix-vector product M·v."""
        if len(v) != self.cols:
            raise DimensionMismatchError(f"Vector of length {len(v)} does not fit a {self.rows}x{self.cols} matrix")
        return tuple(sum(a * b for a, b in zip(self.row(i), v)) % self.p for i in range(self.rows))

    @property
    def rank(self) -> int:
        return rref(self)[1]

    def inverse(self) -> 'FpMatrix':
        if self.rows != self.cols:
            raise DimensionMismatchError(f"Only square matrices have inverses, got {self.rows}x{self.cols}")
        n = self.rows
        augmented = FpMatrix.from_rows(
            self.p, [self.row(i) + unit_vector(n, i) for i in range(n)], cols=2 * n)
        reduced, rank, pivots = rref(augmented)
        if pivots[:n] != list(range(n)):
            raise SingularMatrixError(f"Matrix of size {n} over F_{self.p} is singular")
        return FpMatrix.from_rows(self.p, [reduced.row(i)[n:] for i in range(n)], cols=n)


# --- Row reduction ---

def rref(M: FpMatrix) -> typing.Tuple[FpMatrix, int, typing.List[int]]:
    """
    Reduced row echelon form over F_p.

    Pivot = first nonzero entry in the column scan, scaled to 1.

    Returns:
        (R, rank, pivot column indices)
    """
    p = M.p
    rows = [list(r) for r in M.to_rows()]
    n_rows = M.rows
    pivots: typing.List[int] = []
    r = 0
    for c in range(M.cols):
        if r >= n_rows:
            break
        pivot_row = next((i for i in range(r, n_rows) if rows[i][c]), None)
        if pivot_row is None:
            continue
        if pivot_row != r:
            rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = pow(rows[r][c], -1, p)
        if inv != 1:
            rows[r] = [(x * inv) % p for x in rows[r]]
        pivot = rows[r]
        for i in range(n_rows):
            factor = rows[i][c]
            if i != r and factor:
                rows[i] = [(a - factor * b) % p for a, b in zip(rows[i], pivot)]
        pivots.append(c)
        r += 1
    return FpMatrix.from_rows(p, rows, cols=M.cols), len(pivots), pivots


def kernel_basis(M: FpMatrix) -> typing.List[Vector]:
    """Canonical basis of {x : Mx = 0}, one vector per free column in column order."""
    p = M.p
    reduced, rank, pivots = rref(M)
    pivot_set = set(pivots)
    basis = []
    for free in range(M.cols):
        if free in pivot_set:
            continue
        x = [0] * M.cols
        x[free] = 1
        for i, pc in enumerate(pivots):
            x[pc] = (-reduced[i, free]) % p
        basis.append(tuple(x))
    return basis


def solve(A: FpMatrix, b: typing.Sequence[int]) -> typing.Optional[Vector]:
    """
    Solves Ax = b. Free variables are set to 0.

    Returns:
        A solution vector, or None if the system is inconsistent.

    Raises:
        DimensionMismatchError: if len(b) != A.rows.
    """
    if len(b) != A.rows:
        raise DimensionMismatchError(f"Right-hand side has length {len(b)}, matrix has {A.rows} rows")
    p = A.p
    augmented = FpMatrix.from_rows(p, [A.row(i) + (b[i] % p,) for i in range(A.rows)], cols=A.cols + 1)
    reduced, rank, pivots = rref(augmented)
    if pivots and pivots[-1] == A.cols:
        return None
    x = [0] * A.cols
    for i, pc in enumerate(pivots):
        x[pc] = reduced[i, A.cols]
    return tuple(x)


def rank_of(vectors: typing.Sequence[Vector], p: int, m: int) -> int:
    if not vectors:
        return 0
    return rref(FpMatrix.from_rows(p, vectors, cols=m))[1]


# --- Subspaces ---

@dataclass(frozen=True)
class Subspace:
    """A subspace of F_p^m stored by its canonical rref basis (so == is subspace equality)."""
    p: int
    m: int
    basis: typing.Tuple[Vector, ...]

    @classmethod
    def span(cls, p: int, m: int, vectors: typing.Iterable[typing.Sequence[int]]) -> 'Subspace':
        vectors = [tuple(v) for v in vectors]
        for v in vectors:
            if len(v) != m:
                raise DimensionMismatchError(f"Generator {list(v)} does not live in F_{p}^{m}")
        if not vectors:
            return cls(p, m, ())
        reduced, rank, _ = rref(FpMatrix.from_rows(p, vectors, cols=m))
        return cls(p, m, tuple(reduced.row(i) for i in range(rank)))

    @classmethod
    def full(cls, p: int, m: int) -> 'Subspace':
        return cls(p, m, tuple(unit_vector(m, i) for i in range(m)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _check_same_ambient(self, other: 'Subspace'):
        if self.p != other.p or self.m != other.m:
            raise DimensionMismatchError(
                f"Subspaces of F_{self.p}^{self.m} and F_{other.p}^{other.m} cannot be compared")

    def contains_vector(self, v: typing.Sequence[int]) -> bool:
        return rank_of(list(self.basis) + [tuple(v)], self.p, self.m) == self.dim

    def contains(self, other: 'Subspace') -> bool:
        self._check_same_ambient(other)
        return self.sum(other).dim == self.dim

    def sum(self, other: 'Subspace') -> 'Subspace':
        self._check_same_ambient(other)
        return Subspace.span(self.p, self.m, self.basis + other.basis)

    def annihilator(self) -> 'Subspace':
        """{h : h·x = 0 for all x in self} under the standard dot product."""
        if not self.basis:
            return Subspace.full(self.p, self.m)
        return Subspace.span(self.p, self.m, kernel_basis(FpMatrix.from_rows(self.p, self.basis, cols=self.m)))

    def intersection(self, other: 'Subspace') -> 'Subspace':
        self._check_same_ambient(other)
        return self.annihilator().sum(other.annihilator()).annihilator()

    def coordinates(self, v: typing.Sequence[int]) -> Vector:
        """Coordinates of v in the canonical basis."""
        A = FpMatrix.from_columns(self.p, self.basis, rows=self.m)
        x = solve(A, v)
        if x is None:
            raise DimensionMismatchError(f"Vector {list(v)} is not in the subspace")
        return x

    def complement_units(self) -> typing.List[Vector]:
        """Standard unit vectors completing the basis to F_p^m (greedy, in index order)."""
        chosen = list(self.basis)
        extra = []
        for i in range(self.m):
            e = unit_vector(self.m, i)
            if rank_of(chosen + [e], self.p, self.m) > len(chosen):
                chosen.append(e)
                extra.append(e)
        return extra


@dataclass(frozen=True)
class SubspaceRelation:
    """Answers of subspace_ops; contains_u means V ⊇ U."""
    equal: bool
    contains_u: bool
    contains_v: bool
    intersection: Subspace
    sum: Subspace


def subspace_ops(U: Subspace, V: Subspace) -> SubspaceRelation:
    U._check_same_ambient(V)
    return SubspaceRelation(
        equal=U == V,
        contains_u=V.contains(U),
        contains_v=U.contains(V),
        intersection=U.intersection(V),
        sum=U.sum(V),
    )
