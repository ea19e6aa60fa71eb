# zpm_actions/symplectic.py
"""
Alternating bilinear forms over F_p and the standard symplectic space F_p^{2g}.

The standard form pairs e_i with e_{2g+1-i}: (e_i, e_j) = 1 when i + j = 2g + 1 and i < j.
"""
import functools
import logging
import math
import typing
from collections import deque
from dataclasses import dataclass

import numpy as np

from zpm_actions.config import Limits, DEFAULT_LIMITS
from zpm_actions.exceptions import (
    NotAlternatingError,
    NotAnIsometryError,
    DimensionMismatchError,
    InstanceTooLargeError,
    InternalConsistencyError,
)
from zpm_actions.fields import (
    FpMatrix,
    Vector,
    check_prime,
    kernel_basis,
    rank_of,
    rref,
    solve,
    unit_vector,
    vec_add,
    vec_combination,
    vec_scale,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AlternatingForm:
    """Gram matrix of an alternating form: zero diagonal, gram[i][j] = -gram[j][i]."""
    p: int
    gram: FpMatrix

    def __post_init__(self):
        g = self.gram
        if g.p != self.p:
            raise DimensionMismatchError(f"Gram matrix lives over F_{g.p}, form over F_{self.p}")
        if g.rows != g.cols:
            raise DimensionMismatchError(f"Gram matrix must be square, got {g.rows}x{g.cols}")
        for i in range(g.rows):
            if g[i, i]:
                raise NotAlternatingError(i, i, "nonzero diagonal entry")
            for j in range(i + 1, g.cols):
                if (g[i, j] + g[j, i]) % self.p:
                    raise NotAlternatingError(i, j, "gram[i][j] != -gram[j][i]")

    @classmethod
    def from_rows(cls, p: int, rows: typing.Sequence[typing.Sequence[int]],
                  m: typing.Optional[int] = None) -> 'AlternatingForm':
        return cls(p, FpMatrix.from_rows(p, rows, cols=len(rows) if m is None else m))

    @classmethod
    def zero(cls, p: int, m: int) -> 'AlternatingForm':
        return cls(p, FpMatrix.zeros(p, m, m))

    @property
    def m(self) -> int:
        return self.gram.rows

    @property
    def rank(self) -> int:
        return self.gram.rank

    def pair(self, x: typing.Sequence[int], y: typing.Sequence[int]) -> int:
        """(x, y) = xᵀ·G·y."""
        gy = self.gram.apply(y)
        return sum(a * b for a, b in zip(x, gy)) % self.p

    def restrict(self, vectors: typing.Sequence[Vector]) -> 'AlternatingForm':
        """The form restricted to span(vectors), expressed on the given vectors."""
        n = len(vectors)
        return AlternatingForm(self.p, FpMatrix.from_rows(
            self.p, [[self.pair(x, y) for y in vectors] for x in vectors], cols=n))

    def to_rows(self) -> typing.List[Vector]:
        return self.gram.to_rows()


@dataclass(frozen=True)
class SymplecticBasis:
    """
    Adapted basis: (a_i, a_j) = (b_i, b_j) = 0, (a_i, b_j) = δ_ij.

    a has r vectors, b has s ≤ r; a[s:] spans the radical.
    """
    a: typing.Tuple[Vector, ...]
    b: typing.Tuple[Vector, ...]

    @property
    def r(self) -> int:
        return len(self.a)

    @property
    def s(self) -> int:
        return len(self.b)

    @property
    def k(self) -> int:
        return self.r - self.s

    @property
    def vectors(self) -> typing.List[Vector]:
        return list(self.a) + list(self.b)

    def check(self, form: AlternatingForm) -> bool:
        """Gram-condition checker against the originating form."""
        if self.s > self.r or self.r + self.s != form.m:
            return False
        if rank_of(self.vectors, form.p, form.m) != form.m:
            return False
        for i, x in enumerate(self.a):
            for j, y in enumerate(self.a):
                if form.pair(x, y):
                    return False
            for j, y in enumerate(self.b):
                if form.pair(x, y) != (1 if i == j else 0):
                    return False
        for x in self.b:
            for y in self.b:
                if form.pair(x, y):
                    return False
        return True


@dataclass(frozen=True)
class StandardSymplecticSpace:
    """F_p^{2g} with the standard form."""
    p: int
    g: int
    form: AlternatingForm

    @property
    def dim(self) -> int:
        return 2 * self.g

    def preserves_form(self, M: FpMatrix) -> bool:
        return M.transpose() @ self.form.gram @ M == self.form.gram


def standard_form(p: int, g: int) -> StandardSymplecticSpace:
    """Standard space of genus parameter g; g = 0 gives the empty 0x0 form."""
    check_prime(p)
    if g < 0:
        raise DimensionMismatchError(f"Genus parameter must be nonnegative, got {g}")
    n = 2 * g
    entries = []
    for i in range(n):
        for j in range(n):
            if j == n - 1 - i and i < j:
                entries.append(1)
            elif j == n - 1 - i and i > j:
                entries.append(p - 1)
            else:
                entries.append(0)
    return StandardSymplecticSpace(p, g, AlternatingForm(p, FpMatrix(p, n, n, tuple(entries))))


# --- Radical and adapted bases ---

def radical(form: AlternatingForm) -> typing.Tuple[typing.List[Vector], int]:
    """Basis of {x : G·x = 0} and its dimension k (k ≡ m mod 2)."""
    basis = kernel_basis(form.gram)
    return basis, len(basis)


def symplectic_basis(form: AlternatingForm) -> SymplecticBasis:
    """
    Greedy adapted basis.

    Repeatedly takes the first remaining vector x with a partner y, (x, y) != 0, in scan
    order, normalises (x, y) = 1 and projects the rest onto the orthogonal complement of
    <x, y>. Whatever is left spans the radical.
    """
    p, m = form.p, form.m
    remaining: typing.List[Vector] = [unit_vector(m, i) for i in range(m)]
    pairs_a: typing.List[Vector] = []
    pairs_b: typing.List[Vector] = []

    while True:
        found = None
        for i, x in enumerate(remaining):
            for j, y in enumerate(remaining):
                if i != j and form.pair(x, y):
                    found = (i, j)
                    break
            if found:
                break
        if found is None:
            break
        i, j = found
        x = remaining[i]
        y = vec_scale(remaining[j], pow(form.pair(x, remaining[j]), -1, p), p)
        rest = []
        for idx, w in enumerate(remaining):
            if idx in (i, j):
                continue
            # w' = w - (w,y)·x + (w,x)·y  ⟂ x, y
            w = vec_add(w, vec_scale(x, -form.pair(w, y), p), p)
            w = vec_add(w, vec_scale(y, form.pair(remaining[idx], x), p), p)
            rest.append(w)
        pairs_a.append(x)
        pairs_b.append(y)
        remaining = rest

    if remaining:
        reduced, rank, _ = rref(FpMatrix.from_rows(p, remaining, cols=m))
        remaining = [reduced.row(i) for i in range(rank)]
    return SymplecticBasis(a=tuple(pairs_a + remaining), b=tuple(pairs_b))


# --- Isometry extension ---

def _pairing_rows(form: AlternatingForm, vectors: typing.Sequence[Vector]) -> typing.List[Vector]:
    """Rows v^T·G, so that row·x = (v, x)."""
    gt = form.gram.transpose()
    return [gt.apply(v) for v in vectors]


def _complete_to_symplectic(form: AlternatingForm, adapted: typing.Sequence[typing.Tuple[Vector, Vector]],
                            radical_part: typing.Sequence[Vector]) -> typing.List[Vector]:
    """
    Completes hyperbolic pairs plus isotropic radical vectors to an ordered symplectic basis
    of the (nondegenerate) ambient space: pairs first, then radical vectors with fresh partners,
    then a symplectic basis of the orthogonal complement.
    """
    p, n = form.p, form.m
    ordered: typing.List[Vector] = []
    for x, y in adapted:
        ordered.extend([x, y])

    partners: typing.List[Vector] = []
    for j, z in enumerate(radical_part):
        constraints = [v for pair in adapted for v in pair] + list(radical_part) + partners
        targets = [0] * (2 * len(adapted)) + [1 if l == j else 0 for l in range(len(radical_part))] + \
                  [0] * len(partners)
        w = solve(FpMatrix.from_rows(p, _pairing_rows(form, constraints), cols=n), targets)
        if w is None:
            raise InternalConsistencyError("No hyperbolic partner found for a radical vector; ambient form degenerate?")
        partners.append(w)
    for z, w in zip(radical_part, partners):
        ordered.extend([z, w])

    if ordered:
        complement = kernel_basis(FpMatrix.from_rows(p, _pairing_rows(form, ordered), cols=n))
    else:
        complement = [unit_vector(n, i) for i in range(n)]
    if complement:
        local = symplectic_basis(form.restrict(complement))
        if local.k:
            raise InternalConsistencyError("Orthogonal complement of a nondegenerate subspace is degenerate")
        for x, y in zip(local.a, local.b):
            ordered.extend([vec_combination(x, complement, p, n), vec_combination(y, complement, p, n)])
    if len(ordered) != n:
        raise InternalConsistencyError(f"Completed basis has {len(ordered)} vectors, expected {n}")
    return ordered


def extend_isometry(ambient: StandardSymplecticSpace, U: typing.Sequence[typing.Sequence[int]],
                    V: typing.Sequence[typing.Sequence[int]],
                    psi: typing.Optional[FpMatrix] = None) -> FpMatrix:
    """
    Extends a form-preserving isomorphism span(U) → span(V) to a form-preserving automorphism.

    Args:
        ambient: The standard symplectic space.
        U: Independent generators of the source subspace.
        V: Independent generators of the target subspace, same count as U.
        psi: t x t matrix with psi(U_j) = Σ_i psi[i][j]·V_i; identity when omitted.

    Returns:
        M (2g x 2g) with Mᵀ·Ω·M = Ω and M·U_j = psi(U_j).

    Raises:
        NotAnIsometryError: if U is dependent, psi is not injective or does not preserve the form.
    """
    p, n, form = ambient.p, ambient.dim, ambient.form
    U = [tuple(u) for u in U]
    V = [tuple(v) for v in V]
    if any(len(v) != n for v in U + V):
        raise DimensionMismatchError(f"Generators must live in F_{p}^{n}")
    t = len(U)
    if len(V) != t:
        raise NotAnIsometryError(f"psi must map {t} generators, got {len(V)} targets")
    if not U:
        return FpMatrix.identity(p, n)
    if rank_of(U, p, n) != t:
        raise NotAnIsometryError("Source generators are not linearly independent")
    if psi is None:
        images = V
    else:
        if psi.rows != t or psi.cols != t or psi.p != p:
            raise DimensionMismatchError(f"psi must be a {t}x{t} matrix over F_{p}")
        images = [vec_combination(psi.column(j), V, p, n) for j in range(t)]
    if rank_of(images, p, n) != t:
        raise NotAnIsometryError("psi is not injective")
    if form.restrict(U) != form.restrict(images):
        raise NotAnIsometryError("psi does not preserve the form")

    # Adapted basis of span(U) in U-coordinates, pushed to both sides.
    local = symplectic_basis(form.restrict(U))

    def lift(coords: Vector, gens: typing.Sequence[Vector]) -> Vector:
        return vec_combination(coords, gens, p, n)

    src_pairs = [(lift(x, U), lift(y, U)) for x, y in zip(local.a, local.b)]
    dst_pairs = [(lift(x, images), lift(y, images)) for x, y in zip(local.a, local.b)]
    src_rad = [lift(z, U) for z in local.a[local.s:]]
    dst_rad = [lift(z, images) for z in local.a[local.s:]]

    source = _complete_to_symplectic(form, src_pairs, src_rad)
    target = _complete_to_symplectic(form, dst_pairs, dst_rad)
    X = FpMatrix.from_columns(p, source, rows=n)
    Y = FpMatrix.from_columns(p, target, rows=n)
    M = Y @ X.inverse()

    if not ambient.preserves_form(M):
        raise InternalConsistencyError("Extended map does not preserve the ambient form")
    if any(M.apply(u) != w for u, w in zip(U, images)):
        raise InternalConsistencyError("Extended map does not restrict to psi")
    return M


# --- Groups ---

def group_order(p: int, g: int) -> int:
    """|Sp(2g, F_p)| = p^{g²}·Π_{i=1..g}(p^{2i} − 1)."""
    order = p ** (g * g)
    for i in range(1, g + 1):
        order *= p ** (2 * i) - 1
    return order


def integral_transvection_vectors(g: int) -> typing.List[typing.Tuple[int, ...]]:
    """Primitive integral vectors e_i, e_i + e_j, e_i − e_j; their transvections generate the integral group."""
    n = 2 * g
    vectors = [unit_vector(n, i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            plus = [0] * n
            plus[i], plus[j] = 1, 1
            minus = [0] * n
            minus[i], minus[j] = 1, -1
            vectors.extend([tuple(plus), tuple(minus)])
    return vectors


def symplectic_generators(p: int, g: int) -> typing.List[FpMatrix]:
    """
    Mod-p reductions of the integral transvections T_v(x) = x + (x, v)·v.

    Duplicates after reduction are dropped; order is deterministic.
    """
    check_prime(p)
    n = 2 * g
    # integral standard form, same layout as standard_form
    omega = [[(1 if j == n - 1 - i and i < j else -1 if j == n - 1 - i else 0) for j in range(n)] for i in range(n)]
    seen = set()
    gens = []
    for v in integral_transvection_vectors(g):
        # T = I + v·(Ω v)ᵀ over Z, reduced mod p
        omega_v = [sum(omega[j][l] * v[l] for l in range(n)) for j in range(n)]
        entries = tuple(((1 if i == j else 0) + v[i] * omega_v[j]) % p for i in range(n) for j in range(n))
        if entries not in seen:
            seen.add(entries)
            gens.append(FpMatrix(p, n, n, entries))
    return gens


def _guard_group(p: int, g: int, limits: Limits):
    order = group_order(p, g)
    if order > limits.max_group_order:
        raise InstanceTooLargeError(f"Sp({2 * g}, F_{p})", order, limits.max_group_order, "max_group_order",
                                    "Try a smaller genus or prime.")
    candidates = p ** (4 * g * g)
    if candidates > limits.max_candidates:
        raise InstanceTooLargeError(f"exhaustive filter of {2 * g}x{2 * g} matrices over F_{p}", candidates,
                                    limits.max_candidates, "max_candidates", "Try a smaller genus or prime.")


@functools.lru_cache(maxsize=8)
def _sp_entries(p: int, g: int) -> typing.Tuple[typing.Tuple[int, ...], ...]:
    """Exhaustive filter of all 2g x 2g matrices, vectorised in chunks."""
    n = 2 * g
    if n == 0:
        return ((),)
    size = n * n
    total = p ** size
    omega = np.array(standard_form(p, g).form.gram.to_rows(), dtype=np.int64).reshape(n, n)
    powers = p ** np.arange(size, dtype=np.int64)[::-1]  # first entry most significant
    found: typing.List[typing.Tuple[int, ...]] = []
    chunk = 1 << 16
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        digits = (idx[:, None] // powers[None, :]) % p
        mats = digits.reshape(-1, n, n)
        lhs = np.einsum('nji,jk,nkl->nil', mats, omega, mats) % p
        ok = np.all(lhs == omega[None, :, :], axis=(1, 2))
        found.extend(tuple(int(x) for x in row) for row in digits[ok])
    logger.debug("Filtered %d matrices over F_%d, kept %d form-preserving", total, p, len(found))
    return tuple(found)


def sp_group(p: int, g: int, limits: Limits = DEFAULT_LIMITS) -> typing.FrozenSet[FpMatrix]:
    """
    All M with Mᵀ·Ω·M = Ω (invertibility follows from nondegeneracy of Ω).

    Raises:
        InstanceTooLargeError: if the group or the filter exceeds the limits.
    """
    check_prime(p)
    if g < 0:
        raise DimensionMismatchError(f"Genus parameter must be nonnegative, got {g}")
    _guard_group(p, g, limits)
    n = 2 * g
    return frozenset(FpMatrix(p, n, n, entries) for entries in _sp_entries(p, g))


@dataclass(frozen=True)
class SurjectivityReport:
    ok: bool
    generated_order: int
    full_order: int
    formula_order: int


def _closure(identity: FpMatrix, generators: typing.Sequence[FpMatrix], limit: int) -> typing.Set[FpMatrix]:
    """Breadth-first closure of the monoid generated (= group, since everything is finite)."""
    seen = {identity}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for gen in generators:
            nxt = current @ gen
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > limit:
                    raise InstanceTooLargeError("generated subgroup", len(seen), limit, "max_group_order")
                queue.append(nxt)
    return seen


def verify_reduction_surjectivity(p: int, g: int, limits: Limits = DEFAULT_LIMITS) -> SurjectivityReport:
    """
    Checks at desk scale that reducing the integral symplectic group mod p is onto.

    The generated order comes from closure of reduced integral transvections; the full order
    from exhaustive filtering. Both are also compared against the closed order formula.
    """
    check_prime(p)
    _guard_group(p, g, limits)
    n = 2 * g
    logger.debug("Running surjectivity check for p=%d, g=%d", p, g)
    generated = _closure(FpMatrix.identity(p, n), symplectic_generators(p, g), limits.max_group_order)
    full = sp_group(p, g, limits)
    formula = group_order(p, g)
    ok = len(generated) == len(full) == formula and generated == set(full)
    if not ok:
        logger.warning("Warning: reduction not onto for p=%d, g=%d: generated %d of %d", p, g, len(generated),
                       len(full))
    return SurjectivityReport(ok=ok, generated_order=len(generated), full_order=len(full), formula_order=formula)


def random_symplectic(rng, p: int, g: int, length: int = 12) -> FpMatrix:
    """Random word in the transvection generators (uniformity not required)."""
    gens = symplectic_generators(p, g)
    M = FpMatrix.identity(p, 2 * g)
    for _ in range(length if gens else 0):
        M = M @ rng.choice(gens)
    return M


def general_linear_order(n: int, p: int) -> int:
    return math.prod(p ** n - p ** i for i in range(n))
