# zpm_actions/invariants.py
"""
Strong and weak invariants of an action, and the deciders built on them.

G_free* is modelled as the annihilator of G_fix = span(c_j) inside G* = F_p^m (dot-product
duality), with its canonical rref basis, so the induced forms of two actions are compared as
Gram matrices on the same basis.
"""
import functools
import itertools
import logging
import typing
from collections import Counter
from dataclasses import dataclass, asdict

import numpy as np

from zpm_actions.actions import ActionData
from zpm_actions.config import Limits, DEFAULT_LIMITS
from zpm_actions.exceptions import ActionMismatchError, DimensionMismatchError, InstanceTooLargeError, \
    InternalConsistencyError
from zpm_actions.fields import FpMatrix, Subspace, Vector, decode_vector, dot, solve, unit_vector, vec_combination, \
    vec_scale
from zpm_actions.symplectic import AlternatingForm, general_linear_order

logger = logging.getLogger(__name__)

Multiset = typing.Tuple[Vector, ...]


# --- Induced form ---

@dataclass(frozen=True)
class InducedForm:
    ann_basis: typing.Tuple[Vector, ...]
    form: AlternatingForm

    @property
    def k(self) -> int:
        """Radical dimension: (m - n) - rank."""
        return self.form.m - self.form.rank


def induced_form(a: ActionData) -> InducedForm:
    """
    Form on Ann(G_fix): (e, f) = Σ_i e(u_i)·f(v_i) − e(v_i)·f(u_i) mod p.

    Raises:
        InvalidActionError: propagated from validate().
    """
    a.validate()
    p = a.p
    ann = Subspace.span(p, a.m, a.branch_images).annihilator().basis
    rows = []
    for e in ann:
        row = []
        for f in ann:
            value = 0
            for u, v in zip(a.alpha_images, a.beta_images):
                value += dot(e, u, p) * dot(f, v, p) - dot(e, v, p) * dot(f, u, p)
            row.append(value % p)
        rows.append(row)
    return InducedForm(ann, AlternatingForm(p, FpMatrix.from_rows(p, rows, cols=len(ann))))


def total_genus(a: ActionData) -> int:
    """Riemann–Hurwitz: 1 + p^m(g − 1) + r·p^{m−1}(p − 1)/2."""
    a.validate()
    p, m = a.p, a.m
    doubled = 2 + 2 * p ** m * (a.g - 1) + a.r * p ** (m - 1) * (p - 1)
    if doubled % 2 or doubled < 0:
        raise InternalConsistencyError(f"Riemann–Hurwitz produced non-integral genus {doubled}/2")
    return doubled // 2


# --- Strong invariant ---

@dataclass(frozen=True)
class StrongInvariant:
    p: int
    m: int
    g: int
    g_total: int
    branch_multiset: Multiset
    gfix_basis: typing.Tuple[Vector, ...]
    ann_basis: typing.Tuple[Vector, ...]
    gram: typing.Tuple[Vector, ...]
    k: int

    @property
    def n(self) -> int:
        return len(self.gfix_basis)

    @property
    def r(self) -> int:
        return len(self.branch_multiset)

    def to_dict(self) -> dict:
        data = asdict(self)
        for key in ("branch_multiset", "gfix_basis", "ann_basis", "gram"):
            data[key] = [list(v) for v in data[key]]
        data["n"] = self.n
        data["r"] = self.r
        return data


def strong_invariant(a: ActionData) -> StrongInvariant:
    a.validate()
    induced = induced_form(a)
    gfix = Subspace.span(a.p, a.m, a.branch_images)
    invariant = StrongInvariant(
        p=a.p,
        m=a.m,
        g=a.g,
        g_total=total_genus(a),
        branch_multiset=tuple(sorted(a.branch_images)),
        gfix_basis=gfix.basis,
        ann_basis=induced.ann_basis,
        gram=tuple(induced.form.to_rows()),
        k=induced.k,
    )
    if (a.m - invariant.n - invariant.k) % 2:
        raise InternalConsistencyError(f"Radical dimension {invariant.k} has the wrong parity for m-n={a.m - invariant.n}")
    return invariant


def check_same_group(a: ActionData, b: ActionData):
    """Raises ActionMismatchError unless both actions are of the same group Z_p^m."""
    if (a.p, a.m) != (b.p, b.m):
        raise ActionMismatchError((a.p, a.m), (b.p, b.m))


def strongly_equivalent(a: ActionData, b: ActionData) -> bool:
    """Equal invariants: same genera, same branch multiset, equal Gram matrices (equality, not congruence)."""
    check_same_group(a, b)
    return strong_invariant(a) == strong_invariant(b)


# --- Aut(G) canonical forms ---

def _determinants(mats: np.ndarray) -> np.ndarray:
    """Exact integer determinants of a stack (N, n, n) of small matrices (Leibniz expansion)."""
    n = mats.shape[1]
    total = np.zeros(mats.shape[0], dtype=np.int64)
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = np.ones(mats.shape[0], dtype=np.int64)
        for i, j in enumerate(perm):
            term = term * mats[:, i, j]
        total += -term if inversions % 2 else term
    return total


def _guard_general_linear(n: int, p: int, limits: Limits):
    order = general_linear_order(n, p)
    if order > limits.max_group_order:
        raise InstanceTooLargeError(f"GL({n}, F_{p})", order, limits.max_group_order, "max_group_order",
                                    "Try a smaller rank or prime.")
    candidates = p ** (n * n)
    if candidates > limits.max_candidates:
        raise InstanceTooLargeError(f"exhaustive filter of {n}x{n} matrices over F_{p}", candidates,
                                    limits.max_candidates, "max_candidates", "Try a smaller rank or prime.")


@functools.lru_cache(maxsize=16)
def _general_linear_array(n: int, p: int) -> np.ndarray:
    size = n * n
    total = p ** size
    powers = p ** np.arange(size, dtype=np.int64)[::-1]
    kept = []
    chunk = 1 << 16
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        mats = ((idx[:, None] // powers[None, :]) % p).reshape(-1, n, n)
        kept.append(mats[_determinants(mats) % p != 0])
    group = np.concatenate(kept) if kept else np.zeros((0, n, n), dtype=np.int64)
    if len(group) != general_linear_order(n, p):
        raise InternalConsistencyError(f"GL({n}, F_{p}) filter kept {len(group)} matrices")
    logger.debug("Materialised GL(%d, F_%d): %d matrices", n, p, len(group))
    group.setflags(write=False)
    return group


def general_linear(n: int, p: int, limits: Limits = DEFAULT_LIMITS) -> np.ndarray:
    """All invertible n x n matrices over F_p as an (N, n, n) int64 array (read-only, cached)."""
    _guard_general_linear(n, p, limits)
    return _general_linear_array(n, p)


def general_linear_matrices(n: int, p: int, limits: Limits = DEFAULT_LIMITS) -> typing.List[FpMatrix]:
    return [FpMatrix(p, n, n, tuple(int(x) for x in mat.ravel())) for mat in general_linear(n, p, limits)]


def _orbit_codes(coords: typing.Sequence[Vector], p: int, n: int, limits: Limits) -> np.ndarray:
    """Sorted base-p codes of γ·C for every γ in GL(n, p): shape (|GL|, r)."""
    group = general_linear(n, p, limits)
    X = np.array(coords, dtype=np.int64).T  # (n, r)
    images = np.einsum('nij,jr->nir', group, X) % p
    weights = p ** np.arange(n, dtype=np.int64)[::-1]
    codes = np.einsum('nir,i->nr', images, weights)
    codes.sort(axis=1)
    return codes


def branch_coordinates(branch: typing.Sequence[Vector], p: int, m: int) -> typing.Tuple[int, typing.List[Vector]]:
    """Coordinates of the c_j in the canonical basis of their span; returns (n, coordinates)."""
    span = Subspace.span(p, m, branch)
    return span.dim, [span.coordinates(c) for c in branch]


def _fits_general_linear_scan(n: int, p: int, limits: Limits) -> bool:
    return general_linear_order(n, p) <= limits.max_group_order and p ** (n * n) <= limits.max_candidates


def _first_unit_outside(image: Subspace) -> Vector:
    """Lex-smallest vector outside a proper subspace: the last unit vector it misses."""
    for i in range(image.m - 1, -1, -1):
        e = unit_vector(image.m, i)
        if not image.contains_vector(e):
            return e
    raise InternalConsistencyError("No unit vector outside a full subspace")


def _canonical_search(coords: typing.Sequence[Vector], p: int, n: int) -> Multiset:
    """
    Depth-first search over partial isomorphisms γ of F_p^n, emitting the sorted image in order.

    A value already in the span of the chosen preimages has a fixed image. Every other value
    can be sent to any vector outside the current image, the smallest of which is a unit
    vector; each such choice opens a branch. Branches whose emitted prefix is lex-greater
    than the best complete image are cut.
    """
    counts = Counter(tuple(c) for c in coords)
    best: typing.Optional[typing.List[Vector]] = None

    def extend(preimages: typing.List[Vector], images: typing.List[Vector],
               fixed: typing.Dict[Vector, Vector], c: Vector, v: Vector) -> typing.Dict[Vector, Vector]:
        preimages, images = preimages + [c], images + [v]
        basis = FpMatrix.from_columns(p, preimages, rows=n)
        grown = dict(fixed)
        for value in counts:
            if value not in grown:
                x = solve(basis, value)
                if x is not None:
                    grown[value] = vec_combination(x, images, p, n)
        return grown

    def visit(preimages, images, fixed, remaining: Counter, out: typing.List[Vector]):
        nonlocal best
        if best is not None and out > best[:len(out)]:
            return
        if not remaining:
            if best is None or out < best:
                best = out
            return
        pending = [value for value in remaining if value in fixed]
        free = sorted(value for value in remaining if value not in fixed)
        lowest = min(pending, key=fixed.__getitem__) if pending else None
        target = _first_unit_outside(Subspace.span(p, n, images)) if free else None
        if lowest is not None and (target is None or fixed[lowest] < target):
            left = Counter(remaining)
            del left[lowest]
            visit(preimages, images, fixed, left, out + [fixed[lowest]] * remaining[lowest])
            return
        for c in free:
            grown = extend(preimages, images, fixed, c, target)
            visit(preimages + [c], images + [target], grown, remaining, out)

    visit([], [], {}, Counter(counts), [])
    return tuple(best)


def canonical_multiset(branch: typing.Sequence[Vector], p: int, m: int,
                       limits: Limits = DEFAULT_LIMITS) -> Multiset:
    """
    Lex-minimal sorted multiset among the images of the branch multiset under all
    isomorphisms span(C) → F_p^n.

    Small groups are scanned whole with numpy; otherwise a pruned search over images of
    the branch values is used, whose cost does not depend on |GL(n, p)|.
    """
    if not branch:
        return ()
    n, coords = branch_coordinates(branch, p, m)
    if not _fits_general_linear_scan(n, p, limits):
        logger.debug("GL(%d, F_%d) exceeds the scan limits, searching images instead", n, p)
        return _canonical_search(coords, p, n)
    codes = _orbit_codes(coords, p, n, limits)
    best = codes[np.lexsort(codes.T[::-1])[0]]
    return tuple(decode_vector(int(code), p, n) for code in best)


def canonical_orbit(coords: typing.Sequence[Vector], p: int, n: int,
                    limits: Limits = DEFAULT_LIMITS) -> typing.Set[Multiset]:
    """Whole GL(n, p)-orbit of a full-rank multiset in F_p^n, as sorted tuples."""
    codes = _orbit_codes(coords, p, n, limits)
    return {tuple(decode_vector(int(c), p, n) for c in row) for row in np.unique(codes, axis=0)}


def multiset_signature(branch: typing.Sequence[Vector], p: int, m: int) -> typing.Dict[Vector, typing.Tuple[int, ...]]:
    """
    F(h) = (k_1, ..., k_{p-1}), k_i = multiplicity of i·h in the multiset.

    Only h on the lines of the branch values are listed; every other h has the all-zero
    signature, so an empty multiset gives an empty mapping.
    """
    counts = Counter(tuple(c) for c in branch)
    if any(len(c) != m for c in counts):
        raise DimensionMismatchError(f"Branch vectors must live in F_{p}^{m}")
    lines = {vec_scale(c, t, p) for c in counts for t in range(1, p)}
    return {h: tuple(counts[vec_scale(h, i, p)] for i in range(1, p)) for h in sorted(lines)}


def signature_hash(branch: typing.Sequence[Vector], p: int, m: int) -> typing.Tuple[typing.Tuple[int, ...], ...]:
    """Aut(G)-invariant digest of multiset_signature: its sorted values."""
    return tuple(sorted(multiset_signature(branch, p, m).values()))


# --- Weak invariant ---

@dataclass(frozen=True)
class WeakInvariant:
    p: int
    m: int
    k: int
    g: int
    n: int
    canonical_multiset: Multiset

    @property
    def r(self) -> int:
        return len(self.canonical_multiset)

    def sort_key(self) -> tuple:
        return self.g, self.n, self.r, self.k, self.canonical_multiset

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "k": self.k,
            "g": self.g,
            "n": self.n,
            "r": self.r,
            "canonical_multiset": [list(v) for v in self.canonical_multiset],
        }


def weak_invariant(a: ActionData, limits: Limits = DEFAULT_LIMITS) -> WeakInvariant:
    strong = strong_invariant(a)
    return WeakInvariant(
        p=a.p,
        m=a.m,
        k=strong.k,
        g=a.g,
        n=strong.n,
        canonical_multiset=canonical_multiset(a.branch_images, a.p, a.m, limits),
    )


def weakly_equivalent(a: ActionData, b: ActionData, limits: Limits = DEFAULT_LIMITS) -> bool:
    check_same_group(a, b)
    left, right = strong_invariant(a), strong_invariant(b)
    if (left.g, left.r, left.n, left.k) != (right.g, right.r, right.n, right.k):
        return False
    if signature_hash(a.branch_images, a.p, a.m) != signature_hash(b.branch_images, b.p, b.m):
        return False
    return weak_invariant(a, limits) == weak_invariant(b, limits)


def first_difference(left: typing.Union[StrongInvariant, WeakInvariant],
                     right: typing.Union[StrongInvariant, WeakInvariant]) -> typing.Optional[str]:
    """Name of the first invariant component that differs, or None."""
    left_dict, right_dict = left.to_dict(), right.to_dict()
    for key in left_dict:
        if left_dict[key] != right_dict.get(key):
            return key
    return None
