# zpm_actions/moduli.py
"""Witness construction and enumeration of weak classes (components of the moduli space)."""
import itertools
import logging
import math
import typing

from zpm_actions.actions import ActionData
from zpm_actions.config import Limits, DEFAULT_LIMITS
from zpm_actions.exceptions import AdmissibilityError, DimensionMismatchError, InstanceTooLargeError, \
    InternalConsistencyError
from zpm_actions.fields import Subspace, Vector, check_prime, nonzero_vectors, rank_of, reduce_vector, zero_vector
from zpm_actions.invariants import WeakInvariant, canonical_orbit, strong_invariant

logger = logging.getLogger(__name__)


def admissible_k(m: int, n: int, g: int) -> typing.List[int]:
    """k ≤ m − n, k ≡ m − n (mod 2), g ≥ (m − n + k)/2."""
    free_rank = m - n
    return [k for k in range(free_rank % 2, free_rank + 1, 2) if 2 * g >= free_rank + k]


def construct_action(p: int, m: int, k: int, g: int, multiset: typing.Sequence[typing.Sequence[int]]) -> ActionData:
    """
    Builds an action with radical dimension k, quotient genus g and branch multiset C.

    Vectors of C shorter than m are read as living in the first coordinates of F_p^m.
    The handle block is laid out on a complement of span(C): (m−n−k)/2 hyperbolic pairs
    (u_i, v_i), then k radical generators on further u_i, then zeros.

    Raises:
        AdmissibilityError: naming the violated inequality.
    """
    check_prime(p)
    if m < 1:
        raise DimensionMismatchError(f"Rank m must be at least 1, got {m}")
    branch: typing.List[Vector] = []
    for c in multiset:
        if len(c) > m:
            raise DimensionMismatchError(f"Branch vector {list(c)} does not fit in F_{p}^{m}")
        branch.append(reduce_vector(list(c) + [0] * (m - len(c)), p))

    # --- Admissibility (order fixes which inequality is reported) ---
    for idx, c in enumerate(branch):
        if not any(c):
            raise AdmissibilityError("C_j != 0", f"C_{idx + 1} is zero")
    if branch and any(sum(col) % p for col in zip(*branch)):
        raise AdmissibilityError("sum(C) == 0")
    if g < 0:
        raise AdmissibilityError("g >= 0", f"g = {g}")
    span = Subspace.span(p, m, branch)
    n = span.dim
    if k < 0:
        raise AdmissibilityError("k >= 0", f"k = {k}")
    if k > m - n:
        raise AdmissibilityError("k <= m-n", f"k = {k}, m-n = {m - n}")
    if (m - n - k) % 2:
        raise AdmissibilityError("k = (m-n) mod 2", f"k = {k}, m-n = {m - n}")
    if 2 * g < m - n + k:
        raise AdmissibilityError("g >= (m-n+k)/2", f"g = {g}, (m-n+k)/2 = {(m - n + k) / 2:g}")

    complement = span.complement_units()
    pairs = (m - n - k) // 2
    alpha = [zero_vector(m)] * g
    beta = [zero_vector(m)] * g
    for i in range(pairs):
        alpha[i] = complement[2 * i]
        beta[i] = complement[2 * i + 1]
    for j in range(k):
        alpha[pairs + j] = complement[2 * pairs + j]

    action = ActionData(p, m, g, tuple(alpha), tuple(beta), tuple(branch))
    action.validate()
    built = strong_invariant(action)
    if built.k != k or built.n != n:
        raise InternalConsistencyError(f"Constructed action has (k, n) = ({built.k}, {built.n}), expected ({k}, {n})")
    logger.debug("Constructed action p=%d m=%d k=%d g=%d r=%d", p, m, k, g, len(branch))
    return action


def enumerate_free_classes(m: int, g: int, g_max: typing.Optional[int] = None) -> typing.List[typing.Tuple[int, int]]:
    """All (k, g') with k ≤ m, k ≡ m (mod 2), g' ≥ (m + k)/2, for g' in [g, g_max]; independent of p."""
    if m < 1:
        raise DimensionMismatchError(f"Rank m must be at least 1, got {m}")
    if g < 0:
        raise DimensionMismatchError(f"Quotient genus must be nonnegative, got {g}")
    last = g if g_max is None else g_max
    return [(k, genus) for genus in range(g, last + 1) for k in admissible_k(m, 0, genus)]


def count_branch_candidates(p: int, n: int, r_max: int) -> int:
    """Multisets of nonzero vectors of F_p^n with size in [max(n, 2), r_max]."""
    if n == 0:
        return 1
    nonzero = p ** n - 1
    return sum(math.comb(nonzero + r - 1, r) for r in range(max(n, 2), r_max + 1))


def branch_multisets(p: int, n: int, r: int, limits: Limits = DEFAULT_LIMITS) -> typing.List[typing.Tuple[Vector, ...]]:
    """
    Canonical representatives of GL(n, p)-orbits of multisets of r nonzero vectors summing to
    zero and spanning F_p^n. Whole orbits are marked as seen.
    """
    vectors = nonzero_vectors(p, n)
    seen: typing.Set[typing.Tuple[Vector, ...]] = set()
    found = []
    for combo in itertools.combinations_with_replacement(vectors, r):
        if combo in seen:
            continue
        if any(sum(col) % p for col in zip(*combo)):
            continue
        if rank_of(combo, p, n) != n:
            continue
        orbit = canonical_orbit(combo, p, n, limits)
        seen |= orbit
        found.append(min(orbit))
    return found


def enumerate_weak_classes(p: int, m: int, g: int, r_max: int, limits: Limits = DEFAULT_LIMITS,
                           g_max: typing.Optional[int] = None) -> typing.List[WeakInvariant]:
    """
    All weak classes (k, g, n, canonical multiset) with r ≤ r_max, sorted.

    Raises:
        InstanceTooLargeError: if the multisets to scan exceed max_candidates.
    """
    check_prime(p)
    if m < 1:
        raise DimensionMismatchError(f"Rank m must be at least 1, got {m}")
    if g < 0 or r_max < 0:
        raise DimensionMismatchError(f"g and r_max must be nonnegative, got g={g}, r_max={r_max}")
    genera = range(g, (g if g_max is None else g_max) + 1)

    top = min(m, r_max)
    candidates = sum(count_branch_candidates(p, n, r_max) for n in range(top + 1))
    if candidates > limits.max_candidates:
        raise InstanceTooLargeError("branch multiset enumeration", candidates, limits.max_candidates,
                                    "max_candidates", "Try a smaller --r-max or --m.")

    classes: typing.List[WeakInvariant] = []
    for n in range(top + 1):
        if n == 0:
            multisets = [()]
        else:
            multisets = []
            for r in range(max(n, 2), r_max + 1):
                cell = branch_multisets(p, n, r, limits)
                logger.debug("n=%d r=%d: %d orbit representatives", n, r, len(cell))
                multisets.extend(cell)
        for genus in genera:
            for k in admissible_k(m, n, genus):
                classes.extend(WeakInvariant(p, m, k, genus, n, multiset) for multiset in multisets)
    classes.sort(key=WeakInvariant.sort_key)
    logger.debug("Enumeration p=%d m=%d g=%s r_max=%d finished: %d classes", p, m, list(genera), r_max, len(classes))
    return classes
