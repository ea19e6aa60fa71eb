# zpm_actions/oracle.py
"""
Brute-force ground truth: permutation covers, Euler-characteristic genus, and equivalence
classes found as orbits of homology-level moves.
"""
import itertools
import logging
import random
import typing
from collections import deque
from dataclasses import dataclass, field

from zpm_actions.actions import ActionData
from zpm_actions.config import Limits, DEFAULT_LIMITS
from zpm_actions.exceptions import (
    InstanceTooLargeError,
    InternalConsistencyError,
    NotSurjectiveError,
    OracleIncompleteError,
)
from zpm_actions.fields import FpMatrix, Vector, all_vectors, check_prime, decode_vector, encode_vector, \
    nonzero_vectors, rank_of, vec_add, vec_scale
from zpm_actions.invariants import strong_invariant, weak_invariant
from zpm_actions.moduli import enumerate_weak_classes
from zpm_actions.symplectic import symplectic_generators

logger = logging.getLogger(__name__)

MODES = ("strong", "weak")
Permutation = typing.Tuple[int, ...]


# --- Covers ---

def _compose(first: Permutation, second: Permutation) -> Permutation:
    """Apply first, then second."""
    return tuple(second[x] for x in first)


def _inverse(perm: Permutation) -> Permutation:
    out = [0] * len(perm)
    for i, x in enumerate(perm):
        out[x] = i
    return tuple(out)


def _cycle_count(perm: Permutation) -> int:
    seen = [False] * len(perm)
    cycles = 0
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycles += 1
        x = start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
    return cycles


@dataclass(frozen=True)
class PermutationCover:
    """Regular cover with sheets F_p^m; every generator translates sheets by its image."""
    p: int
    m: int
    g: int
    alpha_perms: typing.Tuple[Permutation, ...]
    beta_perms: typing.Tuple[Permutation, ...]
    branch_perms: typing.Tuple[Permutation, ...]

    @property
    def degree(self) -> int:
        return self.p ** self.m

    @property
    def r(self) -> int:
        return len(self.branch_perms)

    @property
    def sheets(self) -> typing.List[Vector]:
        return list(all_vectors(self.p, self.m))

    @property
    def generators(self) -> typing.List[Permutation]:
        return list(self.alpha_perms) + list(self.beta_perms) + list(self.branch_perms)

    def is_connected(self) -> bool:
        """Transitivity of the generated translation group."""
        seen = {0}
        queue = deque([0])
        gens = self.generators
        while queue:
            x = queue.popleft()
            for perm in gens:
                y = perm[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return len(seen) == self.degree

    def fiber_sizes(self) -> typing.List[int]:
        """Points over each branch point: cycles of its local monodromy."""
        return [_cycle_count(perm) for perm in self.branch_perms]

    def satisfies_relation(self) -> bool:
        """Π [A_i, B_i] · Π X_j acts trivially."""
        total = tuple(range(self.degree))
        for a, b in zip(self.alpha_perms, self.beta_perms):
            commutator = _compose(_compose(_compose(a, b), _inverse(a)), _inverse(b))
            total = _compose(total, commutator)
        for x in self.branch_perms:
            total = _compose(total, x)
        return total == tuple(range(self.degree))


def _translation(c: Vector, p: int, m: int) -> Permutation:
    return tuple(encode_vector(vec_add(decode_vector(i, p, m), c, p), p) for i in range(p ** m))


def build_cover(a: ActionData, limits: Limits = DEFAULT_LIMITS) -> PermutationCover:
    """
    Raises:
        InstanceTooLargeError: when p^m exceeds max_sheets.
    """
    degree = a.p ** a.m
    if degree > limits.max_sheets:
        raise InstanceTooLargeError("permutation cover", degree, limits.max_sheets, "max_sheets",
                                    "Try a smaller p or m.")
    return PermutationCover(
        p=a.p,
        m=a.m,
        g=a.g,
        alpha_perms=tuple(_translation(u, a.p, a.m) for u in a.alpha_images),
        beta_perms=tuple(_translation(v, a.p, a.m) for v in a.beta_images),
        branch_perms=tuple(_translation(c, a.p, a.m) for c in a.branch_images),
    )


def cover_genus(cov: PermutationCover) -> int:
    """χ(S̃) = deg·(2 − 2g − r) + Σ fiber sizes, genus = (2 − χ)/2."""
    if not cov.is_connected():
        images = [tuple(decode_vector(perm[0], cov.p, cov.m)) for perm in cov.generators]
        raise NotSurjectiveError(rank_of(images, cov.p, cov.m), cov.m)
    chi = cov.degree * (2 - 2 * cov.g - cov.r) + sum(cov.fiber_sizes())
    if (2 - chi) % 2 or chi > 2:
        raise InternalConsistencyError(f"Euler characteristic {chi} does not come from a closed orientable surface")
    return (2 - chi) // 2


# --- Orbit search ---

class _UnionFind:
    def __init__(self, items: typing.Iterable[typing.Hashable]):
        self.parent = {x: x for x in items}
        self.rank = {x: 0 for x in self.parent}

    def find(self, x):
        y = self.parent[x]
        if self.parent[y] != y:
            y = self.parent[x] = self.find(y)
        return y

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x
        del self.rank[y]

    def reps(self) -> set:
        return set(self.rank)


def automorphism_generators(p: int, m: int) -> typing.List[FpMatrix]:
    """Generators of GL(m, p): elementary transvections I + E_ij and diag(a, 1, ..., 1)."""
    gens = []
    for i, j in itertools.permutations(range(m), 2):
        entries = [1 if x == y else 0 for x in range(m) for y in range(m)]
        entries[i * m + j] = 1
        gens.append(FpMatrix(p, m, m, tuple(entries)))
    for a in range(2, p):
        entries = [1 if x == y else 0 for x in range(m) for y in range(m)]
        entries[0] = a
        gens.append(FpMatrix(p, m, m, tuple(entries)))
    return gens


class _MoveSet:
    """Homology-level generators: symplectic basis changes and twists, plus Aut(G) in weak mode."""

    def __init__(self, p: int, m: int, g: int, mode: str):
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
        self.mode = mode
        self.symplectic = symplectic_generators(p, g) if g else []
        self.automorphisms = automorphism_generators(p, m) if mode == "weak" else []

    def neighbours(self, a: ActionData) -> typing.Iterator[ActionData]:
        for M in self.symplectic:
            yield a.apply_symplectic(M).canonical()
        distinct = {c: j for j, c in reversed(list(enumerate(a.branch_images)))}
        for j in sorted(distinct.values()):
            for i in range(a.g):
                yield a.twist(i, j, "alpha").canonical()
                yield a.twist(i, j, "beta").canonical()
        for gamma in self.automorphisms:
            yield a.apply_automorphism(gamma).canonical()


@dataclass(frozen=True)
class MoveOrbit:
    seed: ActionData
    mode: str
    orbit: typing.FrozenSet[ActionData]

    def __len__(self) -> int:
        return len(self.orbit)

    def __contains__(self, item: ActionData) -> bool:
        return item.canonical() in self.orbit


def move_orbit(seed: ActionData, mode: str = "strong", limits: Limits = DEFAULT_LIMITS) -> MoveOrbit:
    """Breadth-first closure of a single datum under the move generators."""
    seed.validate()
    moves = _MoveSet(seed.p, seed.m, seed.g, mode)
    start = seed.canonical()
    seen = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for nxt in moves.neighbours(current):
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > limits.max_candidates:
                    raise InstanceTooLargeError("move orbit", len(seen), limits.max_candidates, "max_candidates")
                queue.append(nxt)
    return MoveOrbit(seed=start, mode=mode, orbit=frozenset(seen))


# --- Exhaustive classification ---

def branch_blocks(p: int, m: int, r_max: int) -> typing.List[typing.Tuple[Vector, ...]]:
    """Sorted multisets of nonzero vectors summing to zero, r ∈ {0} ∪ [2, r_max]."""
    vectors = nonzero_vectors(p, m)
    blocks: typing.List[typing.Tuple[Vector, ...]] = [()]
    for r in range(2, r_max + 1):
        for combo in itertools.combinations_with_replacement(vectors, r):
            if not any(sum(col) % p for col in zip(*combo)):
                blocks.append(combo)
    return blocks


def enumerate_action_data(p: int, m: int, g: int, r_max: int,
                          limits: Limits = DEFAULT_LIMITS) -> typing.List[ActionData]:
    """Every valid datum with sorted branch block."""
    check_prime(p)
    blocks = branch_blocks(p, m, r_max)
    handles = p ** (2 * g * m)
    if handles * len(blocks) > limits.max_candidates:
        raise InstanceTooLargeError("oracle candidate set", handles * len(blocks), limits.max_candidates,
                                    "max_candidates", "Try a smaller g, m or r_max.")
    vectors = list(all_vectors(p, m))
    found = []
    for handle_block in itertools.product(vectors, repeat=2 * g):
        alpha, beta = handle_block[:g], handle_block[g:]
        for block in blocks:
            a = ActionData(p, m, g, alpha, beta, block)
            if rank_of(a.images, p, m) == m:
                found.append(a)
    logger.debug("Oracle p=%d m=%d g=%d r_max=%d: %d valid data", p, m, g, r_max, len(found))
    return found


@dataclass
class OracleResult:
    count: int
    representatives: typing.List[ActionData]
    orbits: typing.Dict[ActionData, typing.List[ActionData]] = field(default_factory=dict, repr=False)


def brute_force_classes(p: int, m: int, g: int, r_max: int, mode: str = "strong",
                        limits: Limits = DEFAULT_LIMITS) -> OracleResult:
    """Partitions all valid data into move orbits; one representative (the smallest) per orbit."""
    data = enumerate_action_data(p, m, g, r_max, limits)
    moves = _MoveSet(p, m, g, mode)
    uf = _UnionFind(data)
    for a in data:
        for b in moves.neighbours(a):
            if b not in uf.parent:
                raise InternalConsistencyError(f"Move left the enumerated set: {b}")
            uf.union(a, b)
    orbits: typing.Dict[ActionData, typing.List[ActionData]] = {}
    for a in data:
        orbits.setdefault(uf.find(a), []).append(a)
    keyed = {}
    for members in orbits.values():
        members.sort(key=ActionData.sort_key)
        keyed[members[0]] = members
    representatives = sorted(keyed, key=ActionData.sort_key)
    logger.debug("Oracle %s classes p=%d m=%d g=%d r_max=%d: %d", mode, p, m, g, r_max, len(representatives))
    return OracleResult(count=len(representatives), representatives=representatives, orbits=keyed)


@dataclass(frozen=True)
class CrossValidation:
    mode: str
    orbit_count: int
    invariant_count: int
    enumerated_count: typing.Optional[int] = None

    @property
    def ok(self) -> bool:
        if self.orbit_count != self.invariant_count:
            return False
        return self.enumerated_count is None or self.enumerated_count == self.invariant_count

    def to_dict(self) -> dict:
        return {"mode": self.mode, "orbit_count": self.orbit_count, "invariant_count": self.invariant_count,
                "enumerated_count": self.enumerated_count, "ok": self.ok}


def cross_validate(p: int, m: int, g: int, r_max: int, mode: str = "strong",
                   limits: Limits = DEFAULT_LIMITS) -> CrossValidation:
    """
    Compares orbit counts with the number of distinct invariant values.

    Raises:
        InternalConsistencyError: an invariant takes two values on one orbit.
        OracleIncompleteError: more orbits than invariant values.
    """
    result = brute_force_classes(p, m, g, r_max, mode, limits)

    def invariant(a: ActionData):
        return strong_invariant(a) if mode == "strong" else weak_invariant(a, limits)

    values = set()
    for rep, members in result.orbits.items():
        seen = {invariant(a) for a in members}
        if len(seen) != 1:
            raise InternalConsistencyError(f"{mode} invariant is not constant on the orbit of {rep}")
        values |= seen
    if result.count > len(values):
        raise OracleIncompleteError(mode, result.count, len(values))
    enumerated = None
    if mode == "weak":
        enumerated = len(enumerate_weak_classes(p, m, g, r_max, limits))
    report = CrossValidation(mode=mode, orbit_count=result.count, invariant_count=len(values),
                             enumerated_count=enumerated)
    if not report.ok:
        logger.warning("Warning: cross-validation mismatch for p=%d m=%d g=%d r_max=%d: %s", p, m, g, r_max,
                       report.to_dict())
    return report


# --- Sampling ---

def is_realizable(p: int, m: int, g: int, r: int) -> bool:
    """Whether some valid datum exists for (p, m, g, r)."""
    if r == 1 or 2 * g + max(r - 1, 0) < m:
        return False
    # Z_2 has a single nonzero element, so the branch images sum to r mod 2
    return not (p == 2 and m == 1 and r % 2)


def random_action_data(rng: random.Random, p: int, m: int, g: int, r: int, max_tries: int = 1000) -> ActionData:
    """
    Random valid datum; the last branch image is fixed by the sum condition.

    Raises:
        ValueError: if no datum with these parameters exists, or none was hit in max_tries.
    """
    if not is_realizable(p, m, g, r):
        raise ValueError(f"No valid datum exists for p={p} m={m} g={g} r={r}")
    vectors = nonzero_vectors(p, m)
    for _ in range(max_tries):
        alpha = tuple(tuple(rng.randrange(p) for _ in range(m)) for _ in range(g))
        beta = tuple(tuple(rng.randrange(p) for _ in range(m)) for _ in range(g))
        branch = [rng.choice(vectors) for _ in range(r - 1)] if r else []
        if r:
            total = tuple(sum(col) % p for col in zip(*branch))
            last = vec_scale(total, -1, p)
            if not any(last):
                continue
            branch.append(last)
        a = ActionData(p, m, g, alpha, beta, tuple(branch))
        if a.is_valid():
            return a
    raise ValueError(f"No valid datum found for p={p} m={m} g={g} r={r} after {max_tries} tries")
