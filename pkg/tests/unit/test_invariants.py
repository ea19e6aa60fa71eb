# tests/unit/test_invariants.py
import random
import time

import pytest
from hypothesis import given, settings, strategies as st

# --- Импорты из тестируемой библиотеки ---
from zpm_actions.actions import ActionData
from zpm_actions.fields import FpMatrix
from zpm_actions.invariants import (
    canonical_multiset,
    first_difference,
    general_linear,
    general_linear_matrices,
    induced_form,
    multiset_signature,
    signature_hash,
    strong_invariant,
    strongly_equivalent,
    total_genus,
    weak_invariant,
    weakly_equivalent,
)
from zpm_actions.config import Limits
from zpm_actions.oracle import is_realizable, random_action_data
from zpm_actions.symplectic import random_symplectic
from zpm_actions.exceptions import ActionMismatchError, BranchSumError


# --- Конец импортов ---


def handles(p: int, u, v) -> ActionData:
    return ActionData(p, len(u[0]), len(u), alpha_images=tuple(u), beta_images=tuple(v))


# --- Induced form ---

@pytest.mark.parametrize("p", [2, 3, 5])
def test_induced_form_dual_pair(p):
    induced = induced_form(handles(p, [(1, 0)], [(0, 1)]))
    assert induced.form.to_rows() == [(0, 1), (p - 1, 0)]
    assert induced.k == 0


def test_induced_form_isotropic_handles():
    induced = induced_form(handles(3, [(1, 0), (0, 1)], [(0, 0), (0, 0)]))
    assert induced.form.to_rows() == [(0, 0), (0, 0)]
    assert induced.k == 2


def test_induced_form_on_annihilator():
    a = ActionData(2, 2, 1, alpha_images=((1, 0),), beta_images=((0, 0),), branch_images=((0, 1), (0, 1)))
    induced = induced_form(a)
    assert induced.ann_basis == ((1, 0),)
    assert induced.form.to_rows() == [(0,)]
    assert induced.k == 1


def test_induced_form_propagates_validation():
    with pytest.raises(BranchSumError):
        induced_form(ActionData(2, 1, 0, branch_images=((1,),)))


# --- Genus ---

def test_total_genus():
    assert total_genus(ActionData(2, 1, 0, branch_images=((1,),) * 6)) == 2
    assert total_genus(ActionData(3, 1, 0, branch_images=((1,),) * 3)) == 1
    assert total_genus(handles(2, [(1,), (0,)], [(0,), (0,)])) == 3
    assert total_genus(handles(3, [(1, 0)], [(0, 1)])) == 1


# --- Strong invariant ---

def test_strong_invariant_free_case():
    inv = strong_invariant(handles(3, [(1, 0)], [(0, 1)]))
    assert inv.branch_multiset == ()
    assert inv.gfix_basis == ()
    assert inv.ann_basis == ((1, 0), (0, 1))
    assert inv.gram == ((0, 1), (2, 0))
    assert (inv.g, inv.g_total, inv.k, inv.n) == (1, 1, 0, 0)


def test_strong_invariant_hyperelliptic_pair():
    inv = strong_invariant(ActionData(2, 1, 0, branch_images=((1,), (1,))))
    assert inv.n == 1
    assert inv.ann_basis == ()
    assert inv.gram == ()
    assert inv.k == 0
    assert inv.g_total == 0


def test_strong_invariant_sorts_branches():
    a = ActionData(3, 2, 0, branch_images=((0, 1), (1, 0), (2, 2)))
    b = a.permute_branches([2, 0, 1])
    assert strong_invariant(a) == strong_invariant(b)
    assert strong_invariant(a).branch_multiset == ((0, 1), (1, 0), (2, 2))


def test_swapped_handles():
    a = handles(3, [(1, 0)], [(0, 1)])
    b = handles(3, [(0, 1)], [(1, 0)])
    assert strongly_equivalent(a, a)
    assert not strongly_equivalent(a, b)
    assert first_difference(strong_invariant(a), strong_invariant(b)) == "gram"
    assert weakly_equivalent(a, b)
    # над F_2 формы совпадают
    assert strongly_equivalent(handles(2, [(1, 0)], [(0, 1)]), handles(2, [(0, 1)], [(1, 0)]))


def test_mismatched_groups():
    with pytest.raises(ActionMismatchError):
        strongly_equivalent(handles(3, [(1, 0)], [(0, 1)]), ActionData(2, 1, 0, branch_images=((1,), (1,))))
    with pytest.raises(ActionMismatchError):
        weakly_equivalent(handles(3, [(1, 0)], [(0, 1)]), ActionData(3, 1, 0, branch_images=((1,), (2,))))


# --- Weak invariant ---

def test_weak_invariant_free():
    inv = weak_invariant(handles(3, [(1, 0)], [(0, 1)]))
    assert (inv.k, inv.g, inv.n, inv.canonical_multiset) == (0, 1, 0, ())


def test_weak_invariant_scaled_branches():
    inv = weak_invariant(ActionData(3, 1, 0, branch_images=((2,), (2,), (2,))))
    assert inv.canonical_multiset == ((1,), (1,), (1,))
    assert inv.n == 1


def test_weakly_equivalent_different_r():
    a = ActionData(2, 1, 0, branch_images=((1,),) * 2)
    b = ActionData(2, 1, 0, branch_images=((1,),) * 4)
    assert not weakly_equivalent(a, b)
    assert weakly_equivalent(a, a)


# --- Canonical forms ---

def test_general_linear_orders():
    assert len(general_linear(1, 3)) == 2
    assert len(general_linear(2, 2)) == 6
    assert len(general_linear(2, 3)) == 48
    assert all(M.rank == 2 for M in general_linear_matrices(2, 2))


def test_canonical_multiset_examples():
    assert canonical_multiset([(2,), (2,), (2,)], 3, 1) == ((1,), (1,), (1,))
    assert canonical_multiset([(1, 0), (0, 1), (1, 1)], 2, 2) == ((0, 1), (1, 0), (1, 1))
    assert canonical_multiset([], 5, 2) == ()
    # одномерный span внутри F_3^2 записывается в F_3^1
    assert canonical_multiset([(0, 2), (0, 2), (0, 2)], 3, 2) == ((1,), (1,), (1,))


def test_canonical_multiset_is_orbit_invariant():
    branch = [(1, 0), (1, 0), (0, 1), (2, 2)]
    expected = canonical_multiset(branch, 3, 2)
    for gamma in general_linear_matrices(2, 3):
        assert canonical_multiset([gamma.apply(c) for c in branch], 3, 2) == expected


def test_multiset_signature():
    assert multiset_signature([(1,), (1,)], 2, 1) == {(1,): (2,)}
    assert multiset_signature([(1,)] * 3, 3, 1) == {(1,): (3, 0), (2,): (0, 3)}
    # нулевые сигнатуры не хранятся
    assert multiset_signature([], 3, 2) == {}
    assert multiset_signature([(1, 2)], 3, 2) == {(1, 2): (1, 0), (2, 1): (0, 1)}


def test_multiset_signature_visits_only_branch_lines():
    branch = [(1, 2, 3), (100, 99, 98)]
    started = time.perf_counter()
    signature = multiset_signature(branch, 101, 3)
    assert len(signature) == 100
    assert signature[(1, 2, 3)][0] == 1
    assert signature[(1, 2, 3)][-1] == 1
    assert len(signature_hash(branch, 101, 3)) == 100
    assert time.perf_counter() - started < 5


def test_signature_hash_invariant_under_automorphisms():
    branch = [(1, 0), (2, 0), (0, 1), (0, 2)]
    gamma = FpMatrix.from_rows(3, [[1, 1], [0, 1]])
    assert signature_hash(branch, 3, 2) == signature_hash([gamma.apply(c) for c in branch], 3, 2)
    assert signature_hash(branch, 3, 2) != signature_hash([(1, 0), (1, 0), (1, 0), (0, 1), (0, 2)], 3, 2)


# --- Properties ---

def _sample(rng: random.Random) -> ActionData:
    while True:
        p, m, g = rng.choice((2, 3)), rng.randint(1, 3), rng.randint(0, 2)
        r = rng.choice((0, 2, 3, 4))
        if is_realizable(p, m, g, r):
            return random_action_data(rng, p, m, g, r)


@settings(max_examples=100)
@given(st.integers(0, 2 ** 32 - 1))
def test_strong_invariant_survives_recoordinatisation(seed):
    rng = random.Random(seed)
    a = _sample(rng)
    moved = a
    if a.g:
        moved = moved.apply_symplectic(random_symplectic(rng, a.p, a.g))
        for _ in range(3 if a.r else 0):
            moved = moved.twist(rng.randrange(a.g), rng.randrange(a.r), rng.choice(("alpha", "beta")))
    order = list(range(a.r))
    rng.shuffle(order)
    moved = moved.permute_branches(order)
    assert strong_invariant(moved) == strong_invariant(a)


@settings(max_examples=50)
@given(st.integers(0, 2 ** 32 - 1))
def test_weak_invariant_survives_automorphisms(seed):
    rng = random.Random(seed)
    a = _sample(rng)
    while True:
        gamma = FpMatrix(a.p, a.m, a.m, tuple(rng.randrange(a.p) for _ in range(a.m * a.m)))
        if gamma.rank == a.m:
            break
    b = a.apply_automorphism(gamma)
    assert weak_invariant(a) == weak_invariant(b)
    assert weakly_equivalent(a, b)


@settings(max_examples=50)
@given(st.integers(0, 2 ** 32 - 1))
def test_strong_implies_weak(seed):
    rng = random.Random(seed)
    a = _sample(rng)
    b = a.apply_symplectic(random_symplectic(rng, a.p, a.g)) if a.g else a
    assert strongly_equivalent(a, b)
    assert weakly_equivalent(a, b)


# --- Canonical search beyond the GL scan ---

SEARCH_ONLY = Limits(max_group_order=1)


def test_canonical_multiset_large_groups():
    a = ActionData(7, 3, 0, branch_images=((1, 0, 0), (0, 1, 0), (0, 0, 1), (6, 6, 6)))
    assert weak_invariant(a).canonical_multiset == ((0, 0, 1), (0, 1, 0), (1, 0, 0), (6, 6, 6))
    b = ActionData(37, 2, 0, branch_images=((1, 0), (0, 1), (36, 36)))
    assert weak_invariant(b).canonical_multiset == ((0, 1), (1, 0), (36, 36))
    # любые три попарно независимых вектора с нулевой суммой эквивалентны
    c = ActionData(37, 2, 0, branch_images=((5, 0), (0, 7), (32, 30)))
    assert weakly_equivalent(b, c)


def test_canonical_search_scalar_case():
    # 3·(2, 2, 1) = (1, 1, 3) лексикографически меньше
    assert canonical_multiset([(2,), (2,), (1,)], 5, 1, SEARCH_ONLY) == ((1,), (1,), (3,))
    assert canonical_multiset([(2,), (2,), (1,)], 5, 1) == ((1,), (1,), (3,))


@settings(max_examples=150)
@given(st.integers(0, 2 ** 32 - 1))
def test_canonical_search_matches_group_scan(seed):
    rng = random.Random(seed)
    p, m = rng.choice(((2, 3), (3, 2), (5, 2), (3, 3)))
    r = rng.randint(1, 6)
    branch = [tuple(rng.randrange(p) for _ in range(m)) for _ in range(r)]
    branch = [c for c in branch if any(c)] or [(1,) + (0,) * (m - 1)]
    assert canonical_multiset(branch, p, m, SEARCH_ONLY) == canonical_multiset(branch, p, m)
