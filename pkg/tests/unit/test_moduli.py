# tests/unit/test_moduli.py
import pytest

# --- Импорты из тестируемой библиотеки ---
from zpm_actions.config import Limits
from zpm_actions.invariants import induced_form, total_genus, weak_invariant
from zpm_actions.moduli import (
    admissible_k,
    construct_action,
    count_branch_candidates,
    enumerate_free_classes,
    enumerate_weak_classes,
)
from zpm_actions.exceptions import AdmissibilityError, InstanceTooLargeError


# --- Конец импортов ---


# --- construct_action ---

def test_construct_torus_action():
    a = construct_action(3, 1, 0, 0, [[1], [1], [1]])
    a.validate()
    assert total_genus(a) == 1


def test_construct_free_pair():
    a = construct_action(2, 2, 0, 1, [])
    assert a.alpha_images == ((1, 0),)
    assert a.beta_images == ((0, 1),)
    assert induced_form(a).k == 0


def test_construct_radical_and_zero_fill():
    a = construct_action(3, 3, 1, 3, [])
    assert a.alpha_images == ((1, 0, 0), (0, 0, 1), (0, 0, 0))
    assert a.beta_images == ((0, 1, 0), (0, 0, 0), (0, 0, 0))
    assert induced_form(a).k == 1


def test_construct_pads_short_vectors():
    a = construct_action(3, 2, 1, 1, [[1], [2]])
    assert a.branch_images == ((1, 0), (2, 0))
    inv = weak_invariant(a)
    assert (inv.k, inv.g, inv.n, inv.canonical_multiset) == (1, 1, 1, ((1,), (2,)))


@pytest.mark.parametrize("args, inequality", [
    ((2, 3, 1, 1, []), "g >= (m-n+k)/2"),
    ((3, 1, 0, 0, [[1], [1]]), "sum(C) == 0"),
    ((3, 1, 0, 0, [[1], [0], [2]]), "C_j != 0"),
    ((2, 2, 1, 2, []), "k = (m-n) mod 2"),
    ((2, 2, 4, 5, []), "k <= m-n"),
    ((2, 2, -2, 5, []), "k >= 0"),
])
def test_construct_names_violated_inequality(args, inequality):
    with pytest.raises(AdmissibilityError) as excinfo:
        construct_action(*args)
    assert excinfo.value.inequality == inequality
    assert f"{inequality} violated" in str(excinfo.value)


# --- Free classes ---

def test_enumerate_free_classes():
    assert enumerate_free_classes(2, 2) == [(0, 2), (2, 2)]
    assert enumerate_free_classes(1, 1) == [(1, 1)]
    assert enumerate_free_classes(3, 1) == []


def test_enumerate_free_classes_genus_range():
    assert enumerate_free_classes(2, 0, g_max=2) == [(0, 1), (0, 2), (2, 2)]


def test_admissible_k():
    assert admissible_k(3, 1, 1) == [0]
    assert admissible_k(3, 0, 1) == []
    assert admissible_k(4, 0, 4) == [0, 2, 4]


# --- Weak classes ---

def test_weak_classes_p3_sphere():
    classes = enumerate_weak_classes(3, 1, 0, 3)
    assert [c.canonical_multiset for c in classes] == [((1,), (2,)), ((1,), (1,), (1,))]
    assert all((c.k, c.g, c.n) == (0, 0, 1) for c in classes)


def test_weak_classes_free_only():
    classes = enumerate_weak_classes(2, 2, 2, 0)
    assert [(c.k, c.g, c.n, c.r) for c in classes] == [(0, 2, 0, 0), (2, 2, 0, 0)]


def test_weak_classes_parity_excludes_odd_r():
    classes = enumerate_weak_classes(2, 1, 0, 3)
    assert len(classes) == 1
    assert classes[0].canonical_multiset == ((1,), (1,))


def test_weak_classes_empty():
    assert enumerate_weak_classes(2, 3, 1, 0) == []


def test_weak_classes_rank_two_branching():
    classes = enumerate_weak_classes(2, 2, 0, 4)
    # [(0,1),(1,0),(1,1)] и единственная орбита из четырёх векторов, порождающих F_2^2
    assert [c.canonical_multiset for c in classes if c.n == 2] == [
        ((0, 1), (1, 0), (1, 1)),
        ((0, 1), (0, 1), (1, 0), (1, 0)),
    ]


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("m, g", [(1, 1), (2, 2), (3, 1), (3, 3), (4, 3)])
def test_free_classification_independent_of_p(p, m, g):
    ks = {c.k for c in enumerate_weak_classes(p, m, g, 0)}
    assert len(ks) == len(enumerate_free_classes(m, g))


def test_enumeration_guard():
    assert count_branch_candidates(3, 1, 3) == 3 + 4
    with pytest.raises(InstanceTooLargeError) as excinfo:
        enumerate_weak_classes(3, 2, 0, 6, Limits(max_candidates=100))
    assert excinfo.value.key == "max_candidates"


def test_genus_range():
    classes = enumerate_weak_classes(2, 2, 1, 2, g_max=2)
    assert {c.g for c in classes} == {1, 2}
    assert classes == sorted(classes, key=lambda c: c.sort_key())


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_construct_classify_round_trip(p, m):
    for g in range(4):
        for cls in enumerate_weak_classes(p, m, g, 4):
            a = construct_action(p, m, cls.k, cls.g, cls.canonical_multiset)
            assert weak_invariant(a) == cls
