# tests/unit/test_symplectic.py
import random

import pytest
from hypothesis import given, settings, strategies as st

# --- Импорты из тестируемой библиотеки ---
from zpm_actions.config import Limits
from zpm_actions.fields import FpMatrix, rank_of, unit_vector
from zpm_actions.symplectic import (
    AlternatingForm,
    extend_isometry,
    group_order,
    radical,
    random_symplectic,
    sp_group,
    standard_form,
    symplectic_basis,
    symplectic_generators,
    verify_reduction_surjectivity,
)
from zpm_actions.exceptions import (
    InstanceTooLargeError,
    NotAlternatingError,
    NotAnIsometryError,
)


# --- Конец импортов ---


def random_alternating(rng: random.Random, p: int, m: int) -> AlternatingForm:
    rows = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            x = rng.randrange(p)
            rows[i][j], rows[j][i] = x, (-x) % p
    return AlternatingForm.from_rows(p, rows, m)


def test_standard_form_layout():
    space = standard_form(3, 2)
    assert space.dim == 4
    assert space.form.to_rows() == [
        (0, 0, 0, 1),
        (0, 0, 1, 0),
        (0, 2, 0, 0),
        (2, 0, 0, 0),
    ]
    assert standard_form(5, 0).form.m == 0


def test_alternating_form_rejects_bad_gram():
    with pytest.raises(NotAlternatingError):
        AlternatingForm.from_rows(3, [[1, 0], [0, 0]])
    with pytest.raises(NotAlternatingError):
        AlternatingForm.from_rows(3, [[0, 1], [1, 0]])
    # над F_2 симметричная = кососимметричная
    assert AlternatingForm.from_rows(2, [[0, 1], [1, 0]]).rank == 2


def test_radical():
    basis, k = radical(AlternatingForm.zero(5, 3))
    assert k == 3
    assert len(basis) == 3
    assert radical(standard_form(3, 2).form)[1] == 0


def test_symplectic_basis_of_standard_form():
    basis = symplectic_basis(standard_form(2, 2).form)
    assert basis.a == (unit_vector(4, 0), unit_vector(4, 1))
    assert basis.b == (unit_vector(4, 3), unit_vector(4, 2))
    assert basis.k == 0


def test_symplectic_basis_of_degenerate_form():
    form = AlternatingForm.from_rows(3, [[0, 1, 2], [2, 0, 0], [1, 0, 0]])
    basis = symplectic_basis(form)
    assert basis.check(form)
    assert (basis.r, basis.s, basis.k) == (2, 1, 1)


@settings(max_examples=200)
@given(st.integers(0, 2 ** 32 - 1))
def test_symplectic_basis_property(seed):
    rng = random.Random(seed)
    p = rng.choice((2, 3, 5))
    form = random_alternating(rng, p, rng.randint(1, 6))
    basis = symplectic_basis(form)
    assert basis.check(form)
    assert 2 * basis.s == form.rank
    assert basis.k == basis.r - basis.s == radical(form)[1]


# --- Isometry extension ---

def test_extend_empty_is_identity():
    space = standard_form(3, 1)
    assert extend_isometry(space, [], []) == FpMatrix.identity(3, 2)


def test_extend_single_vector():
    space = standard_form(3, 1)
    M = extend_isometry(space, [(1, 0)], [(0, 1)])
    assert space.preserves_form(M)
    assert M.apply((1, 0)) == (0, 1)


def test_extend_with_psi():
    space = standard_form(2, 2)
    U = [unit_vector(4, 0), unit_vector(4, 1)]
    psi = FpMatrix.from_rows(2, [[0, 1], [1, 0]])  # psi(U_0) = V_1, psi(U_1) = V_0
    M = extend_isometry(space, U, U, psi)
    assert M.apply(U[0]) == U[1]
    assert M.apply(U[1]) == U[0]
    assert space.preserves_form(M)


def test_extend_rejects_non_isometry():
    space = standard_form(3, 1)
    e1, e2 = (1, 0), (0, 1)
    with pytest.raises(NotAnIsometryError):
        extend_isometry(space, [e1, e2], [e2, e1])  # (e1,e2)=1, (e2,e1)=2
    with pytest.raises(NotAnIsometryError):
        extend_isometry(space, [e1, e1], [e1, e1])  # dependent source
    with pytest.raises(NotAnIsometryError):
        extend_isometry(space, [e1], [(0, 0)])  # not injective
    with pytest.raises(NotAnIsometryError):
        extend_isometry(space, [e1], [e1, e2])


@settings(max_examples=100)
@given(st.integers(0, 2 ** 32 - 1))
def test_extend_isometry_property(seed):
    rng = random.Random(seed)
    p, g = rng.choice((2, 3)), rng.randint(1, 3)
    space = standard_form(p, g)
    n = 2 * g
    size = rng.randint(1, n)
    U = []
    while len(U) < size:
        v = tuple(rng.randrange(p) for _ in range(n))
        if rank_of(U + [v], p, n) > len(U):
            U.append(v)
    target = random_symplectic(rng, p, g)
    V = [target.apply(u) for u in U]
    M = extend_isometry(space, U, V)
    assert space.preserves_form(M)
    assert [M.apply(u) for u in U] == V


# --- Groups ---

def test_group_order_formula():
    assert group_order(2, 1) == 6
    assert group_order(3, 1) == 24
    assert group_order(2, 2) == 720
    assert group_order(7, 0) == 1


def test_sp_group_small():
    group = sp_group(2, 1)
    assert len(group) == 6
    space = standard_form(2, 1)
    assert all(space.preserves_form(M) for M in group)
    assert len(sp_group(3, 1)) == 24


def test_generators_preserve_form():
    space = standard_form(3, 2)
    gens = symplectic_generators(3, 2)
    assert gens
    assert all(space.preserves_form(T) for T in gens)
    assert len(set(gens)) == len(gens)


@pytest.mark.parametrize("p, g, order", [(2, 1, 6), (3, 1, 24), (2, 2, 720)])
def test_reduction_is_onto(p, g, order):
    report = verify_reduction_surjectivity(p, g)
    assert report.ok
    assert report.generated_order == report.full_order == report.formula_order == order


def test_group_guards():
    with pytest.raises(InstanceTooLargeError) as excinfo:
        sp_group(3, 2)  # 3^16 candidates
    assert excinfo.value.key == "max_candidates"
    with pytest.raises(InstanceTooLargeError) as excinfo:
        verify_reduction_surjectivity(2, 1, Limits(max_group_order=5))
    assert "instance too large" in str(excinfo.value)
