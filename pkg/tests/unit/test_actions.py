# tests/unit/test_actions.py
import logging

import pytest

# --- Импорты из тестируемой библиотеки ---
from zpm_actions.actions import ActionData, load_action_file, validate
from zpm_actions.fields import FpMatrix
from zpm_actions.symplectic import symplectic_generators
from zpm_actions.exceptions import (
    ActionFileError,
    ActionShapeError,
    BranchSumError,
    InvalidActionError,
    NotPrimeError,
    NotSurjectiveError,
    ZeroBranchImageError,
)


# --- Конец импортов ---

HYPERELLIPTIC_DICT = {
    "p": 2,
    "m": 1,
    "g": 0,
    "alpha_images": [],
    "beta_images": [],
    "branch_images": [[1]] * 6,
}


def test_validate_smallest_datum():
    validate(ActionData(2, 1, 0, branch_images=((1,), (1,))))


def test_validate_branch_sum():
    with pytest.raises(BranchSumError) as excinfo:
        validate(ActionData(2, 1, 0, branch_images=((1,),)))
    assert excinfo.value.total == (1,)
    assert isinstance(excinfo.value, InvalidActionError)


def test_validate_not_surjective():
    a = ActionData(2, 2, 1, alpha_images=((1, 0),), beta_images=((0, 0),))
    with pytest.raises(NotSurjectiveError) as excinfo:
        a.validate()
    assert excinfo.value.rank == 1
    assert not a.is_valid()


def test_validate_zero_branch_image():
    with pytest.raises(ZeroBranchImageError) as excinfo:
        ActionData(3, 1, 0, branch_images=((1,), (0,), (2,))).validate()
    assert excinfo.value.index == 1


def test_validate_non_prime():
    with pytest.raises(NotPrimeError):
        ActionData(4, 1, 0, branch_images=((1,), (3,))).validate()


def test_shape_errors_name_the_field():
    with pytest.raises(ActionShapeError) as excinfo:
        ActionData(2, 2, 1, alpha_images=((1, 0),), beta_images=((0,),))
    assert excinfo.value.field_name == "beta_images"
    with pytest.raises(ActionShapeError) as excinfo:
        ActionData(2, 1, 2, alpha_images=((1,),), beta_images=((1,), (0,)))
    assert excinfo.value.field_name == "alpha_images"
    with pytest.raises(ActionShapeError) as excinfo:
        ActionData(3, 1, 0, branch_images=((3,), (0,)))
    assert "outside [0, 3)" in str(excinfo.value)
    with pytest.raises(ActionShapeError) as excinfo:
        ActionData(3, 0, 0)
    assert excinfo.value.field_name == "m"


def test_from_dict_to_dict():
    a = ActionData.from_dict(HYPERELLIPTIC_DICT)
    assert a.r == 6
    assert a.branch_images == ((1,),) * 6
    assert a.to_dict() == HYPERELLIPTIC_DICT


def test_from_dict_missing_and_unknown_fields(caplog):
    with pytest.raises(ActionShapeError) as excinfo:
        ActionData.from_dict({"p": 2, "m": 1})
    assert excinfo.value.field_name == "g"
    with pytest.raises(ActionShapeError):
        ActionData.from_dict({"p": "two", "m": 1, "g": 0})
    with caplog.at_level(logging.WARNING):
        a = ActionData.from_dict(dict(HYPERELLIPTIC_DICT, comment="genus 2"))
    assert a.p == 2
    assert "comment" in caplog.text


def test_theta_matrix_column_order():
    a = ActionData(5, 2, 2, alpha_images=((1, 0), (2, 0)), beta_images=((0, 3), (0, 4)))
    assert a.handle_columns == [(1, 0), (2, 0), (0, 4), (0, 3)]
    theta = a.theta_matrix()
    assert (theta.rows, theta.cols) == (2, 4)
    assert a.with_handles(theta) == a


# --- Moves ---

def test_symplectic_move():
    a = ActionData(3, 2, 1, alpha_images=((1, 0),), beta_images=((0, 1),))
    assert a.apply_symplectic(FpMatrix.identity(3, 2)) == a
    moved = [a.apply_symplectic(T) for T in symplectic_generators(3, 1)]
    assert all(b.is_valid() for b in moved)
    assert any(b != a for b in moved)


def test_twist_and_permutation():
    a = ActionData(3, 2, 1, alpha_images=((1, 0),), beta_images=((0, 0),),
                   branch_images=((0, 1), (0, 2)))
    twisted = a.twist(0, 0, "alpha")
    assert twisted.alpha_images == ((1, 1),)
    assert a.twist(0, 1, "beta", sign=-1).beta_images == ((0, 1),)
    swapped = a.permute_branches([1, 0])
    assert swapped.branch_images == ((0, 2), (0, 1))
    assert swapped.canonical() == a.canonical()
    with pytest.raises(ValueError):
        a.permute_branches([0, 0])
    with pytest.raises(ValueError):
        a.twist(0, 0, "gamma")


def test_automorphism_move():
    a = ActionData(3, 1, 0, branch_images=((1,), (1,), (1,)))
    b = a.apply_automorphism(FpMatrix.from_rows(3, [[2]]))
    assert b.branch_images == ((2,), (2,), (2,))
    assert b.is_valid()


# --- Files ---

def test_load_action_file(fixture_path):
    a = load_action_file(fixture_path("hyperelliptic.json"))
    assert a == ActionData.from_dict(HYPERELLIPTIC_DICT)


def test_load_broken_json(fixture_path):
    with pytest.raises(ActionFileError) as excinfo:
        load_action_file(fixture_path("broken.json"))
    assert excinfo.value.line == 5
    assert "broken.json:5" in str(excinfo.value)


def test_load_bad_vector_length(fixture_path):
    with pytest.raises(ActionFileError) as excinfo:
        load_action_file(fixture_path("bad_vector_length.json"))
    assert "branch_images" in str(excinfo.value)
    assert excinfo.value.line == 7


def test_load_invalid_datum(fixture_path):
    path = fixture_path("not_surjective.json")
    with pytest.raises(NotSurjectiveError):
        load_action_file(path)
    assert load_action_file(path, check=False).g == 1


def test_load_missing_file(tmp_path):
    with pytest.raises(ActionFileError):
        load_action_file(str(tmp_path / "absent.json"))
