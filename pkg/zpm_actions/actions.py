# zpm_actions/actions.py
"""
Monodromy data of a Z_p^m action and the moves that recoordinatise it.

An action is described by the images of the quotient's handle generators A_i, B_i and of the
small loops X_j around branch points under the monodromy epimorphism onto G = F_p^m.
"""
import json
import logging
import os
import typing
from dataclasses import dataclass, fields

from zpm_actions.config import safe_int
from zpm_actions.exceptions import (
    ActionShapeError,
    ActionFileError,
    BranchSumError,
    DimensionMismatchError,
    NotSurjectiveError,
    ZeroBranchImageError,
)
from zpm_actions.fields import FpMatrix, Vector, check_prime, rank_of, vec_add, vec_scale

logger = logging.getLogger(__name__)

VectorBlock = typing.Tuple[Vector, ...]


def _check_block(name: str, block: typing.Any, p: int, m: int, count: typing.Optional[int] = None) -> VectorBlock:
    if not isinstance(block, (list, tuple)):
        raise ActionShapeError(name, "expected a list of vectors")
    if count is not None and len(block) != count:
        raise ActionShapeError(name, f"expected {count} vectors (one per handle), got {len(block)}")
    checked = []
    for idx, vector in enumerate(block):
        if not isinstance(vector, (list, tuple)):
            raise ActionShapeError(name, f"entry {idx} is not a vector")
        if len(vector) != m:
            raise ActionShapeError(name, f"vector {idx} has length {len(vector)}, expected m={m}")
        for x in vector:
            if isinstance(x, bool) or not isinstance(x, int):
                raise ActionShapeError(name, f"vector {idx} has a non-integer entry {x!r}")
            if not 0 <= x < p:
                raise ActionShapeError(name, f"vector {idx} has entry {x} outside [0, {p})")
        checked.append(tuple(vector))
    return tuple(checked)


@dataclass(frozen=True)
class ActionData:
    """Monodromy description: u_i = θ(A_i), v_i = θ(B_i), c_j = θ(X_j) in F_p^m."""
    p: int
    m: int
    g: int
    alpha_images: VectorBlock = ()
    beta_images: VectorBlock = ()
    branch_images: VectorBlock = ()

    def __post_init__(self):
        for name in ("p", "m", "g"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ActionShapeError(name, f"expected an integer, got {value!r}")
        if self.p < 2:
            raise ActionShapeError("p", f"expected a prime, got {self.p}")
        if self.m < 1:
            raise ActionShapeError("m", f"rank must be at least 1, got {self.m}")
        if self.g < 0:
            raise ActionShapeError("g", f"quotient genus must be nonnegative, got {self.g}")
        # frozen: normalise lists to tuples through object.__setattr__
        object.__setattr__(self, "alpha_images", _check_block("alpha_images", self.alpha_images, self.p, self.m, self.g))
        object.__setattr__(self, "beta_images", _check_block("beta_images", self.beta_images, self.p, self.m, self.g))
        object.__setattr__(self, "branch_images", _check_block("branch_images", self.branch_images, self.p, self.m))

    # --- Calculated / Helper Properties ---
    @property
    def r(self) -> int:
        return len(self.branch_images)

    @property
    def order(self) -> int:
        return self.p ** self.m

    @property
    def images(self) -> typing.List[Vector]:
        return list(self.alpha_images) + list(self.beta_images) + list(self.branch_images)

    @property
    def handle_columns(self) -> typing.List[Vector]:
        """Columns u_1..u_g, v_g..v_1, matching the standard symplectic coordinates."""
        return list(self.alpha_images) + list(reversed(self.beta_images))

    def theta_matrix(self) -> FpMatrix:
        """m x 2g matrix of the monodromy restricted to the handle block."""
        return FpMatrix.from_columns(self.p, self.handle_columns, rows=self.m)

    def with_handles(self, theta: FpMatrix) -> 'ActionData':
        if theta.rows != self.m or theta.cols != 2 * self.g:
            raise DimensionMismatchError(f"Handle matrix must be {self.m}x{2 * self.g}, got {theta.rows}x{theta.cols}")
        columns = theta.to_columns()
        return ActionData(self.p, self.m, self.g, tuple(columns[:self.g]), tuple(reversed(columns[self.g:])),
                          self.branch_images)

    def canonical(self) -> 'ActionData':
        """Same datum with the branch block sorted; branch labels carry no information."""
        return ActionData(self.p, self.m, self.g, self.alpha_images, self.beta_images,
                          tuple(sorted(self.branch_images)))

    def sort_key(self) -> tuple:
        a = self.canonical()
        return a.p, a.m, a.g, a.r, a.alpha_images, a.beta_images, a.branch_images

    # --- Moves ---
    def apply_symplectic(self, M: FpMatrix) -> 'ActionData':
        """Handle block recoordinatised by a quotient homeomorphism acting on homology: Θ ↦ Θ·M."""
        n = 2 * self.g
        if M.rows != n or M.cols != n or M.p != self.p:
            raise DimensionMismatchError(f"Expected a {n}x{n} matrix over F_{self.p}")
        return self.with_handles(self.theta_matrix() @ M)

    def twist(self, handle: int, branch: int, side: str = "alpha", sign: int = 1) -> 'ActionData':
        """Dehn twist around a branch point: u_i ← u_i ± c_j (side='alpha') or v_i ← v_i ± c_j."""
        if not 0 <= handle < self.g or not 0 <= branch < self.r:
            raise IndexError(f"No handle {handle} / branch {branch} in a datum with g={self.g}, r={self.r}")
        shift = vec_scale(self.branch_images[branch], sign, self.p)
        if side == "alpha":
            alpha = list(self.alpha_images)
            alpha[handle] = vec_add(alpha[handle], shift, self.p)
            return ActionData(self.p, self.m, self.g, tuple(alpha), self.beta_images, self.branch_images)
        if side == "beta":
            beta = list(self.beta_images)
            beta[handle] = vec_add(beta[handle], shift, self.p)
            return ActionData(self.p, self.m, self.g, self.alpha_images, tuple(beta), self.branch_images)
        raise ValueError(f"side must be 'alpha' or 'beta', got {side!r}")

    def permute_branches(self, permutation: typing.Sequence[int]) -> 'ActionData':
        """Relabels branch points: new c_j = old c_{permutation[j]}."""
        if sorted(permutation) != list(range(self.r)):
            raise ValueError(f"Not a permutation of {self.r} branch labels: {list(permutation)}")
        return ActionData(self.p, self.m, self.g, self.alpha_images, self.beta_images,
                          tuple(self.branch_images[j] for j in permutation))

    def apply_automorphism(self, gamma: FpMatrix) -> 'ActionData':
        """Composes the monodromy with γ ∈ Aut(G), given as an invertible m x m matrix."""
        if gamma.rows != self.m or gamma.cols != self.m or gamma.p != self.p:
            raise DimensionMismatchError(f"Expected an {self.m}x{self.m} matrix over F_{self.p}")

        def image(block: VectorBlock) -> VectorBlock:
            return tuple(gamma.apply(v) for v in block)

        return ActionData(self.p, self.m, self.g, image(self.alpha_images), image(self.beta_images),
                          image(self.branch_images))

    # --- Validation ---
    def validate(self) -> None:
        """
        Checks that the data describe an action.

        Raises:
            NotPrimeError: p is not prime.
            ZeroBranchImageError: some c_j = 0 (that point is not a branch point).
            BranchSumError: Σ c_j != 0.
            NotSurjectiveError: the images do not span F_p^m.
        """
        check_prime(self.p)
        for idx, c in enumerate(self.branch_images):
            if not any(c):
                raise ZeroBranchImageError(idx)
        total = tuple(sum(col) % self.p for col in zip(*self.branch_images)) if self.branch_images \
            else (0,) * self.m
        if any(total):
            raise BranchSumError(total)
        rank = rank_of(self.images, self.p, self.m)
        if rank != self.m:
            raise NotSurjectiveError(rank, self.m)

    def is_valid(self) -> bool:
        try:
            self.validate()
        except (ZeroBranchImageError, BranchSumError, NotSurjectiveError):
            return False
        return True

    # --- Serialization ---
    @classmethod
    def from_dict(cls, data: dict) -> 'ActionData':
        """Creates ActionData from the JSON file layout, ignoring unknown keys."""
        if not isinstance(data, dict):
            raise ActionShapeError("<root>", "expected a JSON object")
        known_fields = {f.name for f in fields(cls)}
        for key in data:
            if key not in known_fields:
                logger.warning("Warning: Ignoring unknown action field '%s'", key)
        values = {}
        for name in ("p", "m", "g"):
            if name not in data:
                raise ActionShapeError(name, "missing required field")
            raw = data[name]
            value = safe_int(raw) if not isinstance(raw, bool) else None
            if value is None or value != raw:
                raise ActionShapeError(name, f"expected an integer, got {raw!r}")
            values[name] = value
        for name in ("alpha_images", "beta_images", "branch_images"):
            values[name] = data.get(name, [])
        return cls(**values)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "g": self.g,
            "alpha_images": [list(v) for v in self.alpha_images],
            "beta_images": [list(v) for v in self.beta_images],
            "branch_images": [list(v) for v in self.branch_images],
        }


def validate(a: ActionData) -> None:
    a.validate()


def _line_of_key(text: str, key: str) -> typing.Optional[int]:
    needle = f'"{key}"'
    for lineno, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return lineno
    return None


def load_action_file(path: str, check: bool = True) -> ActionData:
    """
    Reads an ActionData JSON file.

    Args:
        path: File to read.
        check: Also run validate() on the parsed datum.

    Raises:
        ActionFileError: unreadable file, malformed JSON, or a field of the wrong shape
            (the message carries the line of the offending field).
        InvalidActionError, NotPrimeError: the datum parses but does not describe an action.
    """
    if not os.path.isfile(path):
        raise ActionFileError(path, "File not found")
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ActionFileError(path, e, line=e.lineno, text=text) from e
    try:
        action = ActionData.from_dict(data)
    except ActionShapeError as e:
        raise ActionFileError(path, e, line=_line_of_key(text, e.field_name), text=text) from e
    if check:
        action.validate()
    logger.debug("Loaded action from %s: p=%d m=%d g=%d r=%d", path, action.p, action.m, action.g, action.r)
    return action
