# zpm_actions/selfcheck.py
"""
Self-check suite: named checks run sequentially with status tracking, like a job queue.
"""
import logging
import random
import typing
from collections import deque
from dataclasses import dataclass, field

from zpm_actions.config import Limits, DEFAULT_LIMITS
from zpm_actions.exceptions import SurfaceActionError
from zpm_actions.fields import rank_of
from zpm_actions.invariants import strong_invariant, total_genus, weak_invariant
from zpm_actions.moduli import construct_action, enumerate_free_classes, enumerate_weak_classes
from zpm_actions.oracle import build_cover, cover_genus, cross_validate, is_realizable, random_action_data
from zpm_actions.symplectic import (
    AlternatingForm,
    extend_isometry,
    random_symplectic,
    standard_form,
    symplectic_basis,
    verify_reduction_surjectivity,
)

logger = logging.getLogger(__name__)

LEVELS = ("quick", "full")


class CheckFailed(AssertionError):
    pass


def _expect(condition: bool, message: str):
    if not condition:
        raise CheckFailed(message)


@dataclass
class CheckJob:
    """A single named check in the run queue."""
    name: str
    func: typing.Callable[[], str]
    level: str = "quick"

    # Internal state, not meant to be set directly by user
    status: str = field(default="pending", init=False)  # pending, running, passed, failed, cancelled
    detail: str = field(default="", init=False)
    error: typing.Optional[BaseException] = field(default=None, init=False, repr=False)

    def to_dict(self) -> dict:
        return {"name": self.name, "level": self.level, "status": self.status, "detail": self.detail}


class SelfCheckRunner:
    """Runs queued checks one after another and keeps their final statuses."""

    def __init__(
            self,
            on_check_start: typing.Optional[typing.Callable[[int, CheckJob], None]] = None,
            on_check_complete: typing.Optional[typing.Callable[[int, CheckJob], None]] = None,
    ):
        self._pending: deque[CheckJob] = deque()
        self._processed: typing.List[CheckJob] = []
        self.on_check_start = on_check_start
        self.on_check_complete = on_check_complete

    def add_check(self, name: str, func: typing.Callable[[], str], level: str = "quick") -> CheckJob:
        job = CheckJob(name=name, func=func, level=level)
        self._pending.append(job)
        return job

    def _notify(self, callback, index: int, job: CheckJob):
        if callback:
            try:
                callback(index, job)
            except Exception as cb_err:
                logger.warning("Warning: check callback for '%s' failed: %s", job.name, cb_err)

    def run(self, stop_on_error: bool = False) -> typing.List[CheckJob]:
        """
        Runs every pending check.

        Args:
            stop_on_error: If True, checks after the first failure are marked cancelled.
        """
        self._processed.clear()
        logger.info("Running %d check(s). Stop on error: %s", len(self._pending), stop_on_error)
        stop = False
        index = 0
        while self._pending:
            job = self._pending.popleft()
            self._processed.append(job)
            if stop:
                job.status = "cancelled"
                job.detail = "not run after an earlier failure"
                self._notify(self.on_check_complete, index, job)
                index += 1
                continue
            self._notify(self.on_check_start, index, job)
            job.status = "running"
            try:
                job.detail = job.func() or ""
                job.status = "passed"
            except (CheckFailed, SurfaceActionError) as e:
                job.status = "failed"
                job.error = e
                job.detail = str(e)
            except Exception as e:  # Catch-all for unexpected issues
                job.status = "failed"
                job.error = e
                job.detail = f"unexpected {type(e).__name__}: {e}"
            if job.status == "failed":
                logger.warning("Warning: check '%s' failed: %s", job.name, job.detail)
                stop = stop_on_error
            self._notify(self.on_check_complete, index, job)
            index += 1
        logger.info("Self-check finished. Processed %d check(s).", len(self._processed))
        return list(self._processed)

    def get_processed_checks(self) -> typing.List[CheckJob]:
        return list(self._processed)

    @property
    def pending_check_count(self) -> int:
        return len(self._pending)


# --- Checks ---

def _random_alternating(rng: random.Random, p: int, m: int) -> AlternatingForm:
    rows = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            x = rng.randrange(p)
            rows[i][j] = x
            rows[j][i] = (-x) % p
    return AlternatingForm.from_rows(p, rows, m)


def check_surjectivity(p: int, g: int, expected: int, limits: Limits) -> typing.Callable[[], str]:
    def run() -> str:
        report = verify_reduction_surjectivity(p, g, limits)
        _expect(report.ok, f"generated {report.generated_order} of {report.full_order}")
        _expect(report.full_order == expected, f"|Sp({2 * g},F_{p})| = {report.full_order}, expected {expected}")
        return f"order {report.full_order}"
    return run


def check_free_classes() -> str:
    for (m, g), expected in {(2, 2): 2, (1, 1): 1, (3, 1): 0}.items():
        count = len(enumerate_free_classes(m, g))
        _expect(count == expected, f"m={m} g={g}: {count} classes, expected {expected}")
    return "m=2,g=2 -> 2; m=1,g=1 -> 1; m=3,g=1 -> 0"


def check_adapted_bases(rng: random.Random, samples: int) -> typing.Callable[[], str]:
    def run() -> str:
        for _ in range(samples):
            p = rng.choice((2, 3, 5))
            form = _random_alternating(rng, p, rng.randint(1, 6))
            basis = symplectic_basis(form)
            _expect(basis.check(form), f"adapted basis fails the Gram conditions for {form.to_rows()}")
            _expect(2 * basis.s == form.rank, f"2s != rank for {form.to_rows()}")
        return f"{samples} random forms"
    return run


def check_isometry_extension(rng: random.Random, samples: int, max_g: int) -> typing.Callable[[], str]:
    def run() -> str:
        for _ in range(samples):
            p, g = rng.choice((2, 3)), rng.randint(1, max_g)
            space = standard_form(p, g)
            n = 2 * g
            U = []
            size = rng.randint(1, n)
            while len(U) < size:
                v = tuple(rng.randrange(p) for _ in range(n))
                if rank_of(U + [v], p, n) > len(U):
                    U.append(v)
            M = random_symplectic(rng, p, g)
            V = [M.apply(u) for u in U]
            extended = extend_isometry(space, U, V)
            _expect(space.preserves_form(extended), "extension does not preserve the form")
            _expect(all(extended.apply(u) == v for u, v in zip(U, V)), "extension does not restrict correctly")
        return f"{samples} random partial isometries"
    return run


def check_riemann_hurwitz(rng: random.Random, samples: int, limits: Limits) -> typing.Callable[[], str]:
    def run() -> str:
        for _ in range(samples):
            a = _random_datum(rng)
            expected = total_genus(a)
            actual = cover_genus(build_cover(a, limits))
            _expect(expected == actual, f"total_genus {expected} != cover genus {actual} for {a.to_dict()}")
        return f"{samples} random covers"
    return run


def _random_datum(rng: random.Random):
    while True:
        p, m, g = rng.choice((2, 3)), rng.randint(1, 3), rng.randint(0, 2)
        r = rng.choice((0, 2, 3, 4))
        if is_realizable(p, m, g, r):
            return random_action_data(rng, p, m, g, r)


def check_invariance(rng: random.Random, samples: int) -> typing.Callable[[], str]:
    def run() -> str:
        for _ in range(samples):
            a = _random_datum(rng)
            moved = a
            if a.g:
                moved = moved.apply_symplectic(random_symplectic(rng, a.p, a.g))
                if a.r:
                    moved = moved.twist(rng.randrange(a.g), rng.randrange(a.r), rng.choice(("alpha", "beta")))
            order = list(range(a.r))
            rng.shuffle(order)
            moved = moved.permute_branches(order)
            _expect(strong_invariant(a) == strong_invariant(moved), f"strong invariant moved for {a.to_dict()}")
            _expect(weak_invariant(a) == weak_invariant(moved), f"weak invariant moved for {a.to_dict()}")
        return f"{samples} random recoordinatisations"
    return run


def check_oracle(p: int, m: int, g: int, r_max: int, mode: str, limits: Limits) -> typing.Callable[[], str]:
    def run() -> str:
        report = cross_validate(p, m, g, r_max, mode, limits)
        _expect(report.ok, f"counts disagree: {report.to_dict()}")
        return f"{report.orbit_count} {mode} classes"
    return run


def check_round_trip(limits: Limits) -> str:
    total = 0
    for p in (2, 3):
        for m in (1, 2, 3):
            for g in range(4):
                for cls in enumerate_weak_classes(p, m, g, 4, limits):
                    a = construct_action(p, m, cls.k, cls.g, cls.canonical_multiset)
                    _expect(weak_invariant(a, limits) == cls, f"construct/classify mismatch for {cls.to_dict()}")
                    total += 1
    return f"{total} admissible classes"


ORACLE_GRID = ((2, 1, 1, 0), (2, 2, 2, 0), (2, 1, 0, 4), (3, 1, 0, 3), (2, 2, 1, 2))


def _oracle_check_name(p: int, m: int, g: int, r_max: int, mode: str) -> str:
    return f"{mode} invariant separates exactly the {mode} classes: p={p} m={m} g={g} r_max={r_max}"


def build_runner(level: str = "quick", limits: Limits = DEFAULT_LIMITS, seed: int = 0,
                 runner: typing.Optional[SelfCheckRunner] = None) -> SelfCheckRunner:
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}, got {level!r}")
    runner = runner or SelfCheckRunner()
    rng = random.Random(seed)
    full = level == "full"

    runner.add_check("reduction of the integral symplectic group is onto: Sp(2,F_2)",
                     check_surjectivity(2, 1, 6, limits))
    runner.add_check("reduction of the integral symplectic group is onto: Sp(2,F_3)",
                     check_surjectivity(3, 1, 24, limits))
    runner.add_check("free actions are classified by (k, g) alone", check_free_classes)
    runner.add_check("every alternating form has an adapted symplectic basis",
                     check_adapted_bases(rng, 200 if full else 50))
    runner.add_check("isometries between subspaces extend to the whole space",
                     check_isometry_extension(rng, 100 if full else 20, 3 if full else 1))
    runner.add_check("Riemann-Hurwitz genus equals the genus of the cover",
                     check_riemann_hurwitz(rng, 100 if full else 20, limits))
    runner.add_check("invariants do not depend on the chosen generators", check_invariance(rng, 100 if full else 20))
    runner.add_check(_oracle_check_name(2, 1, 1, 0, "strong"), check_oracle(2, 1, 1, 0, "strong", limits))
    if full:
        runner.add_check("reduction of the integral symplectic group is onto: Sp(4,F_2)",
                         check_surjectivity(2, 2, 720, limits), level="full")
        for p, m, g, r_max in ORACLE_GRID:
            for mode in ("strong", "weak"):
                runner.add_check(_oracle_check_name(p, m, g, r_max, mode),
                                 check_oracle(p, m, g, r_max, mode, limits), level="full")
        runner.add_check("every admissible weak class is realised by an action",
                         lambda: check_round_trip(limits), level="full")
    return runner


def run_selfcheck(level: str = "quick", limits: Limits = DEFAULT_LIMITS, seed: int = 0,
                  stop_on_error: bool = False) -> dict:
    checks = build_runner(level, limits, seed).run(stop_on_error=stop_on_error)
    passed = sum(1 for c in checks if c.status == "passed")
    return {
        "level": level,
        "passed": passed,
        "failed": len(checks) - passed,
        "checks": [c.to_dict() for c in checks],
    }
