# zpm_actions/report.py
"""
Single serializer for CLI output: JSON is the machine contract, text is rendered from the same dicts.
"""
import json
import typing

from zpm_actions.actions import ActionData
from zpm_actions.config import Limits, DEFAULT_LIMITS
from zpm_actions.invariants import WeakInvariant, check_same_group, first_difference, strong_invariant, total_genus, \
    weak_invariant

EQUIVALENT = "EQUIVALENT"
INEQUIVALENT = "INEQUIVALENT"


def dump_json(data: typing.Any) -> str:
    """Byte-stable JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _vectors(block: typing.Iterable[typing.Iterable[int]]) -> str:
    return "[" + ", ".join("(" + ",".join(str(x) for x in v) + ")" for v in block) + "]"


# --- classify ---

def classify_report(a: ActionData, limits: Limits = DEFAULT_LIMITS) -> dict:
    return {
        "action": a.to_dict(),
        "total_genus": total_genus(a),
        "strong_invariant": strong_invariant(a).to_dict(),
        "weak_invariant": weak_invariant(a, limits).to_dict(),
    }


def render_classify_text(report: dict) -> str:
    strong, weak = report["strong_invariant"], report["weak_invariant"]
    lines = [
        f"group: Z_{strong['p']}^{strong['m']}",
        f"quotient genus: {strong['g']}",
        f"total genus: {report['total_genus']}",
        f"branch points: {strong['r']}",
        f"branch multiset: {_vectors(strong['branch_multiset'])}",
        f"G_fix basis (n={strong['n']}): {_vectors(strong['gfix_basis'])}",
        f"annihilator basis: {_vectors(strong['ann_basis'])}",
        "induced form:",
    ]
    lines.extend("  " + " ".join(str(x) for x in row) for row in strong["gram"])
    if not strong["gram"]:
        lines.append("  (empty)")
    lines.extend([
        f"k: {strong['k']}",
        f"weak invariant: k={weak['k']} g={weak['g']} n={weak['n']} "
        f"multiset={_vectors(weak['canonical_multiset'])}",
    ])
    return "\n".join(lines) + "\n"


# --- equiv ---

def equiv_report(a: ActionData, b: ActionData, mode: str, limits: Limits = DEFAULT_LIMITS) -> dict:
    check_same_group(a, b)
    if mode == "strong":
        left, right = strong_invariant(a), strong_invariant(b)
    else:
        left, right = weak_invariant(a, limits), weak_invariant(b, limits)
    difference = first_difference(left, right)
    return {
        "mode": mode,
        "verdict": EQUIVALENT if difference is None else INEQUIVALENT,
        "first_difference": difference,
        "left": left.to_dict(),
        "right": right.to_dict(),
    }


def render_equiv_text(report: dict) -> str:
    line = report["verdict"]
    key = report["first_difference"]
    if key is not None:
        line += f" ({report['mode']}): {key} differs: {report['left'][key]} vs {report['right'][key]}"
    return line + "\n"


# --- enumerate ---

def enumerate_report(classes: typing.Sequence[WeakInvariant]) -> dict:
    return {"count": len(classes), "classes": [c.to_dict() for c in classes]}


def render_enumerate_text(report: dict) -> str:
    lines = ["k\tg\tn\tr\tmultiset"]
    for row in report["classes"]:
        lines.append(f"{row['k']}\t{row['g']}\t{row['n']}\t{row['r']}\t{json.dumps(row['canonical_multiset'])}")
    return "\n".join(lines) + "\n"


# --- selfcheck ---

def render_selfcheck_text(report: dict) -> str:
    lines = []
    for check in report["checks"]:
        status = check["status"].upper()
        detail = f" - {check['detail']}" if check.get("detail") else ""
        lines.append(f"[{status}] {check['name']}{detail}")
    lines.append(f"{report['passed']}/{len(report['checks'])} checks passed")
    return "\n".join(lines) + "\n"
