"""Command-line front end: bound, achieve, verify, scan, compat.

Exit codes: 0 success, 2 parse/input error, 3 unphysical state,
4 construction failure, 5 audit failure. All numeric JSON output is
rounded to 12 significant digits; CSV cells use the shortest
round-trip representation. Angles are radians in [0, pi].
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import bounds as B
from .chsh import chsh, chsh_matrix_form
from .construct import (
    achieving_directions,
    achieving_scenario_tstate,
    thm3_achieving,
)
from .errors import (
    BellboundError,
    ConstructionError,
    DomainError,
    InvalidInputError,
    UnphysicalStateError,
)
from .model import (
    FanoState,
    correlation_singular_values,
    Scenario,
    StrengthQuad,
    bell_diagonal,
    observable_from_dict,
    scenario_from_dict,
    singlet,
    state_from_fano,
    werner,
)
from .optimize import AUDIT_CRITERIA, audit_bound

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_UNPHYSICAL = 3
EXIT_CONSTRUCTION = 4
EXIT_AUDIT = 5


def _fmt12(value):
    """Round every float in a JSON-like structure to 12 significant digits."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (float, np.floating)):
        return float(f"{float(value):.12g}")
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, dict):
        return {k: _fmt12(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_fmt12(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_fmt12(v) for v in value.tolist()]
    return value


def _emit_json(payload: dict, output: str | None) -> None:
    text = json.dumps(_fmt12(payload), indent=2, sort_keys=True)
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _emit_csv(header: list[str], rows: list[tuple], output: str | None) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([str(cell) for cell in row])
    if output:
        with open(output, "w") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())


# ---------------------------------------------------------------------------
# Scenario file parsing


def _parse_state(data: dict) -> FanoState:
    if not isinstance(data, dict) or "kind" not in data:
        raise InvalidInputError("state must be an object with a 'kind' key")
    kind = data["kind"]
    if kind == "singlet":
        return singlet()
    if kind == "werner":
        if "w" not in data:
            raise InvalidInputError("state.w is required for kind 'werner'")
        return werner(float(data["w"]))
    if kind == "bell_diagonal":
        if "t" not in data or len(data["t"]) != 3:
            raise InvalidInputError("state.t must hold three diagonal entries for kind 'bell_diagonal'")
        return bell_diagonal(*(float(v) for v in data["t"]))
    if kind == "fano":
        for key in ("a", "b", "t"):
            if key not in data:
                raise InvalidInputError(f"state.{key} is required for kind 'fano'")
        return state_from_fano(data["a"], data["b"], data["t"])
    raise InvalidInputError(
        f"state.kind {kind!r} is not one of singlet, werner, bell_diagonal, fano"
    )


def _parse_angles(data: dict) -> tuple[float, float]:
    for key in ("theta", "phi"):
        if key not in data:
            raise InvalidInputError(f"angles.{key} is required when angles are given")
        val = float(data[key])
        if not (0.0 <= val <= math.pi + 1e-12):
            raise InvalidInputError(
                f"angles.{key} = {val} outside [0, pi]; angles are radians only"
            )
    return (float(data["theta"]), float(data["phi"]))


class ScenarioFile:
    """Parsed input document: state plus either parameters or a full scenario."""

    def __init__(self, data: dict):
        if not isinstance(data, dict):
            raise InvalidInputError("input document must be a JSON object")
        if "state" not in data:
            raise InvalidInputError("input is missing the 'state' key")
        self.state = _parse_state(data["state"])
        self.seed = int(data.get("seed", 0))
        self.scenario: Scenario | None = None
        self.strengths: StrengthQuad | None = None
        self.angles: tuple[float, float] | None = None
        self.biases: tuple[float, float, float, float] | None = None
        if "scenario" in data:
            for key in ("strengths", "angles", "biases"):
                if key in data:
                    raise InvalidInputError(
                        f"{key!r} conflicts with an explicit 'scenario'; give one or the other"
                    )
            self.scenario = scenario_from_dict(data["scenario"])
            self.strengths = self.scenario.strengths
            self.angles = (self.scenario.theta, self.scenario.phi)
            self.biases = self.scenario.biases
            return
        if "strengths" not in data:
            raise InvalidInputError("input needs 'strengths' [sx, sxp, sy, syp] or a 'scenario'")
        vals = data["strengths"]
        if len(vals) != 4:
            raise InvalidInputError("strengths must hold four values [sx, sxp, sy, syp]")
        self.strengths = StrengthQuad(*(float(v) for v in vals))
        if "angles" in data:
            self.angles = _parse_angles(data["angles"])
        if "biases" in data:
            if len(data["biases"]) != 4:
                raise InvalidInputError("biases must hold four values")
            self.biases = tuple(float(v) for v in data["biases"])


def _load_input(path: str) -> ScenarioFile:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"could not parse {path}: {exc}") from exc
    except OSError as exc:
        raise InvalidInputError(f"could not read {path}: {exc}") from exc
    return ScenarioFile(data)


# ---------------------------------------------------------------------------
# bound


def _pick_default_angles(doc: ScenarioFile):
    """Optimal angles from the most specific applicable bound family, if any."""
    q = doc.strengths
    s1, s2, _ = correlation_singular_values(doc.state)
    if abs(s1 - s2) <= 1e-8:
        report = B.thm4_bound(doc.state, q)
        return report.optimal_angles, "thm4"
    if abs(q.sx - q.sxp) <= 1e-12:
        sy, syp = max(q.sy, q.syp), min(q.sy, q.syp)
        report = B.thm3_bound(doc.state, q.sx, sy, syp)
        return report.optimal_angles, "thm3"
    if abs(q.sy - q.syp) <= 1e-12:
        # Exchange the sides (the bound is symmetric under it, with the
        # relative angles swapped along).
        sx, sxp = max(q.sx, q.sxp), min(q.sx, q.sxp)
        report = B.thm3_bound(doc.state, q.sy, sx, sxp)
        return (report.optimal_angles[1], report.optimal_angles[0]), "thm3-sides-exchanged"
    return None, None


def _report_entry(report: B.BoundReport, **extra) -> dict:
    entry = {
        "criterion_id": report.criterion_id,
        "applicable": True,
        "value": report.value,
        "violated": report.violated,
    }
    if report.optimal_angles is not None:
        entry["optimal_angles"] = {
            "theta": report.optimal_angles[0],
            "phi": report.optimal_angles[1],
        }
    if report.notes:
        entry["notes"] = report.notes
    entry.update(extra)
    return entry


def _inapplicable(criterion_id: str, reason: str) -> dict:
    return {"criterion_id": criterion_id, "applicable": False, "reason": reason}


def cmd_bound(args) -> int:
    doc = _load_input(args.input)
    state = doc.state
    q = doc.strengths
    angles = doc.angles
    angle_source = "input" if angles is not None else None
    if angles is None:
        angles, angle_source = _pick_default_angles(doc)
    is_tstate = state.is_tstate()
    s1, s2, s3 = correlation_singular_values(state)
    entries = []
    entries.append(_report_entry(B.BoundReport(value=B.horodecki(state.t), criterion_id="horodecki")))
    entries.append(_report_entry(B.cor2_sufficient(state, q)))
    if angles is not None:
        theta, phi = angles
        entries.append(
            _report_entry(
                B.s0_bound(state, q, theta, phi),
                angles_used={"theta": theta, "phi": phi},
                angle_source=angle_source,
            )
        )
        entries.append(
            _report_entry(
                B.s0_tilde(state, q, theta, phi),
                angles_used={"theta": theta, "phi": phi},
                angle_source=angle_source,
            )
        )
        if is_tstate:
            entries.append(
                _report_entry(
                    B.st_bound(state, q, theta, phi),
                    angles_used={"theta": theta, "phi": phi},
                    angle_source=angle_source,
                )
            )
            entries.append(
                _report_entry(
                    B.st_tilde(state, q, theta, phi),
                    angles_used={"theta": theta, "phi": phi},
                    angle_source=angle_source,
                )
            )
        else:
            entries.append(_inapplicable("thm2", "not a T-state"))
            entries.append(_inapplicable("cor6", "not a T-state"))
    else:
        reason = "no angles given and no strength/state pattern fixes optimal ones"
        for cid in ("thm1", "cor3") + (("thm2", "cor6") if is_tstate else ()):
            entries.append(_inapplicable(cid, reason))
        if not is_tstate:
            entries.append(_inapplicable("thm2", "not a T-state"))
            entries.append(_inapplicable("cor6", "not a T-state"))
    if abs(q.sx - q.sxp) <= 1e-12 and abs(q.sy - q.syp) <= 1e-12:
        entries.append(_report_entry(B.cor1_bound(state, q.sx, q.sy)))
        if is_tstate:
            entries.append(_report_entry(B.cor4_bound(state, q.sx, q.sy)))
        else:
            entries.append(_inapplicable("cor4", "not a T-state"))
    else:
        entries.append(_inapplicable("cor1", "strengths are not equal on each side"))
        entries.append(_inapplicable("cor4", "strengths are not equal on each side"))
    if abs(q.sx - q.sxp) <= 1e-12:
        sy, syp = max(q.sy, q.syp), min(q.sy, q.syp)
        swapped = q.sy < q.syp
        entries.append(
            _report_entry(
                B.thm3_bound(state, q.sx, sy, syp, biased_tstate=False),
                b_side_swapped=swapped,
            )
        )
    elif abs(q.sy - q.syp) <= 1e-12:
        sx, sxp = max(q.sx, q.sxp), min(q.sx, q.sxp)
        report = B.thm3_bound(state, q.sy, sx, sxp, biased_tstate=False)
        entries.append(
            _report_entry(
                B.BoundReport(
                    value=report.value,
                    criterion_id="thm3",
                    optimal_angles=(report.optimal_angles[1], report.optimal_angles[0]),
                    notes="sides exchanged (equal strengths on side B)",
                )
            )
        )
    else:
        entries.append(_inapplicable("thm3", "no side has equal strengths"))
    if abs(s1 - s2) <= 1e-8:
        entries.append(_report_entry(B.thm4_bound(state, q, biased_tstate=False)))
        if is_tstate:
            entries.append(
                _report_entry(
                    B.thm4_bound(state, q, biased_tstate=True),
                    criterion_variant="thm4+bias",
                )
            )
    else:
        entries.append(_inapplicable("thm4", f"s1(T) != s2(T) ({s1:.6g} vs {s2:.6g})"))
    payload = {
        "input": args.input,
        "state": state.to_dict(),
        "correlation_singular_values": [s1, s2, s3],
        "strengths": list(q.as_tuple()),
        "criteria": entries,
    }
    if doc.scenario is not None:
        variants = chsh(doc.scenario, state)
        payload["chsh"] = {
            "canonical": variants.canonical,
            "swap_x": variants.swap_x,
            "swap_y": variants.swap_y,
            "swap_both": variants.swap_both,
            "matrix_form": chsh_matrix_form(doc.scenario, state),
        }
        payload["criteria"].append(_report_entry(B.sgen_bound(doc.scenario, state)))
    elif angles is not None:
        from .construct import reference_frames
        from .model import make_observable

        dirs = reference_frames(*angles)
        biases = doc.biases if doc.biases is not None else (0.0, 0.0, 0.0, 0.0)
        scenario = Scenario(
            x=make_observable(biases[0], q.sx, dirs[0]),
            xp=make_observable(biases[1], q.sxp, dirs[1]),
            y=make_observable(biases[2], q.sy, dirs[2]),
            yp=make_observable(biases[3], q.syp, dirs[3]),
        )
        payload["criteria"].append(
            _report_entry(B.sgen_bound(scenario, state), notes="reference-frame directions")
        )
    else:
        payload["criteria"].append(
            _inapplicable("sgen", "needs an explicit scenario or angles")
        )
    _emit_json(payload, args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# achieve


def cmd_achieve(args) -> int:
    doc = _load_input(args.input)
    state = doc.state
    q = doc.strengths
    criterion = args.criterion
    if criterion in ("thm1", "thm2"):
        if doc.angles is None:
            raise InvalidInputError(f"criterion {criterion} needs angles{{theta, phi}} in the input")
        theta, phi = doc.angles
        if criterion == "thm1":
            config = achieving_directions(state, q, theta, phi)
        else:
            config = achieving_scenario_tstate(state, q, theta, phi)
    elif criterion in ("cor1", "cor4"):
        if abs(q.sx - q.sxp) > 1e-12 or abs(q.sy - q.syp) > 1e-12:
            raise DomainError(f"criterion {criterion} requires equal strengths on each side")
        report = B.cor1_bound(state, q.sx, q.sy) if criterion == "cor1" else B.cor4_bound(state, q.sx, q.sy)
        theta, phi = report.optimal_angles
        if criterion == "cor1":
            config = achieving_directions(state, q, theta, phi)
        else:
            config = achieving_scenario_tstate(state, q, theta, phi)
    elif criterion == "thm3":
        if abs(q.sx - q.sxp) > 1e-12:
            raise DomainError("criterion thm3 requires equal strengths on side A (sx = sxp)")
        sy, syp = max(q.sy, q.syp), min(q.sy, q.syp)
        config = thm3_achieving(state, q.sx, sy, syp)
    elif criterion == "thm4":
        report = B.thm4_bound(state, q)
        config = achieving_directions(state, q, *report.optimal_angles)
    else:
        raise InvalidInputError(
            f"criterion {criterion!r} has no achieving construction "
            "(choose thm1, thm2, cor1, cor4, thm3 or thm4)"
        )
    payload = {
        "criterion": criterion,
        "recipe": config.recipe_id,
        "target_bound": config.target_bound,
        "attained_chsh": config.attained_chsh,
        "violated": config.attained_chsh > 2.0,
        "state": state.to_dict(),
        "scenario": config.scenario.to_dict(),
        "angles": {"theta": config.scenario.theta, "phi": config.scenario.phi},
    }
    _emit_json(payload, args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    report = audit_bound(
        args.criterion,
        trials=args.trials,
        seed=args.seed,
        tolerance=args.tolerance,
        restarts=args.restarts,
        threads=args.threads,
    )
    rows = [(r.trial, r.bound, r.oracle, r.gap) for r in report.rows]
    _emit_csv(["trial", "bound", "oracle", "gap"], rows, args.output)
    summary = {
        "criterion": report.criterion_id,
        "trials": report.trials,
        "seed": report.seed,
        "max_overshoot": report.max_overshoot,
        "max_undershoot": report.max_undershoot,
        "overshoot_tol": report.overshoot_tol,
        "undershoot_tol": report.undershoot_tol,
        "tightness_claimed": report.tightness_claimed,
        "passed": report.passed,
    }
    print(json.dumps(_fmt12(summary), sort_keys=True), file=sys.stderr)
    if not report.passed:
        print(
            "audit FAILED; reproduce failing trials with --seed "
            f"{report.seed} at trial indices {list(report.failed_trials)}",
            file=sys.stderr,
        )
        return EXIT_AUDIT
    return EXIT_OK


# ---------------------------------------------------------------------------
# scan


def bisect_root(fun, lo: float, hi: float, tol: float = 1e-9) -> float:
    """Bisection for a sign change of ``fun`` on [lo, hi]."""
    flo = fun(lo)
    fhi = fun(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0.0) == (fhi > 0.0):
        raise InvalidInputError(f"no sign change on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fmid = fun(mid)
        if fmid == 0.0:
            return mid
        if (fmid > 0.0) == (flo > 0.0):
            lo = mid
            flo = fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def strength_sweep(state: FanoState, start: float, stop: float, steps: int):
    """Common-strength sweep rows plus bisected violation crossings."""
    s1, s2, _ = correlation_singular_values(state)
    radius = math.hypot(s1, s2)
    rows = []
    for k in range(steps):
        s = start + (stop - start) * k / (steps - 1)
        unbiased = 2.0 * s * s * radius
        biased = unbiased + 2.0 * (1.0 - s) * (1.0 - s)
        rows.append((s, unbiased, biased, unbiased > 2.0, biased > 2.0))
    summary = {"radius": radius}
    if radius > 1.0:
        unbiased_cross = bisect_root(lambda s: 2.0 * s * s * radius - 2.0, 0.0, 1.0)
        biased_cross = bisect_root(
            lambda s: 2.0 * s * s * radius + 2.0 * (1.0 - s) ** 2 - 2.0, 0.01, 1.0
        )
        thresholds = B.strength_thresholds(radius)
        summary.update(
            {
                "unbiased_crossing": unbiased_cross,
                "biased_crossing": biased_cross,
                "unbiased_threshold_closed_form": thresholds[0],
                "biased_threshold_closed_form": thresholds[1],
            }
        )
    return rows, summary


def werner_sweep(start: float, stop: float, steps: int):
    rows = []
    for k in range(steps):
        w = start + (stop - start) * k / (steps - 1)
        value = 2.0 * math.sqrt(2.0) * abs(w)
        rows.append((w, value, value > 2.0))
    onset = bisect_root(lambda w: 2.0 * math.sqrt(2.0) * w - 2.0, 0.0, 1.0)
    return rows, {"violation_onset": onset}


def angle_sweep(state: FanoState, q: StrengthQuad, start: float, stop: float, steps: int):
    rows = []
    for k in range(steps):
        angle = start + (stop - start) * k / (steps - 1)
        value = B.s0_bound(state, q, angle, angle).value
        rows.append((angle, value, value > 2.0))
    return rows, {}


def cmd_scan(args) -> int:
    if args.steps < 2:
        raise InvalidInputError("steps must be >= 2")
    if not (math.isfinite(args.start) and math.isfinite(args.stop) and args.start < args.stop):
        raise InvalidInputError("need start < stop")
    doc = _load_input(args.input) if args.input else None
    if args.family == "strength-sweep":
        if not (0.0 <= args.start and args.stop <= 1.0):
            raise InvalidInputError("strength sweep range must lie in [0, 1]")
        state = doc.state if doc else singlet()
        if not state.is_tstate():
            raise DomainError("strength sweep compares the T-state bounds; needs a T-state")
        rows, summary = strength_sweep(state, args.start, args.stop, args.steps)
        header = ["strength", "unbiased_bound", "biased_bound", "unbiased_violated", "biased_violated"]
    elif args.family == "werner-sweep":
        if not (-1.0 / 3.0 - 1e-12 <= args.start and args.stop <= 1.0):
            raise InvalidInputError("werner sweep range must lie in [-1/3, 1]")
        rows, summary = werner_sweep(args.start, args.stop, args.steps)
        header = ["w", "horodecki", "violated"]
    elif args.family == "angle-sweep":
        if not (0.0 <= args.start and args.stop <= math.pi + 1e-12):
            raise InvalidInputError("angle sweep range must lie in [0, pi]")
        state = doc.state if doc else singlet()
        q = doc.strengths if doc else StrengthQuad(1.0, 1.0, 1.0, 1.0)
        rows, summary = angle_sweep(state, q, args.start, args.stop, args.steps)
        header = ["angle", "bound", "violated"]
    else:
        raise InvalidInputError(f"unknown sweep family {args.family!r}")
    _emit_csv(header, rows, args.output)
    if summary:
        print(json.dumps(_fmt12(summary), sort_keys=True), file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# compat


def cmd_compat(args) -> int:
    try:
        with open(args.input) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"could not parse {args.input}: {exc}") from exc
    except OSError as exc:
        raise InvalidInputError(f"could not read {args.input}: {exc}") from exc
    if "x" not in data or "xp" not in data:
        raise InvalidInputError("compat input needs observables under keys 'x' and 'xp'")
    x = observable_from_dict(data["x"])
    xp = observable_from_dict(data["xp"])
    unbiased = abs(x.bias) < 1e-12 and abs(xp.bias) < 1e-12
    payload = {
        "x": x.to_dict(),
        "xp": xp.to_dict(),
        "relative_angle": math.acos(max(-1.0, min(1.0, float(x.direction @ xp.direction)))),
        "busch": B.compat_busch(x, xp) if unbiased else None,
        "busch_applicable": unbiased,
        "necessary": B.compat_necessary(x, xp),
        "full": B.compat_full(x, xp),
        "max_reversibility": {
            "x": B.max_reversibility(x),
            "xp": B.max_reversibility(xp),
        },
    }
    if not unbiased:
        payload["busch_note"] = "only defined for unbiased observables; see 'necessary' and 'full'"
    _emit_json(payload, args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellbound",
        description="CHSH bounds for qubit observables of arbitrary strength and bias.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bound = sub.add_parser("bound", help="evaluate every applicable criterion for a scenario file")
    p_bound.add_argument("--input", required=True, help="scenario JSON file")
    p_bound.add_argument("--output", help="write the JSON report here instead of stdout")
    p_bound.set_defaults(handler=cmd_bound)

    p_achieve = sub.add_parser("achieve", help="construct measurements attaining a bound")
    p_achieve.add_argument("--input", required=True)
    p_achieve.add_argument(
        "--criterion",
        required=True,
        choices=["thm1", "thm2", "cor1", "cor4", "thm3", "thm4"],
    )
    p_achieve.add_argument("--output")
    p_achieve.set_defaults(handler=cmd_achieve)

    p_verify = sub.add_parser("verify", help="audit a bound against the numerical oracle")
    p_verify.add_argument("--criterion", required=True, choices=sorted(AUDIT_CRITERIA))
    p_verify.add_argument("--trials", type=int, default=100)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--tolerance", type=float, default=None, help="undershoot tolerance")
    p_verify.add_argument("--restarts", type=int, default=None)
    p_verify.add_argument(
        "--threads", type=int, default=None, help="parallel trials (default: BELLBOUND_THREADS)"
    )
    p_verify.add_argument("--output", help="write the per-trial CSV here instead of stdout")
    p_verify.set_defaults(handler=cmd_verify)

    p_scan = sub.add_parser("scan", help="parameter sweeps with violation flags")
    p_scan.add_argument(
        "--family", required=True, choices=["strength-sweep", "werner-sweep", "angle-sweep"]
    )
    p_scan.add_argument("--start", type=float, required=True)
    p_scan.add_argument("--stop", type=float, required=True)
    p_scan.add_argument("--steps", type=int, required=True)
    p_scan.add_argument("--input", help="optional scenario file (state and strengths)")
    p_scan.add_argument("--output", help="write the CSV here instead of stdout")
    p_scan.set_defaults(handler=cmd_scan)

    p_compat = sub.add_parser("compat", help="joint-measurability verdicts for two observables")
    p_compat.add_argument("--input", required=True, help="JSON with observables 'x' and 'xp'")
    p_compat.add_argument("--output")
    p_compat.set_defaults(handler=cmd_compat)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except UnphysicalStateError as exc:
        print(f"error: unphysical state: {exc}", file=sys.stderr)
        return EXIT_UNPHYSICAL
    except ConstructionError as exc:
        print(f"error: construction failed: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    except BellboundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
