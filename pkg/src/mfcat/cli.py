"""mfcat command line.

Exit codes: 0 success, 1 mathematical failure (curvature mismatch, failed
comparison, ...), 2 input error, 3 Groebner budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from .cech import CechCover, cech_ext
from .curved import CurvatureMismatch, MatrixFactorization, cokernel, dual, external_tensor
from .groebner import DEFAULT_BUDGET, BudgetExceeded, FreeModuleMap, ModulePresentation, get_budget, q_dimension, set_budget
from .hochschild import compare_hh, cy_symmetry_check, hh_cohomology, hh_homology, hh_via_diagonal, milnor_number
from .homcx import dim_to_json, ext
from .poly import Polynomial
from .problem import Problem, ProblemError, _poly, build_object, load_problem, parse_matrix, parse_ring
from .stabilization import LiftFailed, PresentationMismatch, stabilize

EXIT_OK, EXIT_MATH, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

COMMANDS = ("verify", "stabilize", "ext", "cech-ext", "coker", "dual", "tensor",
            "hh", "hh-homology", "hh-diagonal", "hh-compare", "cy-check")


class MathFailure(Exception):
    def __init__(self, payload: dict, message: str):
        self.payload = payload
        super().__init__(message)


def _mf_payload(P: MatrixFactorization) -> dict:
    return {"W": str(P.W), "ranks": list(P.ranks), "p1": P.p1.to_literals(), "p0": P.p0.to_literals()}


def _dims(d) -> list:
    return [dim_to_json(x) for x in d]


def _pres_payload(M: ModulePresentation) -> dict:
    return {"ring": str(M.ring), "generators": M.generators, "relations": M.relations.to_literals(),
            "q_dimension": dim_to_json(q_dimension(M))}


def _pair(problem: Problem):
    args = problem.task_args
    P = problem.object(args.get("source"), "$.task_args.source")
    Q = problem.object(args.get("target", args.get("source")), "$.task_args.target")
    return P, Q


def _verify_all(objects: dict) -> None:
    for name, P in objects.items():
        try:
            P.verify()
        except CurvatureMismatch as exc:
            raise MathFailure({"object": name, "ok": False, "where": exc.where, "entry": list(exc.entry),
                               "expected": str(exc.expected), "found": str(exc.found)},
                              f"object {name!r}: {exc}") from None


def cmd_verify(problem: Problem) -> dict:
    names = problem.task_args.get("objects") or list(problem.objects)
    if isinstance(names, str):
        names = [names]
    chosen = {n: problem.object(n, "$.task_args.objects") for n in names}
    _verify_all(chosen)
    return {"objects": {n: {"ok": True, "ranks": list(P.ranks)} for n, P in chosen.items()}}


def cmd_stabilize(problem: Problem) -> dict:
    args = problem.task_args
    if "q1" not in args:
        raise ProblemError("$.task_args", "stabilize needs task_args.q1")
    ring = problem.ring
    rows = parse_matrix(ring, args["q1"], "$.task_args.q1")
    q1 = FreeModuleMap(ring, len(rows), len(rows[0]) if rows else 0, rows)
    quotient = ring.with_relations([problem.W])
    rel_rows = parse_matrix(ring, args.get("module", args["q1"]), "$.task_args.module")
    rel = FreeModuleMap(ring, len(rel_rows), len(rel_rows[0]) if rel_rows else 0, rel_rows)
    F = ModulePresentation(quotient, rel.rows, rel.map_entries(lambda a: Polynomial(quotient, a.terms), quotient))
    try:
        Q = stabilize(F, q1, problem.W)
    except (LiftFailed, PresentationMismatch) as exc:
        raise MathFailure({"ok": False, "error": str(exc)}, str(exc)) from None
    return {"factorization": _mf_payload(Q), "verified": True}


def _ext_payload(P, Q, result) -> dict:
    out = result.report()
    out["source_ranks"] = list(P.ranks)
    out["target_ranks"] = list(Q.ranks)
    return out


def cmd_ext(problem: Problem) -> dict:
    P, Q = _pair(problem)
    _verify_all({"source": P, "target": Q})
    return _ext_payload(P, Q, ext(P, Q))


def _cover(problem: Problem) -> CechCover:
    return problem.cover or CechCover.of(problem.ring, ["1"])


def cmd_cech_ext(problem: Problem) -> dict:
    P, Q = _pair(problem)
    _verify_all({"source": P, "target": Q})
    cover = _cover(problem)
    power = int(problem.task_args.get("power", 1))
    result = cech_ext(P, Q, cover, power=power)
    out = result.report()
    out["cover"] = [str(f) for f in cover.denominators]
    affine = ext(P, Q).dims
    out["affine_dims"] = _dims(affine)
    out["consistent"] = tuple(result.dims) == tuple(affine)
    if not out["consistent"]:
        raise MathFailure(out, "Cech and affine Ext dimensions differ")
    return out


def cmd_coker(problem: Problem) -> dict:
    P = problem.object(problem.task_args.get("object"), "$.task_args.object")
    _verify_all({"object": P})
    C = cokernel(P)
    out = _pres_payload(C)
    out["reduced_at_origin"] = dim_to_json(q_dimension(C.reduce_at_origin()))
    return out


def cmd_dual(problem: Problem) -> dict:
    P = problem.object(problem.task_args.get("object"), "$.task_args.object")
    _verify_all({"object": P})
    D = dual(P)
    D.verify()
    return {"dual": _mf_payload(D), "involution": dual(D) == P}


def cmd_tensor(problem: Problem) -> dict:
    args = problem.task_args
    P = problem.object(args.get("left"), "$.task_args.left")
    right = args.get("right")
    if not isinstance(right, dict) or "ring" not in right or "W" not in right or "object" not in right:
        raise ProblemError("$.task_args.right", "expected {ring, W, object}")
    ring2 = parse_ring(right["ring"], "$.task_args.right.ring")
    W2 = _poly(ring2, right["W"], "$.task_args.right.W")
    Q = build_object(ring2, W2, right["object"], "$.task_args.right.object")
    _verify_all({"left": P, "right": Q})
    try:
        T = external_tensor(P, Q)
    except CurvatureMismatch as exc:
        raise MathFailure({"ok": False, "error": str(exc)}, str(exc)) from None
    except ValueError as exc:
        raise ProblemError("$.task_args.right.ring", str(exc)) from None
    out = {"tensor": _mf_payload(T), "ring": list(T.ring.variables), "verified": True}
    if args.get("end_dims"):
        out["end_dims"] = _dims(ext(T, T).dims)
    return out


def _hh_payload(res, W) -> dict:
    out = res.report()
    out["W"] = str(W)
    out["mu"] = dim_to_json(milnor_number(W))
    return out


def cmd_hh(problem: Problem) -> dict:
    return _hh_payload(hh_cohomology(problem.W, problem.cover), problem.W)


def cmd_hh_homology(problem: Problem) -> dict:
    return _hh_payload(hh_homology(problem.W, problem.cover), problem.W)


def cmd_hh_diagonal(problem: Problem) -> dict:
    return _hh_payload(hh_via_diagonal(problem.W), problem.W)


def cmd_hh_compare(problem: Problem) -> dict:
    report = compare_hh(problem.W, problem.cover)
    out = report.payload()
    out["_timings"] = {k: round(v, 4) for k, v in report.timings.items()}
    if not report.passed:
        raise MathFailure(out, "polyvector and diagonal routes disagree")
    return out


def cmd_cy_check(problem: Problem) -> dict:
    P, Q = _pair(problem)
    _verify_all({"source": P, "target": Q})
    report = cy_symmetry_check(P, Q, problem.task_args.get("n"))
    out = report.payload()
    if not report.passed:
        raise MathFailure(out, "Calabi-Yau dimension symmetry fails")
    return out


HANDLERS = {
    "verify": cmd_verify,
    "stabilize": cmd_stabilize,
    "ext": cmd_ext,
    "cech-ext": cmd_cech_ext,
    "coker": cmd_coker,
    "dual": cmd_dual,
    "tensor": cmd_tensor,
    "hh": cmd_hh,
    "hh-homology": cmd_hh_homology,
    "hh-diagonal": cmd_hh_diagonal,
    "hh-compare": cmd_hh_compare,
    "cy-check": cmd_cy_check,
}


def _flatten(prefix: str, value, rows: list) -> None:
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else k, value[k], rows)
    else:
        rows.append((prefix, json.dumps(value) if not isinstance(value, str) else value))


def render_table(command: str, status: str, payload: dict, elapsed: float) -> str:
    rows: list[tuple[str, str]] = [("command", command), ("status", status)]
    _flatten("", payload, rows)
    rows.append(("elapsed_s", f"{elapsed:.3f}"))
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def write_report(path: str, command: str, status: str, payload: dict) -> None:
    clean = {k: v for k, v in payload.items() if not k.startswith("_")}
    doc = {"command": command, "status": status, "payload": clean}
    Path(path).write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mfcat", description="Matrix factorization and Hochschild toolkit")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("problem", help="JSON problem file")
    parser.add_argument("--json", dest="json_path", help="write a machine-readable report here")
    parser.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="S-pair reduction budget per Groebner basis")
    parser.add_argument("--verbose", action="store_true", help="log every S-pair reduction")
    return parser


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verbose:
        logging.basicConfig(level=logging.DEBUG, format="%(name)s: %(message)s")
    previous = get_budget()
    start = time.perf_counter()
    try:
        set_budget(args.budget)
        problem = load_problem(args.problem)
        payload = HANDLERS[args.command](problem)
        status, code = "ok", EXIT_OK
    except (ValueError, FileNotFoundError) as exc:
        payload, status, code = {"error": str(exc)}, "input-error", EXIT_INPUT
    except MathFailure as exc:
        payload, status, code = exc.payload, "fail", EXIT_MATH
    except BudgetExceeded as exc:
        payload, status, code = {"error": str(exc)}, "budget-exceeded", EXIT_BUDGET
    finally:
        set_budget(previous)
    elapsed = time.perf_counter() - start
    shown = {k.lstrip("_"): v for k, v in payload.items()}
    print(render_table(args.command, status, shown, elapsed), file=out)
    if args.json_path:
        write_report(args.json_path, args.command, status, payload)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
