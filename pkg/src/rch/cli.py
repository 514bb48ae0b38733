"""Command line interface: ``rch <command> [options] [diagram file]``.

Exit codes: 0 success, 2 invalid input, 3 resource cap exceeded,
4 expected-value mismatch.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from typing import Any, Dict, Optional, Sequence

from . import catalog
from .dsl import Diagram, ParseError, dump, load, parse
from .homology import (
    bigraded_homology,
    filtered_homology,
    harmonic_state_dims,
    persistence,
    psi_survival,
)
from .invariants import (
    euler_check,
    n_color_polynomial,
    penrose_polynomial,
    total_face_color_at,
    total_face_color_interpolated,
    tsharp,
    two_variable_penrose,
)
from .oracle import edge_coloring_count, nowhere_zero_flow_count
from .ribbon import DiagramError, PMDiagram, RibbonDiagram, blowup, surface_stats, validate
from .scalar import BiPoly, LaurentPoly, VarPoly
from .states import CapExceeded, format_state

__all__ = ["main", "run", "parse", "dump", "load"]

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CAP = 3
EXIT_MISMATCH = 4

DEFAULT_MAX_STATES = 1 << 16
DEFAULT_MAX_GENERATORS = 5_000_000

log = logging.getLogger("rch")


class UsageError(ValueError):
    """The input is well formed but unsuitable for the requested command."""


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--blowup", action="store_true", help="replace the ribbon diagram by its blowup first")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
    common.add_argument("--max-generators", type=int, default=DEFAULT_MAX_GENERATORS)
    common.add_argument("--threads", type=int, default=None, help="worker count (default: $RCH_THREADS or 1)")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized property runs")
    common.add_argument("-v", "--verbose", action="store_true")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(prog="rch", description="Color homology of ribbon graphs.")
    commands = parser.add_subparsers(dest="command", required=True)

    poly = commands.add_parser("poly", parents=[common], help="n-color polynomial")
    poly.add_argument("--n", type=int, default=None)
    poly.add_argument("--two-var", action="store_true", help="two-variable Penrose polynomial instead")
    poly.add_argument("diagram")

    penrose = commands.add_parser("penrose", parents=[common], help="Penrose polynomial in n")
    penrose.add_argument("diagram")

    homology = commands.add_parser("homology", parents=[common], help="bigraded or filtered homology")
    homology.add_argument("--mode", choices=("bigraded", "filtered"), required=True)
    homology.add_argument("--n", type=int, required=True)
    homology.add_argument("diagram")

    ss = commands.add_parser("ss", parents=[common], help="spectral sequence pages")
    ss.add_argument("--n", type=int, required=True)
    ss.add_argument("--page", type=int, default=None)
    ss.add_argument("--psi", action="store_true", help="track the psi class through the pages")
    ss.add_argument("diagram")

    tfcp = commands.add_parser("tfcp", parents=[common], help="total face color polynomial")
    which = tfcp.add_mutually_exclusive_group(required=True)
    which.add_argument("--n", type=int)
    which.add_argument("--interpolate", action="store_true")
    tfcp.add_argument("--via-linear-algebra", action="store_true")
    tfcp.add_argument("diagram")

    sharp = commands.add_parser("tsharp", parents=[common], help="Poincare polynomial of bigraded homology")
    sharp.add_argument("--n", type=int, required=True)
    sharp.add_argument("diagram")

    oracle = commands.add_parser("oracle", parents=[common], help="brute-force counts")
    oracle.add_argument("kind", choices=("colorings", "edge3", "flows"))
    oracle.add_argument("--n", type=int, default=None)
    oracle.add_argument("diagram")

    cat = commands.add_parser("catalog", parents=[common], help="built-in examples")
    cat.add_argument("action", choices=("list", "check", "show"))
    cat.add_argument("name", nargs="?")

    check = commands.add_parser("validate", parents=[common], help="parse and validate a diagram")
    check.add_argument("diagram")
    return parser


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def _max_matching(max_states: int) -> int:
    if max_states < 1:
        raise UsageError("--max-states must be positive")
    return max_states.bit_length() - 1


def _caps(args) -> Dict[str, int]:
    return {"max_matching": _max_matching(args.max_states), "max_generators": args.max_generators}


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    return int(os.environ.get("RCH_THREADS", "1"))


def _load(args) -> Diagram:
    diagram = load(args.diagram)
    if args.blowup:
        if not isinstance(diagram, RibbonDiagram):
            raise UsageError("--blowup needs a ribbon diagram without a matching")
        diagram = blowup(diagram)
    return diagram


def _need_pm(diagram: Diagram) -> PMDiagram:
    if not isinstance(diagram, PMDiagram):
        raise UsageError("this command needs a perfect matching diagram; pass --blowup for a ribbon diagram")
    return diagram


def _need_ribbon(diagram: Diagram) -> RibbonDiagram:
    if not isinstance(diagram, RibbonDiagram):
        raise UsageError("this command needs a ribbon diagram without a matching (and without --blowup)")
    return diagram


def _need_n(n: Optional[int]) -> int:
    if n is None or n < 2:
        raise UsageError("--n must be an integer >= 2")
    return n


def _poly_payload(value) -> dict:
    return {"text": value.to_text(), **value.to_json()}


def _diagram_info(diagram: Diagram) -> dict:
    return {
        "name": diagram.name,
        "fingerprint": diagram.fingerprint(),
        "kind": "perfect_matching" if isinstance(diagram, PMDiagram) else "ribbon",
    }


def _report(command: str, diagram: Optional[Diagram], parameters: dict, result) -> dict:
    report = {"command": command, "parameters": parameters, "result": result}
    if diagram is not None:
        report["diagram"] = _diagram_info(diagram)
    return report


def _text(report: dict) -> str:
    lines = []
    if "diagram" in report:
        info = report["diagram"]
        lines.append(f"{info['name']} [{info['fingerprint']}]")
    result = report["result"]
    if isinstance(result, dict) and "lines" in result:
        lines.extend(result["lines"])
    else:
        lines.append(json.dumps(result, indent=2, sort_keys=True))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_poly(args) -> dict:
    pm = _need_pm(_load(args))
    caps = _caps(args)
    if args.two_var:
        value: Any = two_variable_penrose(pm, max_matching=caps["max_matching"])
        return _report("poly", pm, {"two_var": True}, {**_poly_payload(value), "lines": [value.to_text()]})
    n = _need_n(args.n)
    value = n_color_polynomial(pm, n, max_matching=caps["max_matching"])
    number = value.evaluate(1)
    return _report(
        "poly", pm, {"n": n},
        {**_poly_payload(value), "at_one": str(number), "lines": [value.to_text(), f"at q=1: {number}"]},
    )


def cmd_penrose(args) -> dict:
    d = _need_ribbon(_load(args))
    value = penrose_polynomial(d, max_matching=_caps(args)["max_matching"])
    return _report("penrose", d, {}, {**_poly_payload(value), "lines": [value.to_text()]})


def cmd_homology(args) -> dict:
    pm = _need_pm(_load(args))
    n = _need_n(args.n)
    if args.mode == "bigraded":
        table = bigraded_homology(pm, n, **_caps(args))
        lines = [f"H^({i},{j}) = {d}" for (i, j), d in table.dims.items()] or ["homology vanishes"]
        euler = euler_check(pm, n, table)
        lines.append(f"graded Euler characteristic matches the n-color polynomial: {euler.ok}")
        return _report("homology", pm, {"mode": "bigraded", "n": n},
                       {**table.to_json(), "euler_ok": euler.ok, "lines": lines})
    table = filtered_homology(pm, n, **_caps(args))
    lines = [f"H^{i} = {d}" for i, d in table.dims.items()] or ["homology vanishes"]
    lines.append("sequence: " + " ".join(str(d) for d in table.sequence(len(pm.matching))))
    return _report("homology", pm, {"mode": "filtered", "n": n},
                   {**table.to_json(), "sequence": table.sequence(len(pm.matching)), "lines": lines})


def cmd_ss(args) -> dict:
    pm = _need_pm(_load(args))
    n = _need_n(args.n)
    caps = _caps(args)
    data = persistence(pm, n, **caps)
    invariant = max(1, data.max_gap() + 1)
    result: Dict[str, Any] = {"spectral_invariant": invariant}
    lines = [f"spectral invariant S_{n} = {invariant}"]
    if args.page is not None:
        if args.page < 0:
            raise UsageError("--page must be nonnegative")
        chosen = [data.page(args.page)]
    else:
        chosen = [data.page(r) for r in range(invariant + 1)]
    result["pages"] = [p.to_json() for p in chosen]
    for p in chosen:
        lines.append(f"E_{p.r}: " + ", ".join(f"({i},{j}):{d}" for (i, j), d in p.dims.items()))
    if args.psi:
        survival = psi_survival(pm, n, **caps)
        result["psi"] = survival.as_dict()
        fate = "survives to E_infinity" if survival.survives else f"is zero on E_{survival.dies_at}"
        lines.append(f"psi (j={survival.j}) {fate}")
    result["lines"] = lines
    return _report("ss", pm, {"n": n, "page": args.page, "psi": args.psi}, result)


def cmd_tfcp(args) -> dict:
    d = _need_ribbon(_load(args))
    caps = _caps(args)
    if args.interpolate:
        value: Any = total_face_color_interpolated(d, max_matching=caps["max_matching"])
        return _report("tfcp", d, {"interpolate": True}, {**_poly_payload(value), "lines": [value.to_text()]})
    n = _need_n(args.n)
    value = total_face_color_at(d, n, via_linear_algebra=args.via_linear_algebra, **caps)
    total = value.evaluate(1)
    return _report(
        "tfcp", d, {"n": n, "via_linear_algebra": args.via_linear_algebra},
        {**_poly_payload(value), "at_one": str(total), "lines": [value.to_text(), f"at t=1: {total}"]},
    )


def cmd_tsharp(args) -> dict:
    pm = _need_pm(_load(args))
    n = _need_n(args.n)
    value = tsharp(pm, n, **_caps(args))
    return _report("tsharp", pm, {"n": n}, {**_poly_payload(value), "lines": [value.to_text()]})


def cmd_oracle(args) -> dict:
    diagram = _load(args)
    if args.kind == "colorings":
        pm = _need_pm(diagram)
        n = _need_n(args.n)
        dims = harmonic_state_dims(pm, n, max_matching=_caps(args)["max_matching"])
        length = len(pm.matching)
        states = [[format_state(mask, length), count] for mask, count in sorted(dims.items()) if count]
        lines = [f"{s}: {c}" for s, c in states] or ["no state has a proper coloring"]
        return _report("oracle", pm, {"kind": "colorings", "n": n},
                       {"states": states, "total": sum(dims.values()), "lines": lines})
    graph = diagram.graph
    if args.kind == "edge3":
        count = edge_coloring_count(graph, 3)
        return _report("oracle", diagram, {"kind": "edge3"}, {"count": count, "lines": [str(count)]})
    k = args.n if args.n is not None else 4
    count = nowhere_zero_flow_count(graph, k)
    return _report("oracle", diagram, {"kind": "flows", "n": k}, {"count": count, "lines": [str(count)]})


def cmd_catalog(args) -> dict:
    if args.action == "list":
        rows = [[name, catalog.get(name).description] for name in catalog.names()]
        return _report("catalog", None, {"action": "list"},
                       {"examples": rows, "lines": [f"{name}: {text}" for name, text in rows]})
    if args.action == "show":
        if not args.name:
            raise UsageError("catalog show needs an example name")
        example = catalog.get(args.name)
        text = dump(example.diagram)
        return _report("catalog", example.diagram, {"action": "show", "name": args.name},
                       {"text": text, "lines": text.rstrip("\n").splitlines()})
    results = catalog.check(args.name)
    rows = [r.as_dict() for r in results]
    lines = []
    for r in rows:
        status = "ok  " if r["ok"] else "FAIL"
        params = ",".join(f"{k}={v}" for k, v in r["parameters"].items())
        lines.append(f"{status} {r['example']} {r['invariant']}({params})")
        if not r["ok"]:
            lines.append(f"     expected {r['expected']}, got {r['actual']}")
    failed = sum(not r["ok"] for r in rows)
    lines.append(f"{len(rows) - failed}/{len(rows)} expectations reproduced")
    return _report("catalog", None, {"action": "check", "name": args.name},
                   {"checks": rows, "failed": failed, "lines": lines})


def cmd_validate(args) -> dict:
    diagram = _load(args)
    problems = validate(diagram)
    info: Dict[str, Any] = {"valid": not problems, "problems": problems}
    lines = ["valid"] if not problems else problems
    if isinstance(diagram, RibbonDiagram) and not problems and diagram.graph.is_connected():
        stats = surface_stats(diagram)
        info["surface"] = stats.as_dict()
        lines.append(", ".join(f"{k}={v}" for k, v in stats.as_dict().items() if v is not None))
    if isinstance(diagram, PMDiagram):
        info["matching"] = list(diagram.matching)
        lines.append(f"matching of {len(diagram.matching)} edges")
    info["lines"] = lines
    return _report("validate", diagram, {}, info)


COMMANDS = {
    "poly": cmd_poly,
    "penrose": cmd_penrose,
    "homology": cmd_homology,
    "ss": cmd_ss,
    "tfcp": cmd_tfcp,
    "tsharp": cmd_tsharp,
    "oracle": cmd_oracle,
    "catalog": cmd_catalog,
    "validate": cmd_validate,
}


def _exit_code(command: str, report: dict) -> int:
    result = report["result"]
    if command == "catalog" and result.get("failed"):
        return EXIT_MISMATCH
    if command == "homology" and result.get("euler_ok") is False:
        return EXIT_MISMATCH
    return EXIT_OK


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    """Parse ``argv``, execute the command, print the report and return the exit code."""
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(message)s")
    log.debug("threads=%d seed=%s", _threads(args), args.seed)
    try:
        report = COMMANDS[args.command](args)
    except (ParseError, DiagramError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (CapExceeded, RecursionError) as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    code = _exit_code(args.command, report)
    if args.format == "json":
        report["result"].pop("lines", None)
        print(json.dumps(report, indent=2, sort_keys=True, default=_json_default), file=out)
    else:
        print(_text(report), file=out)
    return code


def _json_default(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (LaurentPoly, VarPoly, BiPoly)):
        return value.to_json()
    raise TypeError(f"cannot serialize {type(value).__name__}")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
