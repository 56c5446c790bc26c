"""Batch command line: parse group specs, dispatch analyses, emit reports.

Output is deterministic for a fixed request and version: JSON is emitted with
sorted keys and timings are omitted unless --timings is passed. Exit codes:
0 success, 2 validation error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import __version__
from .asymptotics import count_S, count_T, pi_k, ratio_table
from .constructors import dihedral_pair, klein_in_s4_pair, klein_in_s5_pair, named_group
from .divisibility import (GroupPair, big_delta_exact, decide, delta_exact,
                           report_to_dict, scan_all_primes)
from .errors import ResourceLimitError, ValidationError
from .numbounds import (PlaceData, PrimeTowerData, RankBoundInput, TowerInput,
                        UnitData, malle_a, malle_exponent, rank_bound,
                        rayclass_bound, tower_criteria)
from .perm import PermGroup, group_from_literal, group_to_literal

_FAMILIES = {"C": "cyclic", "D": "dihedral", "S": "symmetric", "A": "alternating"}


def parse_group_spec(text: str,
                     element_cap: Optional[int] = None) -> Union[PermGroup, GroupPair]:
    """Parse "C:n", "D:n", "S:n", "A:n", "pair:dihedral:n", "pair:klein-s5",
    "pair:klein-s4", or a JSON literal ({"degree", "generators"} for a group,
    {"G": ..., "H": ...} for a pair)."""
    text = text.strip()
    if text.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"malformed JSON at position {exc.pos}: {exc.msg}") from exc
        if isinstance(obj, dict) and "G" in obj and "H" in obj:
            g = group_from_literal(obj["G"], element_cap)
            h_literal = group_from_literal(obj["H"], element_cap)
            return GroupPair(g, h_literal)
        return group_from_literal(obj, element_cap)
    parts = text.split(":")
    if parts[0] == "pair":
        if len(parts) == 3 and parts[1] == "dihedral":
            return dihedral_pair(_parse_int(parts[2], text))
        if len(parts) == 2 and parts[1] == "klein-s5":
            return klein_in_s5_pair()
        if len(parts) == 2 and parts[1] == "klein-s4":
            return klein_in_s4_pair()
        raise ValidationError(f"unknown pair spec {text!r}")
    if len(parts) == 2 and parts[0] in _FAMILIES:
        return named_group(_FAMILIES[parts[0]], _parse_int(parts[1], text),
                           element_cap=element_cap)
    raise ValidationError(f"unknown group spec {text!r}")


def _parse_int(token: str, context: str) -> int:
    try:
        return int(token)
    except ValueError as exc:
        raise ValidationError(f"bad integer {token!r} in spec {context!r}") from exc


def _as_pair(spec: Union[PermGroup, GroupPair]) -> GroupPair:
    if isinstance(spec, GroupPair):
        return spec
    return GroupPair(spec, PermGroup.trivial(spec.degree))


def _fraction_from(obj, context: str) -> Fraction:
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, dict) and set(obj) == {"num", "den"}:
        return Fraction(obj["num"], obj["den"])
    raise ValidationError(f"{context}: expected an integer or {{num, den}}")


def _jsonable(value):
    if isinstance(value, Fraction):
        return {"num": value.numerator, "den": value.denominator}
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _read_payload(source: str) -> dict:
    if source == "-":
        raw = sys.stdin.read()
    else:
        try:
            with open(source, "r", encoding="utf-8") as handle:
                raw = handle.read()
        except OSError as exc:
            raise ValidationError(f"cannot read payload: {exc}") from exc
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON payload: {exc.msg} "
                              f"(line {exc.lineno}, column {exc.colno})") from exc
    if not isinstance(obj, dict):
        raise ValidationError("payload must be a JSON object")
    return obj


def _unit_data(obj, context: str) -> UnitData:
    if not isinstance(obj, dict):
        raise ValidationError(f"{context} must be an object")
    try:
        return UnitData(r1=obj["r1"], r2=obj["r2"], degree=obj["degree"],
                        has_mu_ell=obj.get("has_mu_ell", False))
    except KeyError as exc:
        raise ValidationError(f"{context} is missing key {exc}") from exc


# ---------------------------------------------------------------------------
# subcommand handlers; each returns the result object for the report envelope


def _run_analyze(args) -> dict:
    pair = _as_pair(parse_group_spec(args.spec, args.element_cap))
    if args.mode == "weak":
        report = delta_exact(pair, args.prime, work_limit=args.work_limit)
    else:
        report = big_delta_exact(pair, args.prime, work_limit=args.work_limit)
    return report_to_dict(report, include_timing=args.timings)


def _run_scan(args) -> dict:
    spec = parse_group_spec(args.spec, args.element_cap)
    if isinstance(spec, GroupPair):
        raise ValidationError("scan expects a group, not a pair")
    result = scan_all_primes(spec, work_limit=args.work_limit)
    rows = []
    for row in result.rows:
        rows.append({
            "subgroup": group_to_literal(row.representative),
            "order": row.representative.order,
            "verdicts": {str(p): v for p, v in sorted(row.verdicts.items())},
            "fully_divisible": row.fully_divisible,
        })
    return {
        "group": group_to_literal(result.group),
        "order": result.group.order,
        "classes": rows,
        "fully_divisible_count": result.fully_divisible_count,
    }


def _run_dihedral_table(args) -> dict:
    lo, hi = _parse_range(args.n)
    rows = []
    for n in range(lo, hi + 1):
        pair = dihedral_pair(n)
        divisible = decide(pair, args.prime, "weak", work_limit=args.work_limit)
        row = {"n": n, "order": 2 * n, "divisible": divisible}
        if divisible:
            row["delta"] = delta_exact(pair, args.prime,
                                       work_limit=args.work_limit).delta
        rows.append(row)
    return {"prime": args.prime, "rows": rows}


def _parse_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo_text, hi_text = text.split("..", 1)
        lo, hi = _parse_int(lo_text, text), _parse_int(hi_text, text)
    else:
        lo = hi = _parse_int(text, text)
    if lo > hi or lo < 3:
        raise ValidationError(f"bad dihedral range {text!r} (need 3 <= lo <= hi)")
    return lo, hi


def _run_bound(args) -> dict:
    payload = _read_payload(args.payload)
    try:
        data = RankBoundInput(
            ell=payload["ell"],
            mode=payload["mode"],
            count=payload["count"],
            invariant=_fraction_from(payload.get("invariant", 1), "invariant"),
            unit_K=_unit_data(payload["unit_K"], "unit_K"),
            unit_F=_unit_data(payload["unit_F"], "unit_F"),
            rel_degree=payload["rel_degree"],
            kummer_rank=payload.get("kummer_rank", 0),
        )
    except KeyError as exc:
        raise ValidationError(f"bound payload is missing key {exc}") from exc
    result = rank_bound(data)
    return {
        "real_bound": _jsonable(result.real_bound),
        "effective_bound": result.effective_bound,
        "precondition_ok": result.precondition_ok,
    }


def _run_tower(args) -> dict:
    payload = _read_payload(args.payload)
    try:
        per_prime = {}
        for key, entry in payload["per_prime"].items():
            per_prime[int(key)] = PrimeTowerData(
                delta=entry["delta"],
                unit_K=_unit_data(entry["unit_K"], "unit_K"),
                unit_F=_unit_data(entry["unit_F"], "unit_F"),
                e_ell=entry["e_ell"],
            )
        data = TowerInput(
            omega_disc=payload["omega_disc"],
            omega_degree=payload["omega_degree"],
            closure_degree=payload["closure_degree"],
            per_prime=per_prime,
        )
    except KeyError as exc:
        raise ValidationError(f"tower payload is missing key {exc}") from exc
    verdict = tower_criteria(data)
    return {
        "pigeonhole_bound": verdict.pigeonhole_bound,
        "radical_criterion": verdict.radical_criterion,
        "simple_criterion": verdict.simple_criterion,
        "details": {
            str(ell): {
                "delta": d.delta,
                "bracket_integer": d.bracket_integer,
                "radicand": d.radicand,
                "holds": d.holds,
                "bracket_at_most_4n": d.bracket_at_most_4n,
            } for ell, d in sorted(verdict.details.items())
        },
    }


def _run_rayclass(args) -> dict:
    payload = _read_payload(args.payload)
    try:
        places = [PlaceData(residue_is_1_mod_ell=p["residue_is_1_mod_ell"],
                            in_T0=p.get("in_T0", False),
                            local_degree=p.get("local_degree", 0))
                  for p in payload["places"]]
        e, bound = rayclass_bound(payload["rk_cl_F"], payload["s_inf"],
                                  payload["ell"], places)
    except KeyError as exc:
        raise ValidationError(f"rayclass payload is missing key {exc}") from exc
    return {"e": e, "bound": bound}


def _run_malle(args) -> dict:
    pair = _as_pair(parse_group_spec(args.spec, args.element_cap))
    result = {"a": _jsonable(malle_a(pair))}
    if args.degree is not None:
        rk = {}
        for item in (args.rk or "").split(","):
            if not item:
                continue
            key, _, value = item.partition("=")
            rk[_parse_int(key, item)] = _parse_int(value, item)
        result["exponent"] = malle_exponent(pair, args.degree, rk)
    return result


def _run_census(args) -> dict:
    xs = [_parse_int(tok, args.x_list) for tok in args.x_list.split(",") if tok]
    if not xs:
        raise ValidationError("census needs at least one x value")
    rows, targets = ratio_table(xs, args.k, args.j, sieve_max=args.sieve_max)
    return {
        "k": args.k,
        "j": args.j,
        "targets": {"s_limit": _jsonable(targets.s_limit),
                    "pi_limit": _jsonable(targets.pi_limit)},
        "rows": [{
            "x": r.x, "pi_k": r.pi_k, "t_count": r.t_count, "s_count": r.s_count,
            "s_ratio": r.s_ratio, "pi_ratio": r.pi_ratio,
        } for r in rows],
    }


# ---------------------------------------------------------------------------
# rendering


def _render_json(envelope: dict) -> str:
    return json.dumps(envelope, sort_keys=True, indent=2) + "\n"


def _render_census_csv(result: dict) -> str:
    lines = ["x,k,j,pi_k,t_count,s_count,s_ratio,pi_ratio"]
    for row in result["rows"]:
        lines.append(f"{row['x']},{result['k']},{result['j']},{row['pi_k']},"
                     f"{row['t_count']},{row['s_count']},"
                     f"{row['s_ratio']!r},{row['pi_ratio']!r}")
    return "\n".join(lines) + "\n"


def _render_text(envelope: dict) -> str:
    # the text view is just indented JSON without the envelope
    return json.dumps(envelope["result"], sort_keys=True, indent=2) + "\n"


_HANDLERS = {
    "analyze": _run_analyze,
    "scan": _run_scan,
    "dihedral-table": _run_dihedral_table,
    "bound": _run_bound,
    "tower": _run_tower,
    "rayclass": _run_rayclass,
    "malle": _run_malle,
    "census": _run_census,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="elldiv",
        description="Exact divisibility invariants of group pairs and "
                    "class-group rank bound evaluation.")
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--element-cap", type=int, default=None,
                        help="max enumerated group elements (default 200000)")
    common.add_argument("--work-limit", type=int, default=None,
                        help="max subgroup-join steps (default 10^9)")
    common.add_argument("--sieve-max", type=int, default=None,
                        help="max sieve bound (default 10^8)")
    common.add_argument("--threads", type=int, default=1,
                        help="worker cap; results are schedule-independent")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--timings", action="store_true",
                        help="include elapsed times (breaks byte determinism)")

    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("analyze", parents=[common],
                       help="divisibility verdict and exact invariant for a pair")
    p.add_argument("spec", help="group or pair spec, e.g. pair:dihedral:8")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--mode", choices=("weak", "strong"), default="weak")

    p = sub.add_parser("scan", parents=[common],
                       help="all-primes divisibility census over subgroup classes")
    p.add_argument("spec", help="group spec, e.g. A:5")

    p = sub.add_parser("dihedral-table", parents=[common],
                       help="divisibility table for dihedral pairs")
    p.add_argument("--n", required=True, help="range like 3..24")
    p.add_argument("--prime", type=int, required=True)

    p = sub.add_parser("bound", parents=[common],
                       help="class-group rank lower bound from a JSON payload")
    p.add_argument("payload", help="path to JSON input, or - for stdin")

    p = sub.add_parser("tower", parents=[common],
                       help="infinite class-field-tower criteria from a JSON payload")
    p.add_argument("payload", help="path to JSON input, or - for stdin")

    p = sub.add_parser("rayclass", parents=[common],
                       help="cyclic-extension counting bound from a JSON payload")
    p.add_argument("payload", help="path to JSON input, or - for stdin")

    p = sub.add_parser("malle", parents=[common],
                       help="coset-orbit invariant a(G/H) and count exponent")
    p.add_argument("spec")
    p.add_argument("--degree", type=int, default=None,
                   help="degree d for the exponent formula")
    p.add_argument("--rk", default=None,
                   help="comma list ell=rank of base-field unit ranks")

    p = sub.add_parser("census", parents=[common],
                       help="exact integer censuses with normalized ratios")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--x-list", required=True, help="comma list of x values")

    return parser


def run(argv: Sequence[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if args.threads is not None and args.threads < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return 2
    handler = _HANDLERS[args.subcommand]
    try:
        result = handler(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    envelope = {
        "version": __version__,
        "request": {"subcommand": args.subcommand,
                    "arguments": _echo_args(args)},
        "result": result,
    }
    if args.format == "csv":
        if args.subcommand != "census":
            print("error: csv output is only available for census", file=sys.stderr)
            return 2
        sys.stdout.write(_render_census_csv(result))
    elif args.format == "text":
        sys.stdout.write(_render_text(envelope))
    else:
        sys.stdout.write(_render_json(envelope))
    return 0


def _echo_args(args) -> dict:
    skip = {"subcommand"}
    return {key: value for key, value in sorted(vars(args).items())
            if key not in skip and value is not None}


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
