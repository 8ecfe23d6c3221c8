"""Command-line front end.

    nichols {cartan,roots,relations,hilbert,verify} [INPUT] [--json] [--max-degree D]

INPUT is a JSON file (``-`` or absent: stdin) of the form
``{"theta": 2, "N": 5, "exps": [[1, 4], [0, 1]]}``, optionally with
``"caps": {"max_degree": .., "max_objects": .., "max_root_height": ..}``.
``--example NAME`` reads one of the bundled inputs instead.

The degree cap is NICHOLS_MAX_DEGREE when set, else the input's
``max_degree``, else 8; ``--max-degree`` may only lower it.

Exit codes: 0 success, 1 unreadable input, 2 root system not finite or a
cap was exceeded, 3 a verification check failed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from importlib import resources

from .cartanweyl import (
    DEFAULT_MAX_HEIGHT,
    DEFAULT_MAX_OBJECTS,
    Bicharacter,
    CartanError,
    RootSystemError,
    cartan_matrix,
    reflect,
    report,
    root_system,
)
from .quotient import DEFAULT_MAX_DEGREE, CapExceeded, Nichols, max_degree_from_env
from .relations import check_soundness, emit_relations

EXIT_OK, EXIT_PARSE, EXIT_CAP, EXIT_FAIL = 0, 1, 2, 3
MAX_THETA = 8


class InputError(ValueError):
    pass


@dataclass
class InputSpec:
    chi: Bicharacter
    name: str | None = None
    max_degree: int | None = None
    max_objects: int = DEFAULT_MAX_OBJECTS
    max_root_height: int = DEFAULT_MAX_HEIGHT


def _positive_int(data, key, default):
    value = data.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise InputError(f"{key} must be a non-negative integer")
    return value


def parse_input(text: str, max_theta: int = MAX_THETA) -> InputSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("input must be a JSON object")
    for key in ("N", "exps"):
        if key not in data:
            raise InputError(f"missing field {key!r}")
    N, exps = data["N"], data["exps"]
    if isinstance(N, bool) or not isinstance(N, int) or N < 1:
        raise InputError("N must be a positive integer")
    if not isinstance(exps, list) or not exps or not all(isinstance(r, list) for r in exps):
        raise InputError("exps must be a non-empty list of rows")
    theta = data.get("theta", len(exps))
    if isinstance(theta, bool) or not isinstance(theta, int) or not 1 <= theta <= max_theta:
        raise InputError(f"theta must be an integer between 1 and {max_theta}")
    if len(exps) != theta or any(len(r) != theta for r in exps):
        raise InputError("exps must be a theta x theta matrix")
    if not all(isinstance(e, int) and not isinstance(e, bool) for r in exps for e in r):
        raise InputError("exps entries must be integers")
    caps = data.get("caps", {})
    if not isinstance(caps, dict):
        raise InputError("caps must be an object")
    md = caps.get("max_degree")
    if md is not None:
        md = _positive_int(caps, "max_degree", None)
    return InputSpec(
        chi=Bicharacter(N, exps),
        name=data.get("name"),
        max_degree=md,
        max_objects=_positive_int(caps, "max_objects", DEFAULT_MAX_OBJECTS) or DEFAULT_MAX_OBJECTS,
        max_root_height=_positive_int(caps, "max_root_height", DEFAULT_MAX_HEIGHT) or DEFAULT_MAX_HEIGHT,
    )


# -- bundled examples ---------------------------------------------------


def example_names() -> list[str]:
    root = resources.files("nichols") / "examples"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def example_text(name: str) -> str:
    path = resources.files("nichols") / "examples" / f"{name}.json"
    if not path.is_file():
        raise InputError(f"no bundled example named {name!r}")
    return path.read_text()


def load_example(name: str) -> InputSpec:
    return parse_input(example_text(name))


# -- reports ------------------------------------------------------------


def cartan_report(spec: InputSpec) -> dict:
    chi = spec.chi
    c = cartan_matrix(chi)
    return {
        "input": chi.to_json(),
        "cartan": [list(r) for r in c.a],
        "m": [list(r) for r in c.m],
        "cartan_vertex": list(c.cartan_vertex),
    }


def _roots(spec: InputSpec):
    return root_system(spec.chi, max_objects=spec.max_objects, max_height=spec.max_root_height)


def roots_report(spec: InputSpec) -> dict:
    rs = _roots(spec)
    out = {"input": spec.chi.to_json()}
    out.update(report(rs))
    out["cartan_orbit"] = [list(b) for b in rs.cartan_orbit]
    return out


def _max_degree(spec: InputSpec, requested: int | None) -> int:
    """The truncation degree; NICHOLS_MAX_DEGREE overrides the input's own cap."""
    if os.environ.get("NICHOLS_MAX_DEGREE", "").strip():
        cap = max_degree_from_env()
    elif spec.max_degree is not None:
        cap = spec.max_degree
    else:
        cap = DEFAULT_MAX_DEGREE
    if requested is None:
        return cap
    if requested > cap:
        raise CapExceeded(f"--max-degree {requested} is above the degree cap {cap}")
    return requested


def relations_report(spec: InputSpec, check: bool = True, elements: bool = True) -> dict:
    chi = spec.chi
    rs = _roots(spec)
    nq = Nichols(chi)
    rels = emit_relations(chi, rs, nq)
    status = dict.fromkeys(range(len(rels)))
    if check:
        for k, (_, ok) in enumerate(check_soundness(rels, nq)):
            status[k] = ok
    items = []
    for k, r in enumerate(rels):
        item = r.to_json()
        if check:
            item["in_radical"] = status[k]
        if elements and r.element is not None:
            item["element"] = r.element.to_json()
        extra = {key: v for key, v in r.extra.items() if isinstance(v, (int, str, list))}
        if extra:
            item["extra"] = extra
        items.append(item)
    return {"input": chi.to_json(), "relations": items}


def hilbert_report(spec: InputSpec, max_degree: int | None = None) -> dict:
    cap = _max_degree(spec, max_degree)
    nq = Nichols(spec.chi, max_degree=cap)
    series = nq.hilbert_series(cap)
    rows = [
        {"degree": list(d), "gram_dim": g, "pbw_dim": p, "match": g == p}
        for d, (g, p) in sorted(series.items(), key=lambda kv: (sum(kv[0]), tuple(-x for x in kv[0])))
    ]
    by_total: dict[int, int] = {}
    for d, (g, _) in series.items():
        by_total[sum(d)] = by_total.get(sum(d), 0) + g
    return {
        "input": spec.chi.to_json(),
        "max_degree": cap,
        "components": rows,
        "by_total_degree": [by_total[t] for t in sorted(by_total)],
        "all_match": all(r["match"] for r in rows),
    }


def _check(name, ok, detail=None):
    out = {"check": name, "status": "PASS" if ok is True else ("SKIP" if ok is None else "FAIL")}
    if detail:
        out["detail"] = detail
    return out


def verify_report(spec: InputSpec, max_degree: int | None = None) -> dict:
    """The full battery: soundness, Hilbert series, PBW roots, reflections."""
    chi = spec.chi
    cap = _max_degree(spec, max_degree)
    rs = _roots(spec)
    nq = Nichols(chi, max_degree=cap)
    checks = []

    rels = emit_relations(chi, rs, nq)
    sound = check_soundness(rels, nq)
    bad = [f"{r.family} {list(r.indices)}" for r, ok in sound if ok is False]
    unchecked = [f"{r.family} {list(r.indices)}: {r.diagnostic}" for r, ok in sound if ok is None]
    ok = False if bad else (None if unchecked else True)
    checks.append(_check("relations in radical", ok, bad + unchecked))

    series = nq.hilbert_series(cap)
    diff = [f"{list(d)}: gram {g}, pbw {p}" for d, (g, p) in sorted(series.items()) if g != p]
    checks.append(_check(f"hilbert gram = pbw through degree {cap}", not diff, diff))

    pbw = nq.pbw_generators(cap)
    lyndon = sorted(g.degree for g in pbw.generators)
    expected = sorted(b for b in rs.positive if sum(b) <= cap)
    detail = [] if lyndon == expected else [f"lyndon {lyndon}", f"roots {expected}"]
    checks.append(_check(f"good Lyndon degrees = roots through degree {cap}", not detail, detail))

    checks.append(_check("reflection consistency", *_reflection_consistency(rs)))
    status = [c["status"] for c in checks]
    return {
        "input": chi.to_json(),
        "max_degree": cap,
        "checks": checks,
        "passed": all(s == "PASS" for s in status),
    }


def _reflection_consistency(rs) -> tuple[bool, list[str]]:
    problems = []
    th = rs.chi.theta
    for x, (obj, c) in enumerate(zip(rs.objects, rs.cartan)):
        roots = set(rs.roots[x])
        for p in range(th):
            y = reflect(obj, p)
            if reflect(y, p).key() != obj.key():
                problems.append(f"object {x}: s_{p + 1} is not an involution")
            a2 = cartan_matrix(y).a
            for j in range(th):
                if a2[p][j] != c.a[p][j]:
                    problems.append(f"object {x}: a_{p + 1}{j + 1} changes under s_{p + 1}")
        for i in range(th):
            for j in range(th):
                if i == j:
                    continue
                k = 0
                while tuple((k + 1) * (t == i) + (t == j) for t in range(th)) in roots:
                    k += 1
                if -c.a[i][j] != k:
                    problems.append(f"object {x}: a_{i + 1}{j + 1} = {c.a[i][j]} but max k = {k}")
    return not problems, problems


# -- text rendering -----------------------------------------------------


def _fmt_matrix(rows) -> str:
    return "\n".join("  " + " ".join(f"{v:>3}" for v in r) for r in rows)


def render_text(cmd: str, rep: dict) -> str:
    lines = []
    inp = rep["input"]
    lines.append(f"theta={inp['theta']} N={inp['N']} exps={inp['exps']}")
    if cmd == "cartan":
        lines.append("Cartan matrix:")
        lines.append(_fmt_matrix(rep["cartan"]))
        lines.append("Cartan vertices: " + " ".join(str(i + 1) for i, v in enumerate(rep["cartan_vertex"]) if v))
    elif cmd == "roots":
        lines.append(f"objects: {len(rep['objects'])}   positive roots: {len(rep['roots'])}")
        for r in rep["roots"]:
            mark = "*" if r["cartan_orbit"] else " "
            lines.append(f" {mark} {r['root']}  q = z{r['q']['order']}^{r['q']['exponent']}  N = {r['N']}")
        lines.append("(* in the Cartan orbit)")
    elif cmd == "relations":
        for r in rep["relations"]:
            st = {True: "ok", False: "NOT IN RADICAL", None: "unchecked"}[r.get("in_radical")]
            lines.append(f"{r['family']:<16} {str(r['indices']):<12} deg {r['degree']}  [{st}]  {r['label']}")
            if "diagnostic" in r:
                lines.append(f"    {r['diagnostic']}")
    elif cmd == "hilbert":
        lines.append(f"{'degree':<16}{'gram':>8}{'pbw':>8}  match")
        for r in rep["components"]:
            lines.append(f"{str(r['degree']):<16}{r['gram_dim']:>8}{r['pbw_dim']:>8}  {'yes' if r['match'] else 'NO'}")
        lines.append("by total degree: " + " ".join(map(str, rep["by_total_degree"])))
    elif cmd == "verify":
        for c in rep["checks"]:
            lines.append(f"{c['status']:<5} {c['check']}")
            for d in c.get("detail", [])[:20]:
                lines.append(f"      {d}")
    return "\n".join(lines)


# -- entry point --------------------------------------------------------

COMMANDS = {
    "cartan": lambda spec, args: cartan_report(spec),
    "roots": lambda spec, args: roots_report(spec),
    "relations": lambda spec, args: relations_report(spec, check=not args.no_check, elements=args.json),
    "hilbert": lambda spec, args: hilbert_report(spec, args.max_degree),
    "verify": lambda spec, args: verify_report(spec, args.max_degree),
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nichols", description="Nichols algebras of diagonal type")
    ap.add_argument("--list-examples", action="store_true", help="list the bundled example inputs and exit")
    sub = ap.add_subparsers(dest="command")
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("input", nargs="?", default="-", help="JSON input file, '-' for stdin")
        p.add_argument("--example", help="use a bundled example instead of INPUT")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if name in ("hilbert", "verify"):
            p.add_argument("--max-degree", type=int, default=None)
        if name == "relations":
            p.add_argument("--no-check", action="store_true", help="skip the radical membership test")
    return ap


def _read(args) -> str:
    if args.example:
        return example_text(args.example)
    if args.input == "-":
        return sys.stdin.read()
    try:
        with open(args.input) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {args.input}: {exc}") from exc


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.list_examples:
        for name in example_names():
            print(name)
        return EXIT_OK
    if args.command is None:
        ap.print_help(sys.stderr)
        return EXIT_PARSE
    try:
        spec = parse_input(_read(args))
        max_degree_from_env()
        if getattr(args, "max_degree", None) is not None and args.max_degree < 0:
            raise InputError("--max-degree must be non-negative")
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        rep = COMMANDS[args.command](spec, args)
    except (CartanError, RootSystemError, CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    if args.json:
        print(json.dumps(rep, sort_keys=True, indent=1))
    else:
        print(render_text(args.command, rep))
    if args.command == "verify" and not rep["passed"]:
        if any(c["status"] == "FAIL" for c in rep["checks"]):
            return EXIT_FAIL
        return EXIT_CAP
    return EXIT_OK


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
