"""Command-line front end.

    hyperdist construct {path,D,S,power} [--m --r --a --b --ell --k --in --seed]
    hyperdist rho --in FILE [--tol]
    hyperdist pendant --in FILE --ell L
    hyperdist enumerate --m --r --ell --k
    hyperdist verify theorem --m --r --ell --k [--mode]
    hyperdist verify grid [--item ITEM] [--m-max 8]
    hyperdist verify lemmas [identities|perron|monotone|all]

Exit codes: 0 all checks pass, 1 a check failed, 2 invalid input.
Defaults for --tol, --margin and --jobs may be overridden by the environment
variables HYPERDIST_TOL, HYPERDIST_MARGIN and HYPERDIST_JOBS.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import harness
from .constructions import TreeSkeleton, construct_D, construct_S, loose_path, power_of_tree
from .core import HypergraphError, from_json
from .enumeration import ClassDescriptor, canonical_code, enumerate_class, random_tree
from .spectral import DEFAULT_TOL, spectral_radius
from .structure import count_pendant_paths

CSV_COLUMNS = ["class_id", "member_code", "rho", "margin", "tolerance", "verdict"]
ITEMS = ("two_paths_max", "balanced_max", "single_path_max", "star_min", "pendant_edges_max")


def _env_float(name: str, default: float) -> float:
    return float(os.environ.get(name, default))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int)
    common.add_argument("--r", type=int, default=3)
    common.add_argument("--ell", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--a", type=int)
    common.add_argument("--b", type=int)
    common.add_argument("--tol", type=float, default=None,
                        help="relative residual tolerance (default 1e-10 for rho, 1e-12 inside verify)")
    common.add_argument("--margin", type=float, default=_env_float("HYPERDIST_MARGIN", harness.DEFAULT_MARGIN))
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=int(os.environ.get("HYPERDIST_JOBS", 1)))
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--in", dest="infile", help="input hypergraph JSON")

    p = argparse.ArgumentParser(prog="hyperdist", description="Distance spectra of power hypertrees.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="emit a named hypergraph as JSON")
    c.add_argument("kind", choices=("path", "D", "S", "power"))

    sub.add_parser("rho", parents=[common], help="distance spectral radius and Perron vector")
    sub.add_parser("pendant", parents=[common], help="pendant paths of length --ell")
    sub.add_parser("enumerate", parents=[common], help="list a class (m, r, ell, k) with rho values")

    v = sub.add_parser("verify", parents=[common], help="run theorem and lemma checks")
    v.add_argument("target", choices=("theorem", "grid", "lemmas"))
    v.add_argument("suite", nargs="?", default="all", choices=("identities", "perron", "monotone", "all"))
    v.add_argument("--mode", choices=("max", "min", "both"), default="both")
    v.add_argument("--item", choices=ITEMS + ("all",), default="all")
    v.add_argument("--m-max", type=int, default=8)
    return p


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise HypergraphError("missing required flag(s): " + ", ".join("--" + n for n in missing))


def _read_hypergraph(args):
    _need(args, "infile")
    try:
        with open(args.infile) as fh:
            return from_json(fh.read())
    except (OSError, json.JSONDecodeError) as exc:
        raise HypergraphError(f"cannot read {args.infile}: {exc}") from exc


def _solver_tol(args) -> float:
    return args.tol if args.tol is not None else _env_float("HYPERDIST_TOL", harness.SOLVER_TOL)


def cmd_construct(args):
    if args.kind == "path":
        _need(args, "m")
        H = loose_path(args.m, args.r)[0]
    elif args.kind == "D":
        _need(args, "m", "a", "b", "ell")
        H = construct_D(args.m, args.a, args.b, args.ell, args.r)[0]
    elif args.kind == "S":
        _need(args, "m", "k", "ell")
        H = construct_S(args.m, args.k, args.ell, args.r)[0]
    else:
        if args.infile:
            G = _read_hypergraph(args)
            T = TreeSkeleton.from_edges(G.n, G.edges)
        else:
            _need(args, "m")
            T = random_tree(args.m + 1, args.seed)
        H = power_of_tree(T, args.r)[0]
    return H.to_json_obj(), 0


def cmd_rho(args):
    H = _read_hypergraph(args)
    tol = args.tol if args.tol is not None else _env_float("HYPERDIST_TOL", DEFAULT_TOL)
    return spectral_radius(H, tol).to_json_obj(), 0


def cmd_pendant(args):
    H = _read_hypergraph(args)
    _need(args, "ell")
    return count_pendant_paths(H, args.ell).to_json_obj(), 0


def cmd_enumerate(args):
    _need(args, "m", "ell", "k")
    c = ClassDescriptor(args.m, args.r, args.ell, args.k)
    solver = harness.Solver(_solver_tol(args))
    rows = [{"code": canonical_code(T), "m": c.m, "k": c.k, "rho": harness._num(solver(H).rho)}
            for T, H in enumerate_class(c)]
    rows.sort(key=lambda row: row["code"])
    if args.format == "csv":
        return [[c.label, row["code"], row["rho"], "", "", ""] for row in rows], 0
    return rows, 0


def _extremal_rows(rep: harness.ExtremalReport) -> list[list]:
    out = []
    verdict = "pass" if rep.passed else "fail"
    for code, rho in rep.members:
        margin = ""
        if code == rep.argmax and rep.max_gap is not None:
            margin = harness._num(rep.max_gap)
        elif code == rep.argmin and rep.min_gap is not None:
            margin = harness._num(rep.min_gap)
        out.append([rep.descriptor.label, code, harness._num(rho), margin, rep.tolerance, verdict])
    return out


def _lemma_row(rep: harness.LemmaReport) -> list:
    strict = [c.value for c in rep.checks if c.kind == "strict"]
    resid = [c.value for c in rep.checks if c.kind in ("identity", "equal")]
    margin = harness._num(min(strict)) if strict else (harness._num(max(resid)) if resid else "")
    return [f"{rep.lemma}:{rep.instance}", "", "", margin, rep.tolerance, rep.verdict]


def cmd_verify(args):
    tol = _solver_tol(args)
    if args.target == "theorem":
        _need(args, "m", "ell", "k")
        c = ClassDescriptor(args.m, args.r, args.ell, args.k)
        rep = harness.verify_extremal(c, args.mode, harness.Solver(tol), args.margin)
        payload = _extremal_rows(rep) if args.format == "csv" else rep.to_json_obj()
        return payload, 0 if rep.passed else 1

    if args.target == "grid":
        items = ITEMS if args.item == "all" else (args.item,)
        results = [harness.theorem_campaign(i, args.m_max, args.r, args.jobs, None, args.margin, tol) for i in items]
    else:
        results = []
        if args.suite in ("identities", "all"):
            results.append(harness.identity_campaign(jobs=args.jobs, margin=args.margin, tol=tol))
        if args.suite in ("perron", "all"):
            results.extend(harness.perron_campaigns(jobs=args.jobs, margin=args.margin, tol=tol).values())
        if args.suite in ("monotone", "all"):
            results.extend(harness.monotone_campaigns(jobs=args.jobs, margin=args.margin, tol=tol).values())
    ok = all(r.passed and r.stats.ok for r in results)
    if args.format == "csv":
        rows = []
        for res in results:
            for rep in res.reports:
                rows.extend(_extremal_rows(rep) if isinstance(rep, harness.ExtremalReport) else [_lemma_row(rep)])
        return rows, 0 if ok else 1
    payload = {
        "campaigns": [
            {
                "name": res.name,
                "reports": len(res.reports),
                "configurations": res.configurations,
                "failures": [r.to_json_obj() for r in res.failures],
                "sanity": {
                    "instances": res.stats.instances,
                    "max_residual_ratio": harness._num(res.stats.max_residual_ratio),
                    "min_rho_minus_status": harness._num(res.stats.min_rho_minus_status),
                    "violations": res.stats.violations,
                },
                "verdict": "pass" if res.passed and res.stats.ok else "fail",
            }
            for res in results
        ],
        "margin": args.margin,
        "tolerance": tol,
        "verdict": "pass" if ok else "fail",
    }
    return payload, 0 if ok else 1


COMMANDS = {
    "construct": cmd_construct,
    "rho": cmd_rho,
    "pendant": cmd_pendant,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
}


def _render(payload, fmt: str) -> str:
    if fmt == "csv" and isinstance(payload, list) and (not payload or isinstance(payload[0], list)):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        w.writerows(payload)
        return buf.getvalue()
    return json.dumps(payload, indent=2) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, code = COMMANDS[args.command](args)
    except (HypergraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = _render(payload, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
