"""Command-line front end: ``ellblocks <command> [options]``.

Exit status is 0 on success, 1 when a verified statement fails (the witness
is in the report), 2 on invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Sequence

from . import verification as V
from .arith import CycloValue
from .blocks import GroupModel, TheoremViolation
from .normalizer import build_holomorph, holomorph_blocks
from .partitions import Partition, is_ell_core
from .symmetric import character_table
from .wreath import WreathModel, cyclic_base


class UsageError(ValueError):
    pass


def _cyclo_json(v: CycloValue) -> dict:
    """Coordinates in the basis ``1, zeta, ..., zeta^(phi(L)-1)`` of ``Q(zeta_L)``."""
    return {"conductor": v.conductor, "coeffs": list(v.reduced())}


def _table_json(model: GroupModel) -> dict:
    V._check_cells(model.nclasses, model.name)
    return {
        "group": model.name,
        "order": model.order,
        "conductor": model.conductor,
        "classes": [c.label for c in model.classes],
        "class_sizes": [c.size for c in model.classes],
        "characters": list(model.characters),
        "values": [[_cyclo_json(model.value(i, c)) for c in range(model.nclasses)]
                   for i in range(model.nchars)],
    }


# -- CSV flattening ------------------------------------------------------------

def _csv(rows: list[list[Any]]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _table_csv(obj: dict) -> str:
    rows: list[list[Any]] = [["character"] + obj["classes"]]
    for name, vals in zip(obj["characters"], obj["values"]):
        cells = []
        for v in vals:
            if isinstance(v, dict) and not any(v["coeffs"][1:]):
                cells.append(v["coeffs"][0])
            elif isinstance(v, dict):
                cells.append(" ".join(map(str, v["coeffs"])) + f" @{v['conductor']}")
            else:
                cells.append(v)
        rows.append([name] + cells)
    return _csv(rows)


def _blocks_csv(obj: dict) -> str:
    rows: list[list[Any]] = [["character", "block", "defect"]]
    for b, block in enumerate(obj["blocks"]):
        for ch in block:
            rows.append([ch, b, obj["defects"][ch]])
    return _csv(rows)


def _reports_csv(reports: list[dict]) -> str:
    rows: list[list[Any]] = [["theorem", "instance", "pass", "witnesses"]]
    for r in reports:
        inst = " ".join(f"{k}={v}" for k, v in r["instance"].items())
        rows.append([r["theorem"], inst, r["pass"], json.dumps(r["witnesses"])])
    return _csv(rows)


# -- commands ------------------------------------------------------------------

def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command}: missing --{', --'.join(missing)}")


def cmd_sn_table(args):
    _need(args, "n")
    if args.n < 0:
        raise UsageError(f"--n must be >= 0, got {args.n}")
    table = character_table(args.n)
    V._check_cells(len(table.classes), f"S_{args.n}")
    return table.to_dict(), _table_csv, True


def cmd_wreath_table(args):
    _need(args, "ell", "w")
    if args.ell < 2 or args.w < 1:
        raise UsageError("wreath-table needs --ell >= 2 and --w >= 1")
    base = cyclic_base(args.ell) if args.base == "cyclic" else build_holomorph(args.ell).model
    V._check_cells(V._wreath_class_count(base.nclasses, args.w), f"{base.name} wr S_{args.w}")
    model = WreathModel(base, args.w)
    return _table_json(model), _table_csv, True


def cmd_holomorph(args):
    _need(args, "ell")
    if not 2 <= args.ell:
        raise UsageError(f"--ell must be >= 2, got {args.ell}")
    hol = build_holomorph(args.ell)
    out = _table_json(hol.model)
    out["pi_class"] = hol.model.classes[hol.pi_class].label
    out["blocks"] = holomorph_blocks(args.ell).to_dict(include_contributions=False)["blocks"]
    return out, _table_csv, True


def _sn_args(args):
    _need(args, "n", "ell")
    if args.n < 1:
        raise UsageError(f"--n must be >= 1, got {args.n}")
    if args.ell < 2:
        raise UsageError(f"--ell must be >= 2, got {args.ell}")


def cmd_blocks(args):
    _sn_args(args)
    return V.sn_blocks(args.n, args.ell).to_dict(), _blocks_csv, True


def cmd_defects(args):
    _sn_args(args)
    rep = V.sn_blocks(args.n, args.ell).to_dict(include_contributions=False)
    return rep, _blocks_csv, True


def _verify_one(kind: str, args) -> list[V.Report]:
    if kind in ("nakayama", "hook-defect", "max-weight"):
        _sn_args(args)
        fn = {"nakayama": V.verify_nakayama, "hook-defect": V.verify_hook_defect,
              "max-weight": V.verify_max_defect_weight}[kind]
        return [fn(args.n, args.ell)]
    if kind == "isometry":
        _sn_args(args)
        if args.core is not None:
            core = Partition.parse(args.core)
            if not is_ell_core(core, args.ell):
                raise UsageError(f"{core} is not a {args.ell}-core")
            return [V.find_sign_isometry(args.n, args.ell, core)]
        return [V.find_sign_isometry(n, ell, core) for n, ell, core in V.isometry_instances(args.n)
                if n == args.n and ell == args.ell]
    if kind in ("congruence", "wreath-defect"):
        _need(args, "ell", "w")
        fn = V.verify_congruence if kind == "congruence" else V.verify_wreath_defects
        return [fn(args.ell, args.w)]
    _need(args, "ell", "w", "r")
    fn = V.mckay_counts if kind == "mckay" else V.per_defect_counts
    return [fn(args.ell, args.w, args.r)]


def cmd_verify(args):
    reports = [r.to_dict() for r in _verify_one(args.kind, args)]
    ok = all(r["pass"] for r in reports)
    out = reports[0] if len(reports) == 1 else {"reports": reports}
    return out, lambda o: _reports_csv(reports), ok


# -- sweep -----------------------------------------------------------------------

def _sweep_task(task: tuple) -> dict:
    kind, key = task
    fn: Callable[..., V.Report] = {
        "nakayama": V.verify_nakayama,
        "hook-defect": V.verify_hook_defect,
        "max-weight": lambda ell, w, r: V.verify_max_defect_weight(ell * w + r, ell),
        "isometry": lambda n, ell, core: V.find_sign_isometry(n, ell, Partition.parse(core)),
        "wreath-defect": V.verify_wreath_defects,
        "congruence": V.verify_congruence,
        "holomorph": _holomorph_report,
        "mckay": V.mckay_counts,
        "per-defect": V.per_defect_counts,
    }[kind]
    try:
        return fn(*key).to_dict()
    except V.TooLarge as e:
        return {"instance": {"key": list(key)}, "theorem": kind, "pass": None,
                "witnesses": [], "data": {"skipped": str(e)}}


def _holomorph_report(ell: int) -> V.Report:
    try:
        rep = holomorph_blocks(ell)
    except TheoremViolation as e:
        return V.Report("holomorph", {"ell": ell}, False, [str(e)])
    return V.Report("holomorph", {"ell": ell}, True, [],
                    {"blocks": [len(b) for b in rep.blocks]})


SWEEP_KINDS = ("nakayama", "hook-defect", "isometry", "max-weight", "wreath-defect",
               "congruence", "holomorph", "mckay", "per-defect")


def sweep_tasks(nmax: int = 10, nmax_mckay: int = 12, wreath_bound: int = 5000,
                mckay_bound: int = 5000, hol_max: int = 7,
                kinds: Sequence[str] = SWEEP_KINDS) -> list[tuple]:
    tasks: list[tuple] = []
    for kind in kinds:
        if kind in ("nakayama", "hook-defect"):
            tasks += [(kind, key) for key in V.nakayama_instances(nmax)]
        elif kind == "isometry":
            tasks += [(kind, (n, ell, str(core))) for n, ell, core in V.isometry_instances(nmax)]
        elif kind == "max-weight":
            tasks += [(kind, key) for key in V.max_weight_instances(nmax_mckay)]
        elif kind in ("wreath-defect", "congruence"):
            tasks += [(kind, key) for key in V.wreath_instances(wreath_bound)]
        elif kind == "holomorph":
            tasks += [(kind, (ell,)) for ell in range(2, hol_max + 1)]
        else:
            tasks += [(kind, key) for key in V.mckay_instances(nmax_mckay, mckay_bound)]
    return tasks


def run_sweep(tasks: list[tuple], jobs: int = 1) -> list[dict]:
    if jobs <= 1:
        return [_sweep_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_sweep_task, tasks, chunksize=4))


def cmd_sweep(args):
    kinds = args.only.split(",") if args.only else list(SWEEP_KINDS)
    unknown = set(kinds) - set(SWEEP_KINDS)
    if unknown:
        raise UsageError(f"unknown sweep kinds: {', '.join(sorted(unknown))}")
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    tasks = sweep_tasks(args.nmax, args.nmax_mckay, args.wreath_bound, args.mckay_bound,
                        args.hol_max, kinds)
    reports = run_sweep(tasks, args.jobs)
    if not args.full:
        for r in reports:
            if "skipped" not in r["data"]:
                r["data"] = {}
    summary: dict[str, dict[str, int]] = {}
    for r in reports:
        s = summary.setdefault(r["theorem"], {"passed": 0, "failed": 0, "skipped": 0})
        s["passed" if r["pass"] else "skipped" if r["pass"] is None else "failed"] += 1
    ok = all(r["pass"] is not False for r in reports)
    return {"summary": summary, "reports": reports}, lambda o: _reports_csv(reports), ok


# -- entry point -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ellblocks",
                                     description="Generalized l-blocks and l-defects.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="output file (default: standard output)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sn-table", parents=[common], help="character table of S_n")
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_sn_table)

    p = sub.add_parser("wreath-table", parents=[common], help="character table of B wr S_w")
    p.add_argument("--base", choices=("cyclic", "holomorph"), default="cyclic")
    p.add_argument("--ell", type=int)
    p.add_argument("--w", type=int)
    p.set_defaults(func=cmd_wreath_table)

    p = sub.add_parser("holomorph", parents=[common], help="table and blocks of Hol(Z_ell)")
    p.add_argument("--ell", type=int)
    p.set_defaults(func=cmd_holomorph)

    for name, func, text in (("blocks", cmd_blocks, "blocks and contributions of S_n"),
                             ("defects", cmd_defects, "blocks and defects of S_n")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--n", type=int)
        p.add_argument("--ell", type=int)
        p.set_defaults(func=func)

    p = sub.add_parser("verify", parents=[common], help="check one statement on one instance")
    p.add_argument("kind", choices=("nakayama", "hook-defect", "max-weight", "isometry",
                                    "wreath-defect", "congruence", "mckay", "per-defect"))
    for flag in ("--n", "--ell", "--w", "--r"):
        p.add_argument(flag, type=int)
    p.add_argument("--core", help='ell-core for isometry, e.g. "1" or "-"')
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", parents=[common], help="run the verification sweeps")
    p.add_argument("--nmax", type=int, default=10)
    p.add_argument("--nmax-mckay", type=int, default=12)
    p.add_argument("--wreath-bound", type=int, default=5000)
    p.add_argument("--mckay-bound", type=int, default=5000)
    p.add_argument("--hol-max", type=int, default=7)
    p.add_argument("--only", help="comma-separated subset of: " + ",".join(SWEEP_KINDS))
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--full", action="store_true", help="keep per-instance data")
    p.set_defaults(func=cmd_sweep)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:  # argparse has already printed usage or help
        return e.code if isinstance(e.code, int) else 2
    try:
        obj, to_csv, ok = args.func(args)
    except TheoremViolation as e:
        print(f"theorem violation: {e}", file=sys.stderr)
        return 1
    except (UsageError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    text = to_csv(obj) if args.format == "csv" else json.dumps(obj, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
