"""
Command-line front end.

    gba list
    gba run <scenario> [--q N] [--group LABEL] [--subgroup NAME] [--format json|csv|dot]
                       [--out DIR] [--cap-group N] [--cap-omega N] [--config FILE]
    gba sweep <family> --q 4,7,8,9,11,13 [...]

Exit status: 0 if every report passes, 1 if any fails, 2 if any is unknown (and none fail).
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import logging
import os
import sys
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import scenarios
from .errors import CapExceededError, GBAError, UnsupportedFormatError
from .gamma import to_dot

SCHEMA = "gba-report/1"
FORMATS = ("json", "csv", "dot")
CONFIG_KEYS = {"cap_group": int, "cap_omega": int, "out": str, "format": str}

log = logging.getLogger("gba")


@dataclass
class Report:
    id: str
    params: dict
    status: str                 # pass / fail / unknown
    measured: dict
    expected: dict
    witness: object
    seconds: float
    notes: str = ""
    graph: object = None

    def as_dict(self) -> dict:
        d = {"schema": SCHEMA, "id": self.id, "params": self.params, "status": self.status,
             "measured": self.measured, "expected": self.expected, "witness": self.witness,
             "seconds": round(self.seconds, 3)}
        if self.notes:
            d["notes"] = self.notes
        return jsonable(d)


def jsonable(x):
    """Plain JSON types; dict keys become strings, numpy scalars/arrays become Python ones."""
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [jsonable(v) for v in items]
    if isinstance(x, np.ndarray):
        return jsonable(x.tolist())
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    return x


def run(scenario_id: str, overrides: dict | None = None) -> Report:
    sc = scenarios.get(scenario_id)
    params = dict(sc.defaults)
    params.update({k: v for k, v in (overrides or {}).items() if v is not None})
    t0 = time.perf_counter()
    try:
        out = sc.fn(params)
    except CapExceededError as e:
        return Report(sc.id, jsonable(params), "unknown", {"cap": str(e)}, {}, None,
                      time.perf_counter() - t0)
    dt = time.perf_counter() - t0
    status = {True: "pass", False: "fail", None: "unknown"}[out.passed]
    witness = out.witness
    if status == "fail":
        # attach what differs plus the parameters needed to replay it
        diff = {k: {"expected": v, "measured": out.measured.get(k)}
                for k, v in out.expected.items() if out.measured.get(k) != v}
        witness = {"discrepancy": diff, "replay": {"scenario": sc.id, "params": params},
                   "certificate": witness}
    return Report(sc.id, jsonable(params), status, jsonable(out.measured),
                  jsonable(out.expected), jsonable(witness), dt, out.notes, out.graph)


def sweep(family: str, q_list, overrides: dict | None = None) -> list[Report]:
    if family in scenarios.FAMILIES:
        sid, key = scenarios.FAMILIES[family]
    else:
        sid, key = scenarios.get(family).id, "q"
    return [run(sid, {**(overrides or {}), key: int(q)}) for q in q_list]


def _csv_text(reports) -> str:
    buf = io.StringIO()
    cols = ["id", "params", "status", "seconds", "measured", "expected", "witness"]
    w = csv.writer(buf)
    w.writerow(cols)
    for r in reports:
        d = r.as_dict()
        w.writerow([d["id"], json.dumps(d["params"], sort_keys=True), d["status"], d["seconds"],
                    json.dumps(d["measured"], sort_keys=True),
                    json.dumps(d["expected"], sort_keys=True),
                    json.dumps(d["witness"], sort_keys=True)])
    return buf.getvalue()


def render(reports, fmt: str) -> str:
    reports = list(reports)
    if fmt == "json":
        body = [r.as_dict() for r in reports]
        return json.dumps(body[0] if len(body) == 1 else body, indent=2, ensure_ascii=False) + "\n"
    if fmt == "csv":
        return _csv_text(reports)
    if fmt == "dot":
        if any(r.graph is None for r in reports):
            raise UnsupportedFormatError("dot output needs a graph-bearing scenario")
        return "".join(to_dot(r.graph, name=r.id) for r in reports)
    raise UnsupportedFormatError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")


def _stem(r: Report) -> str:
    q = r.params.get("q")
    return r.id + (f"-q{q}" if isinstance(q, int) else "")


def emit(reports, fmt: str, out_dir: str | None = None, stream=None) -> list[Path]:
    """Write reports to out_dir (one file per report, atomically) or to a stream."""
    reports = list(reports)
    if fmt not in FORMATS:
        raise UnsupportedFormatError(f"unknown format {fmt!r}")
    if out_dir is None:
        (stream or sys.stdout).write(render(reports, fmt))
        return []
    d = Path(out_dir)
    d.mkdir(parents=True, exist_ok=True)
    paths = []
    groups = [reports] if fmt == "csv" and len(reports) > 1 else [[r] for r in reports]
    for grp in groups:
        name = (_stem(grp[0]) if len(grp) == 1 else grp[0].id + "-sweep") + "." + fmt
        text = render(grp, fmt)
        fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, d / name)
        paths.append(d / name)
    return paths


def exit_code(reports) -> int:
    st = {r.status for r in reports}
    if "fail" in st:
        return 1
    if "unknown" in st:
        return 2
    return 0


def load_config(path: str | None) -> dict:
    """key = value lines (no sections); unknown keys are ignored with a warning."""
    p = Path(path) if path else Path("gba.conf")
    if not p.exists():
        if path:
            raise GBAError(f"config file {path} not found")
        return {}
    cp = configparser.ConfigParser()
    cp.read_string("[gba]\n" + p.read_text(encoding="utf-8"))
    out = {}
    for k, v in cp["gba"].items():
        key = k.replace("-", "_")
        if key not in CONFIG_KEYS:
            log.warning("ignoring unknown config key %s", k)
            continue
        out[key] = CONFIG_KEYS[key](v)
    return out


def _parse_q(text: str):
    vals = [int(x) for x in text.split(",") if x.strip()]
    return vals[0] if len(vals) == 1 else vals


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gba", description="replay binary-action verifications")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p):
        p.add_argument("--format", choices=FORMATS, default=None)
        p.add_argument("--out", default=None, help="output directory (default: stdout)")
        p.add_argument("--cap-group", type=int, default=None)
        p.add_argument("--cap-omega", type=int, default=None)
        p.add_argument("--config", default=None, help="key=value file (default ./gba.conf)")

    r = sub.add_parser("run", help="run one scenario")
    r.add_argument("scenario")
    r.add_argument("--q", type=_parse_q, default=None)
    r.add_argument("--group", default=None)
    r.add_argument("--subgroup", default=None)
    common(r)
    s = sub.add_parser("sweep", help="run a scenario family over several q")
    s.add_argument("family")
    s.add_argument("--q", required=True, type=lambda t: [int(x) for x in t.split(",")])
    common(s)
    sub.add_parser("list", help="list registered scenarios")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    if args.cmd == "list":
        for sc in scenarios.REGISTRY.values():
            print(f"{sc.id:30s} [{sc.basis}] {sc.summary}")
            print(f"{'':30s} covers: {', '.join(sc.covers)}")
        fams = ", ".join(f"{k} -> {v[0]}" for k, v in scenarios.FAMILIES.items())
        print(f"\nsweep families: {fams}")
        return 0
    try:
        cfg = load_config(args.config)
        fmt = args.format or cfg.get("format", "json")
        out_dir = args.out or cfg.get("out")
        over = {"cap_group": args.cap_group or cfg.get("cap_group"),
                "cap_omega": args.cap_omega or cfg.get("cap_omega")}
        if args.cmd == "run":
            over.update(group=args.group, subgroup=args.subgroup)
            sc = scenarios.get(args.scenario)
            if isinstance(args.q, list) and not isinstance(sc.defaults.get("q"), list):
                reports = sweep(sc.id, args.q, over)
            else:
                reports = [run(sc.id, {**over, "q": args.q})]
        else:
            reports = sweep(args.family, args.q, over)
        for rep in reports:
            log.info("%s %s %.2fs", rep.id, rep.status, rep.seconds)
        emit(reports, fmt, out_dir)
    except GBAError as e:
        print(f"gba: {e}", file=sys.stderr)
        return 1
    return exit_code(reports)


if __name__ == "__main__":
    sys.exit(main())
