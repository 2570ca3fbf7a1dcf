"""Command-line interface.

Subcommands: hquad, unit, field-info, hfield, classify, verify-datasets,
tables-check.  Radicand lists are given comma-separated after `--` so that
negative radicands are not mistaken for flags, e.g.

    multiquad hfield -- -1,2,3

Exit codes: 0 success, 2 argument/parse error, 3 dataset missing or
invalid, 4 inconsistency detected.  Flags can also be set through
environment variables with the MULTIQUAD_ prefix (MULTIQUAD_DATA_DIR,
MULTIQUAD_CACHE, MULTIQUAD_PRECISION, MULTIQUAD_JOBS, MULTIQUAD_OUTPUT).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import default_data_dir, golden
from .classify import (
    classify_n1,
    classify_n2,
    classify_n3,
    classify_n4,
    classify_n5_and_up,
    full_report,
)
from .errors import DatasetError, InconsistencyError, PrecisionError
from .kuroda import _RESULTS, ClassNumberResult, class_number_field
from .quadratic import class_number, fundamental_unit
from .radicands import (
    field_id,
    members_to_primitive,
    parse_radicands,
    subfield_counts,
    to_standard_form,
)
from .ramify import multiquad_discriminant, ramified_primes
from .units import load_unit_dataset


@dataclass
class CliConfig:
    data_dir: str
    cache_path: str | None
    precision: int
    output: str  # "json" or "table"
    jobs: int
    allow_undecided: bool

    def __post_init__(self):
        if self.precision < 64:
            raise ValueError("precision must be at least 64 bits")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")
        if self.output not in ("json", "table"):
            raise ValueError("output must be 'json' or 'table'")


def _env(name, default):
    return os.environ.get(f"MULTIQUAD_{name}", default)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="multiquad", description=__doc__.split("\n")[0])
    p.add_argument("--data-dir", default=_env("DATA_DIR", default_data_dir()),
                   help="directory holding the octic unit datasets")
    p.add_argument("--cache", default=_env("CACHE", None),
                   help="optional JSON cache file for class number results")
    p.add_argument("--precision", type=int, default=int(_env("PRECISION", "128")),
                   help="working precision in bits (>= 64)")
    p.add_argument("--jobs", type=int, default=int(_env("JOBS", "1")),
                   help="worker count for candidate evaluation")
    p.add_argument("--output", choices=("json", "table"),
                   default=_env("OUTPUT", "table"))
    p.add_argument("--allow-undecided", action="store_true",
                   help="fall back to computing unit systems when a dataset is missing")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("hquad", help="class number of a quadratic field")
    s.add_argument("a", type=int, help="squarefree radicand")

    s = sub.add_parser("unit", help="fundamental unit of a real quadratic field")
    s.add_argument("a", type=int, help="squarefree radicand > 1")

    s = sub.add_parser("field-info", help="invariants of a multiquadratic field")
    s.add_argument("radicands", help="comma-separated radicand list (after --)")

    s = sub.add_parser("hfield", help="class number of a multiquadratic field")
    s.add_argument("radicands", help="comma-separated radicand list (after --)")

    s = sub.add_parser("classify", help="run a classification pipeline")
    s.add_argument("n", type=int, choices=range(1, 7))

    sub.add_parser("verify-datasets", help="re-verify every bundled unit dataset")
    sub.add_parser("tables-check", help="diff regenerated tables against references")
    return p


def _emit(cfg: CliConfig, payload: dict, table_lines) -> None:
    if cfg.output == "json":
        print(json.dumps(payload, indent=1, sort_keys=True))
    else:
        for line in table_lines:
            print(line)


def _load_cache(cfg: CliConfig) -> None:
    if not cfg.cache_path or not os.path.exists(cfg.cache_path):
        return
    with open(cfg.cache_path) as fh:
        stored = json.load(fh)
    for key, rec in stored.items():
        # keys are "<field-id>|<data-dir>"; the field id lists all members
        entries = members_to_primitive(parse_radicands(key.split("|")[0]))
        data_dir = key.split("|")[1] or None
        _RESULTS[(field_id(entries), data_dir)] = ClassNumberResult(
            h=rec["h"], formula=rec["formula"], trace=rec["trace"]
        )


def _save_cache(cfg: CliConfig) -> None:
    if not cfg.cache_path:
        return
    stored = {}
    for (fid, data_dir), res in _RESULTS.items():
        stored[f"{fid}|{data_dir or ''}"] = {
            "h": res.h, "formula": res.formula, "trace": res.trace,
        }
    with open(cfg.cache_path, "w") as fh:
        json.dump(stored, fh, indent=1, sort_keys=True)


def cmd_hquad(cfg: CliConfig, a: int) -> int:
    h = class_number(a, check=True)
    _emit(cfg, {"a": a, "h": h}, [f"h({a}) = {h}"])
    return 0


def cmd_unit(cfg: CliConfig, a: int) -> int:
    u = fundamental_unit(a)
    text = f"({u.g} + {u.b}*sqrt({a}))/{u.q}" if u.q > 1 else f"{u.g} + {u.b}*sqrt({a})"
    _emit(
        cfg,
        {"a": a, "g": u.g, "b": u.b, "q": u.q, "norm": u.norm},
        [f"eps = {text}", f"N(eps) = {u.norm}"],
    )
    return 0


def cmd_field_info(cfg: CliConfig, text: str) -> int:
    entries = parse_radicands(text)
    fid = field_id(entries)
    std = to_standard_form(entries)
    members = fid.members
    imag, real = subfield_counts(entries)
    ram = sorted(ramified_primes(entries))
    payload = {
        "field": str(fid),
        "degree": fid.degree,
        "standard_form": list(std),
        "complete_list": list(members),
        "imaginary_quadratic_subfields": imag,
        "real_quadratic_subfields": real,
        "ramified_primes": ram,
    }
    lines = [
        f"field id:        {fid}",
        f"degree:          {fid.degree}",
        f"standard form:   {','.join(map(str, std))}",
        f"complete list:   {','.join(map(str, members))}",
        f"subfields:       {imag} imaginary, {real} real quadratic",
        f"ramified primes: {' '.join(map(str, ram))}",
    ]
    if fid.n >= 2:
        disc = multiquad_discriminant(std)
        payload["discriminant"] = disc.delta
        lines.insert(4, f"discriminant:    {disc.delta}")
    _emit(cfg, payload, lines)
    return 0


def cmd_hfield(cfg: CliConfig, text: str) -> int:
    entries = parse_radicands(text)
    res = class_number_field(entries, data_dir=cfg.data_dir,
                             strict=not cfg.allow_undecided)
    lines = [f"h = {res.h}  ({res.formula})"]
    for key, val in res.trace.get("inputs", {}).items():
        lines.append(f"  {key} = {val}")
    for f in res.trace.get("Q_factors", []):
        lines.append(f"  q({f['extension']}) = {f['q']}")
    if "P" in res.trace:
        lines.append(f"  P = {res.trace['P']}")
    for path in res.trace.get("datasets", []):
        lines.append(f"  dataset: {path}")
    _emit(cfg, res.to_json() | {"trace": res.trace}, lines)
    return 0


def cmd_classify(cfg: CliConfig, n: int) -> int:
    if n == 1:
        fields = [str(a) for a in classify_n1()]
        audit = {}
    elif n == 2:
        fields = [str(f) for f in classify_n2()]
        audit = {}
    elif n == 3:
        fields = [str(f) for f in classify_n3(cfg.data_dir, cfg.allow_undecided)]
        audit = {}
    elif n == 4:
        fields = [str(f) for f in classify_n4(cfg.data_dir)]
        audit = {"note": "four candidates survive pruning, all with h > 1"}
    else:
        audit = classify_n5_and_up(max(n, 5))[n]
        fields = []
    payload = {"n": n, "class_number_1_fields": fields, "audit": audit}
    lines = [f"n = {n}: {len(fields)} field(s) with class number 1"]
    lines += [f"  {f}" for f in fields]
    for key, val in audit.items():
        lines.append(f"  {key}: {val}")
    _emit(cfg, payload, lines)
    return 0


def cmd_verify_datasets(cfg: CliConfig) -> int:
    names = sorted(f for f in os.listdir(cfg.data_dir) if f.endswith(".json"))
    if not names:
        raise DatasetError(f"no datasets found in {cfg.data_dir}")
    results = []
    for name in names:
        members = parse_radicands(name[: -len(".json")])
        entries = members_to_primitive(members)
        load_unit_dataset(entries, os.path.join(cfg.data_dir, name))
        results.append(name)
    _emit(cfg, {"verified": results},
          [f"ok {name}" for name in results] + [f"{len(results)} datasets verified"])
    return 0


def cmd_tables_check(cfg: CliConfig) -> int:
    report = full_report(data_dir=cfg.data_dir, allow_undecided=cfg.allow_undecided)
    lines = []
    ok = True
    for n, matched in sorted(report.table_match.items()):
        count = len(report.final[n])
        ref = {1: len(golden.GAUSS_H1), 2: len(golden.N2_TABLE),
               3: len(golden.N3_TABLE)}.get(n, 0)
        lines.append(f"n={n}: {count} fields (reference {ref}) "
                     f"{'MATCH' if matched else 'MISMATCH'}")
        ok = ok and matched
    for d in report.discrepancies:
        lines.append(f"note: {d}")
    _emit(cfg, report.to_json(), lines)
    return 0 if ok else 4


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = CliConfig(
            data_dir=args.data_dir,
            cache_path=args.cache,
            precision=args.precision,
            output=args.output,
            jobs=args.jobs,
            allow_undecided=args.allow_undecided,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        _load_cache(cfg)
        if args.command == "hquad":
            rc = cmd_hquad(cfg, args.a)
        elif args.command == "unit":
            rc = cmd_unit(cfg, args.a)
        elif args.command == "field-info":
            rc = cmd_field_info(cfg, args.radicands)
        elif args.command == "hfield":
            rc = cmd_hfield(cfg, args.radicands)
        elif args.command == "classify":
            rc = cmd_classify(cfg, args.n)
        elif args.command == "verify-datasets":
            rc = cmd_verify_datasets(cfg)
        else:
            rc = cmd_tables_check(cfg)
        _save_cache(cfg)
        return rc
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DatasetError as exc:
        print(f"dataset error: {exc}", file=sys.stderr)
        return 3
    except (InconsistencyError, PrecisionError) as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
