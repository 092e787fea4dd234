"""``verify`` command: run the identity registry and report.

Exit status is 0 when every selected check passes, 1 when any fails and 2 on
a usage error.
"""

import argparse
import json
import math
import sys
from dataclasses import dataclass, fields
from typing import List, Optional

from . import budget
from .identities import CheckResult, registry, run_all


@dataclass
class RunConfig:
    selected_ids: Optional[List[str]] = None
    tolerance_override: Optional[float] = None
    max_terms: int = budget.DEFAULT_MAX_TERMS
    max_evals: int = budget.DEFAULT_MAX_EVALS
    output_path: Optional[str] = None
    format: str = "text"


class UsageError(Exception):
    pass


_FLOAT_FIELDS = ("lhs_value", "rhs_value", "abs_err", "rel_err", "tolerance", "elapsed")
_INT_FIELDS = ("evaluations",)


def _json_key(name):
    return "pass" if name == "passed" else name


def result_to_json(r):
    """CheckResult as a JSON object; numbers become decimal strings."""
    out = {}
    for f in fields(CheckResult):
        v = getattr(r, f.name)
        if f.name in _FLOAT_FIELDS:
            v = format(v, ".17g")
        elif f.name in _INT_FIELDS:
            v = str(v)
        out[_json_key(f.name)] = v
    return out


def result_from_json(d):
    kwargs = {}
    for f in fields(CheckResult):
        v = d[_json_key(f.name)]
        if f.name in _FLOAT_FIELDS:
            v = float(v)
        elif f.name in _INT_FIELDS:
            v = int(v)
        kwargs[f.name] = v
    return CheckResult(**kwargs)


def report_to_json(report):
    return {
        "config": report.config_echo,
        "results": [result_to_json(r) for r in report.results],
        "all_pass": report.all_pass,
    }


def _num(v):
    if isinstance(v, float) and v != 0.0 and math.isfinite(v) and abs(v) < 1e-3:
        return f"{v:.14e}"
    return f"{v:.15g}"


def format_table(results):
    rows = [("id", "description", "lhs", "rhs", "abs_err", "pass")]
    for r in results:
        desc = r.description if len(r.description) <= 48 else r.description[:45] + "..."
        rows.append((r.id, desc, _num(r.lhs_value), _num(r.rhs_value), _num(r.abs_err),
                     "PASS" if r.passed else "FAIL"))
    widths = [max(len(row[i]) for row in rows) for i in range(6)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    for r in results:
        if r.note:
            lines.append(f"{r.id}: {r.note}")
    return "\n".join(lines)


def _positive_int(text):
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def _positive_float(text):
    x = float(text)
    if not x > 0.0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def build_parser():
    p = argparse.ArgumentParser(
        prog="verify",
        description="Check closed forms for Farhi's constant and related identities.",
    )
    p.add_argument("--only", action="append", metavar="ID[,ID...]",
                   help="run only these identity ids (repeatable)")
    p.add_argument("--list", action="store_true", help="list identity ids and exit")
    p.add_argument("--tolerance", type=_positive_float, metavar="X",
                   help="override every identity's tolerance")
    p.add_argument("--max-terms", type=_positive_int, default=budget.DEFAULT_MAX_TERMS,
                   metavar="N", help="series term budget")
    p.add_argument("--max-evals", type=_positive_int, default=budget.DEFAULT_MAX_EVALS,
                   metavar="N", help="quadrature evaluation budget")
    p.add_argument("--json", metavar="PATH", help="also write the report as JSON")
    return p


def parse_config(argv):
    args = build_parser().parse_args(argv)
    selected = None
    if args.only:
        selected = [tok.strip() for chunk in args.only for tok in chunk.split(",") if tok.strip()]
        known = {s.id for s in registry()}
        unknown = [i for i in selected if i not in known]
        if unknown:
            raise UsageError(f"unknown identity id(s): {', '.join(unknown)}")
    cfg = RunConfig(
        selected_ids=selected,
        tolerance_override=args.tolerance,
        max_terms=args.max_terms,
        max_evals=args.max_evals,
        output_path=args.json,
        format="json" if args.json else "text",
    )
    return cfg, args.list


def main(argv=None):
    try:
        cfg, list_only = parse_config(argv)
    except SystemExit as exc:  # argparse already printed the message
        return 0 if exc.code == 0 else 2
    except UsageError as exc:
        print(f"verify: error: {exc}", file=sys.stderr)
        return 2

    specs = registry()
    if list_only:
        for s in specs:
            print(f"{s.id:4s}  {s.anchor}")
        return 0
    if cfg.selected_ids is not None:
        wanted = set(cfg.selected_ids)
        specs = [s for s in specs if s.id in wanted]

    report = run_all(specs, cfg)
    print(format_table(report.results))
    passed = sum(r.passed for r in report.results)
    print(f"\n{passed}/{len(report.results)} identities pass")
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            json.dump(report_to_json(report), fh, indent=2)
            fh.write("\n")
    return 0 if report.all_pass else 1


if __name__ == "__main__":
    sys.exit(main())
