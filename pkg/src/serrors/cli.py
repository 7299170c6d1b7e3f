"""Command line front end: ``serrors {reproduce,test,design,verify}``.

Output formats:

* ``human``: aligned columns for reading;
* ``csv``: one header line plus rows (tables only; records are flattened);
* ``records``: JSON Lines, one self-describing object per line.

Exit status is 0 on success, 1 when a reproduced value misses its tolerance
or a verification invariant fails, and 2 for usage or input errors.
"""

import argparse
import csv
import io
import json
import math
import sys
import time

from . import __version__
from .decision import ErrorWeights
from .design import DesignSpec, design_simple_normal, error_profile_degroot, error_profile_fixed_alpha
from .errors import DomainError, ScenarioError
from .reproduce import TARGETS, reproduce
from .scenario import load_scenario, run_scenario
from .verification.suites import DEFAULT_SEED, SUITES, run_suite

FORMATS = ("human", "csv", "records")
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


# ---------------------------------------------------------------------------
# rendering


def _json_default(obj):
    if hasattr(obj, "item"):  # numpy scalars
        return obj.item()
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _clean(value):
    # JSON has no inf/nan; spell them out so the output stays strict JSON.
    if isinstance(value, float) and not math.isfinite(value):
        return "inf" if value > 0 else "-inf" if value < 0 else "nan"
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


def to_json_line(record):
    return json.dumps(_clean(record), default=_json_default, ensure_ascii=False, sort_keys=False)


def _fmt(value):
    if isinstance(value, bool) or value is None:
        return str(value)
    if isinstance(value, float):
        if value == 0 or 1e-4 <= abs(value) < 1e7:
            return f"{value:.6g}"
        return f"{value:.6e}"
    return str(value)


def render_table(columns, rows):
    cells = [[str(c) for c in columns]] + [[_fmt(row.get(c)) for c in columns] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(columns))]
    lines = ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def render_csv(columns, rows):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({c: _fmt_csv(row.get(c)) for c in columns})
    return buf.getvalue().rstrip("\n")


def _fmt_csv(value):
    return repr(value) if isinstance(value, float) else value


def _flatten(record, prefix=""):
    out = {}
    for key, value in record.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            out.update(_flatten(value, name + "."))
        elif isinstance(value, list):
            out[name] = json.dumps(_clean(value), default=_json_default)
        else:
            out[name] = value
    return out


class Output:
    """Collects a command's rendering and its structured form."""

    def __init__(self, fmt):
        self.fmt = fmt
        self.human = []
        self.csv_parts = []
        self.records = []

    def table(self, title, columns, rows, record_kind, extra=None):
        self.human.append(f"{title}\n{render_table(columns, rows)}")
        self.csv_parts.append(render_csv(columns, rows))
        for row in rows:
            self.records.append({"record": record_kind} | (extra or {}) | row)

    def record(self, rec, human_text=None, csv=True):
        self.records.append(rec)
        if human_text is not None:
            self.human.append(human_text)
        if csv:
            flat = _flatten(rec)
            self.csv_parts.append(render_csv(tuple(flat), [flat]))

    def text(self, fmt=None):
        fmt = fmt or self.fmt
        if fmt == "human":
            return "\n\n".join(self.human)
        if fmt == "csv":
            return "\n\n".join(self.csv_parts)
        return "\n".join(to_json_line(r) for r in self.records)

    def emit(self, out_path=None):
        print(self.text())
        if out_path:
            # Files always hold machine-readable output.
            fmt = "csv" if self.fmt == "csv" else "records"
            with open(out_path, "w", encoding="utf-8", newline="") as fh:
                fh.write(self.text(fmt) + "\n")


# ---------------------------------------------------------------------------
# commands


def _weights_from_args(args, default=None):
    if args.ratio is not None:
        return ErrorWeights.from_ratio(args.ratio)
    if args.a is not None or args.b is not None:
        return ErrorWeights(1.0 if args.a is None else args.a, 1.0 if args.b is None else args.b)
    return default


def cmd_reproduce(args):
    out = Output(args.format)
    start = time.perf_counter()
    table = reproduce(args.target)
    out.table(f"{table.target}: {table.title}", table.columns, table.rows, "row", {"target": table.target})
    status = "all values within tolerance" if table.passed else "MISMATCH: some values miss their tolerance"
    out.record(
        {"record": "summary", "target": table.target, "passed": table.passed,
         "timing": {"elapsed_s": time.perf_counter() - start}},
        human_text=status,
        csv=False,  # keep the CSV a single table with the published headers
    )
    out.emit(args.out)
    return EXIT_OK if table.passed else EXIT_FAIL


def cmd_test(args):
    scenario = load_scenario(args.scenario)
    weights = _weights_from_args(args)
    if weights is not None:
        scenario = scenario.with_weights(weights)
    result = run_scenario(scenario)
    d = result["decision"]
    lines = [
        f"scenario      {scenario.name or args.scenario}",
        f"ln evidence0  {_fmt(result['log_evidence0'])}",
        f"ln evidence1  {_fmt(result['log_evidence1'])}",
        f"ratio 0/1     {_fmt(result['ratio_01'])}  (ln {_fmt(result['log_ratio_01'])})",
        f"threshold r   {_fmt(result['error_weights']['ratio'])}",
        f"verdict       {d['verdict']}",
        f"grade         {d['grade']} ({d['label']})",
    ]
    lines += [f"p-value       {k} = {_fmt(v)}" for k, v in result["pvalues"].items()]
    out = Output(args.format)
    out.record({"record": "result"} | result, human_text="\n".join(lines))
    out.emit(args.out)
    return EXIT_OK


def cmd_design(args):
    spec = DesignSpec(args.theta0, args.theta1, args.sigma, args.alpha, args.beta)
    res = design_simple_normal(spec)
    weights = _weights_from_args(args, ErrorWeights.from_ratio(res.implicit_ratio))
    out = Output(args.format)
    design = {"record": "design", "theta0": spec.theta0, "theta1": spec.theta1, "sigma": spec.sigma,
              "alpha": spec.alpha, "beta_target": spec.beta, "n_real": res.n_real, "n": res.n,
              "beta_achieved": res.beta_achieved, "threshold": res.threshold,
              "implicit_ratio": res.implicit_ratio, "log_implicit_ratio": res.log_implicit_ratio}
    width = max(map(len, design)) + 2
    out.record(design, human_text="\n".join(f"{k:<{width}}{_fmt(v)}" for k, v in design.items() if k != "record"))
    rows = []
    for n in args.n_grid:
        fixed = error_profile_fixed_alpha(n, spec, weights)
        dg = error_profile_degroot(n, spec, weights.ratio)
        rows.append({"n": n, "fixed alpha": fixed.alpha, "fixed beta": fixed.beta,
                     "fixed-r alpha": dg.alpha, "fixed-r beta": dg.beta,
                     "fixed-r alpha/beta": dg.alpha / dg.beta if dg.beta > 0 else math.inf})
    columns = ("n", "fixed alpha", "fixed beta", "fixed-r alpha", "fixed-r beta", "fixed-r alpha/beta")
    out.table(f"error rates by sample size (r = {_fmt(weights.ratio)})", columns, rows, "profile")
    out.emit(args.out)
    return EXIT_OK


def cmd_verify(args):
    report = run_suite(args.suite, seed=args.seed, trials=args.trials, workers=args.workers)
    out = Output(args.format)
    d = report.to_dict()
    human = [f"suite {report.suite}: {'PASS' if report.passed else 'FAIL'}"]
    human += [f"  {k}: {v}" for k, v in report.summary.items()]
    human += [f"  failed invariant {f.invariant}: {f.detail}" for f in report.failures]
    out.record(
        {"record": "verification", "suite": d["suite"], "passed": d["passed"], "summary": d["summary"],
         "failures": d["failures"], "timing": {"elapsed_s": d["elapsed_s"]}},
        human_text="\n".join(human),
    )
    for row in report.rows:
        out.records.append({"record": "check", "suite": report.suite} | row)
    out.emit(args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# argument parsing


def _common(parser, weights=False, mc=False):
    parser.add_argument("--format", choices=FORMATS, default="human")
    parser.add_argument("--out", help="also write machine-readable output (records or csv) to this file")
    if weights:
        parser.add_argument("--a", type=float, help="weight on the Type I error")
        parser.add_argument("--b", type=float, help="weight on the Type II error")
        parser.add_argument("--ratio", type=float, help="r = b/a (instead of --a/--b)")
    if mc:
        parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
        parser.add_argument("--trials", type=int, default=None, help="Monte Carlo trials per hypothesis")
        parser.add_argument("--workers", type=int, default=1)


def build_parser():
    parser = argparse.ArgumentParser(prog="serrors", description="Tests that minimize a weighted sum of errors.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reproduce", help="recompute a published example or table")
    p.add_argument("target", choices=sorted(TARGETS))
    _common(p)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("test", help="run the optimal test on a scenario file")
    p.add_argument("scenario", help="path to a JSON scenario")
    _common(p, weights=True)
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("design", help="classical design and the implied error weights")
    p.add_argument("--theta0", type=float, default=-1.0)
    p.add_argument("--theta1", type=float, default=1.0)
    p.add_argument("--sigma", type=float, default=3.0)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--beta", type=float, default=0.1)
    p.add_argument("--n-grid", type=int, nargs="+", default=[10, 20, 50, 100])
    _common(p, weights=True)
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    _common(p, mc=True)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "ratio", None) is not None and (args.a is not None or args.b is not None):
        parser.error("--ratio cannot be combined with --a/--b")
    try:
        return args.func(args)
    except ScenarioError as exc:
        print(f"serrors: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, OSError) as exc:
        print(f"serrors: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
