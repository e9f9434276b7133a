"""Command-line surface: one subcommand per analysis, reports in json/csv/text.

Exit codes: 0 success, 1 usage error, 2 size guard or infeasibility,
3 verification failure.  Rationals serialize as "p/q" strings, never as
floats; base-2 logarithms ride along in separate display fields.  Reports
echo their full run configuration so no number is ever ambiguous about
the threshold convention that produced it.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .cayley import CayleySpec, complement_spec, from_paper_params
from .embedding import (
    build_witness,
    dlsz_floor,
    embed_from_function,
    min_support_oracle,
    symork_formula,
    verify_embedding,
)
from .group_core import GroupSpec, GuardError, binary_entropy
from .interp import CHAIN_RATE, interp_bound, rate_report, set_search
from .theta import kwise_max_zero_prob, theta_dense, theta_reduced
from . import verify as verify_mod

__all__ = ["main", "run_command", "RunConfig", "scan_table"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_GUARD = 2
EXIT_VERIFY = 3


@dataclass(frozen=True)
class RunConfig:
    """Echo of every knob that shaped a report."""

    command: str
    m: Optional[int] = None
    n: Optional[int] = None
    d: Optional[int] = None
    t_lo: Optional[int] = None
    t_hi: Optional[int] = None
    k: Optional[int] = None
    convention: str = "literal"
    mode: str = "exact"
    method: Optional[str] = None
    tolerance: float = 1e-9
    format: str = "text"
    out: Optional[str] = None
    seed: int = 0
    trials: int = 0
    suite: Optional[str] = None
    task: Optional[str] = None
    n_min: Optional[int] = None
    n_max: Optional[int] = None
    step: Optional[int] = None
    plot: Optional[str] = None

    def to_dict(self) -> Dict:
        return asdict(self)


class UsageError(ValueError):
    """Bad arguments that argparse could not catch on its own."""


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _jsonable(value):
    if isinstance(value, Fraction):
        return _frac_str(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


def _flatten(payload: Dict, prefix: str = "") -> Dict[str, object]:
    flat: Dict[str, object] = {}
    for key, value in payload.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, f"{name}."))
        elif isinstance(value, (list, tuple)):
            flat[name] = json.dumps(_jsonable(value))
        else:
            flat[name] = _jsonable(value)
    return flat


def _render(payload: Dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        rows = payload.get("rows")
        if isinstance(rows, list) and rows and isinstance(rows[0], dict):
            header = list(rows[0].keys())
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([_csv_cell(row.get(k)) for k in header])
        else:
            flat = _flatten(payload)
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(list(flat.keys()))
            writer.writerow([_csv_cell(v) for v in flat.values()])
        return buf.getvalue()
    lines = _text_lines(payload)
    return "\n".join(lines) + "\n"


def _csv_cell(value):
    if isinstance(value, Fraction):
        return _frac_str(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(_jsonable(value))
    return value


def _text_lines(payload: Dict, indent: str = "") -> List[str]:
    lines = []
    for key, value in payload.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(_text_lines(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{indent}{key}:")
            for row in value:
                cells = "  ".join(f"{k}={_csv_cell(v)}" for k, v in row.items())
                lines.append(f"{indent}  {cells}")
        else:
            lines.append(f"{indent}{key}: {_csv_cell(value)}")
    return lines


# --- subcommand payloads ------------------------------------------------------


def _resolve_graph(cfg: RunConfig) -> CayleySpec:
    m = cfg.m or 2
    if cfg.n is None:
        raise UsageError("--n is required")
    if cfg.d is not None:
        return from_paper_params(m, cfg.n, cfg.d, cfg.convention)
    if cfg.t_lo is None:
        raise UsageError("either --d or --t-lo is required")
    t_hi = cfg.t_hi if cfg.t_hi is not None else (m - 1) * cfg.n
    return CayleySpec(GroupSpec(m, cfg.n), cfg.t_lo, t_hi)


def _oracle_in_guard(graph: CayleySpec) -> bool:
    return 2**graph.group.order <= 512


def cmd_symrank(cfg: RunConfig) -> Dict:
    m = cfg.m or 2
    if cfg.n is None or cfg.d is None:
        raise UsageError("symrank needs --n and --d")
    graph = from_paper_params(m, cfg.n, cfg.d, cfg.convention)
    formula = symork_formula(m, cfg.n, cfg.d)
    witness = build_witness(m, cfg.n, cfg.d)
    emb = embed_from_function(witness)
    chk = verify_embedding(emb, graph)
    oracle = min_support_oracle(graph) if _oracle_in_guard(graph) else None
    return {
        "config": cfg.to_dict(),
        "m": m,
        "n": cfg.n,
        "d": cfg.d,
        "convention": graph.convention,
        "formula_value": formula,
        "witness_dim": emb.dim,
        "dlsz_floor": dlsz_floor(m, cfg.n, cfg.d),
        "oracle_value": oracle,
        "verified": chk.ok,
    }


def cmd_embed(cfg: RunConfig) -> Dict:
    m = cfg.m or 2
    if cfg.n is None or cfg.d is None:
        raise UsageError("embed needs --n and --d")
    graph = from_paper_params(m, cfg.n, cfg.d, cfg.convention)
    witness = build_witness(m, cfg.n, cfg.d)
    emb = embed_from_function(witness)
    chk = verify_embedding(emb, graph)
    return {
        "config": cfg.to_dict(),
        "m": m,
        "n": cfg.n,
        "d": cfg.d,
        "convention": graph.convention,
        "dim": emb.dim,
        "support_size": len(emb.support),
        "verified": chk.ok,
        "unit_norms_ok": chk.unit_norms_ok,
        "orthogonality_ok": chk.orthogonality_ok,
        "translation_ok": chk.translation_ok,
        "worst_violation": float(chk.worst_violation),
        "check_detail": chk.detail,
    }


def cmd_theta(cfg: RunConfig) -> Dict:
    m = cfg.m or 2
    if cfg.mode == "exact" and m > 2:
        raise UsageError("exact mode supports m = 2 only; rerun with --mode float")
    graph = _resolve_graph(cfg)
    if cfg.method == "reduced" and m > 2:
        raise UsageError("the reduced path is m = 2 only")
    use_dense = cfg.method == "dense" or m > 2
    if use_dense:
        report = theta_dense(graph)
    else:
        report = theta_reduced(graph.group.n, graph.t_lo, graph.t_hi, graph=graph)
    g = graph.group
    payload: Dict = {
        "config": cfg.to_dict(),
        "convention": graph.convention,
        "theta": report.theta,
        "log2_theta": report.log2_theta,
        "method": report.method,
        "exact": report.exact,
        "certificate_ok": report.certificate_ok,
        "complement_lower_log2": report.complement_lower_log2,
        "symork_cap_log2": report.symork_cap_log2,
    }
    if report.exact:
        payload["complement_lower"] = Fraction(g.m**g.n) / report.theta
    else:
        payload["complement_lower"] = float(g.m**g.n) / report.theta
    if g.m == 2 and graph.t_hi == g.max_weight:
        comp = complement_spec(graph)
        comp_report = theta_reduced(g.n, comp.t_lo, comp.t_hi, graph=comp)
        payload["complement_theta_direct"] = comp_report.theta
        if report.exact:
            payload["complement_equality"] = (
                comp_report.theta == payload["complement_lower"]
            )
    return payload


def cmd_kwise(cfg: RunConfig) -> Dict:
    if cfg.n is None or cfg.k is None:
        raise UsageError("kwise needs --n and --k")
    prob = kwise_max_zero_prob(cfg.n, cfg.k)
    band_theta = theta_reduced(cfg.n, 1, cfg.k).theta
    scaled = prob * 2**cfg.n
    return {
        "config": cfg.to_dict(),
        "n": cfg.n,
        "k": cfg.k,
        "max_zero_prob": prob,
        "log2_max_zero_prob": math.log2(prob.numerator) - math.log2(prob.denominator),
        "times_2n": scaled,
        "theta_band": band_theta,
        "identity_ok": scaled == band_theta,
    }


def cmd_interp(cfg: RunConfig) -> Dict:
    if cfg.n is None:
        raise UsageError("interp needs --n")
    report = rate_report(cfg.n)
    payload = {
        "config": cfg.to_dict(),
        "n": report.n,
        "k": report.k,
        "S": list(report.points),
        "factors": list(report.factors),
        "B": report.bound,
        "geometric_cap": report.geometric_cap,
        "within_cap": report.within_cap,
        "eps_emp": report.eps_emp,
        "chain_rate": CHAIN_RATE,
        "meets_chain_rate": report.meets_chain_rate,
        "theta_upper": report.theta_upper,
    }
    if cfg.trials > 0:
        searched = set_search(cfg.n, cfg.trials, seed=cfg.seed)
        payload["searched"] = {
            "S": list(searched.points),
            "B": interp_bound(cfg.n, searched),
        }
    return payload


def scan_table(task: str, n_min: int, n_max: int, step: int) -> List[Dict]:
    """One row per n in the grid; empty grids yield an empty table."""
    if task not in ("theta", "interp"):
        raise UsageError(f"scan task must be theta or interp, got {task!r}")
    if step <= 0:
        raise UsageError("--step must be positive")
    rows: List[Dict] = []
    for n in range(n_min, n_max + 1, step):
        if task == "theta":
            if n % 2 != 0:
                raise UsageError("theta scan needs even n (d = n/2)")
            graph = from_paper_params(2, n, n // 2, "literal")
            rep = theta_reduced(n, graph.t_lo, graph.t_hi, graph=graph)
            rows.append(
                {
                    "n": n,
                    "d": n // 2,
                    "theta": rep.theta,
                    "log2_theta": rep.log2_theta,
                    "log2_complement_lower": rep.complement_lower_log2,
                    "line_0_0435": 0.0435 * n - math.log2(2.5),
                    "line_0_19": 0.19 * n,
                    "line_entropy": (1.0 - binary_entropy(0.25)) * n,
                    "symork_cap_log2": math.log2(symork_formula(2, n, n // 2)),
                    "certificate_ok": rep.certificate_ok,
                }
            )
        else:
            if n % 8 != 0:
                raise UsageError("interp scan needs n divisible by 8")
            rep = rate_report(n)
            rows.append(
                {
                    "n": n,
                    "k": rep.k,
                    "B": rep.bound,
                    "geometric_cap": rep.geometric_cap,
                    "within_cap": rep.within_cap,
                    "eps_emp": rep.eps_emp,
                    "chain_rate": CHAIN_RATE,
                    "minus_log2_B": -(
                        math.log2(rep.bound.numerator) - math.log2(rep.bound.denominator)
                    ),
                    "minus_log2_cap": -(
                        math.log2(rep.geometric_cap.numerator)
                        - math.log2(rep.geometric_cap.denominator)
                    ),
                }
            )
    return rows


def cmd_scan(cfg: RunConfig) -> Dict:
    if cfg.n_min is None or cfg.n_max is None:
        raise UsageError("scan needs --n-min and --n-max")
    rows = scan_table(cfg.task or "theta", cfg.n_min, cfg.n_max, cfg.step or 1)
    if cfg.plot:
        if not rows:
            raise UsageError("cannot plot an empty grid")
        from . import plotting

        if (cfg.task or "theta") == "theta":
            plotting.plot_theta_scan(rows, cfg.plot)
        else:
            plotting.plot_interp_scan(rows, cfg.plot)
    return {"config": cfg.to_dict(), "task": cfg.task or "theta", "rows": rows}


def cmd_verify(cfg: RunConfig) -> Dict:
    results = verify_mod.run_suite(cfg.suite or "smoke", seed=cfg.seed)
    return {
        "config": cfg.to_dict(),
        "suite": cfg.suite or "smoke",
        "results": [
            {"name": r.name, "passed": r.passed, "seconds": r.seconds, "detail": r.detail}
            for r in results
        ],
        "all_passed": all(r.passed for r in results),
    }


HANDLERS = {
    "symrank": cmd_symrank,
    "embed": cmd_embed,
    "theta": cmd_theta,
    "kwise": cmd_kwise,
    "interp": cmd_interp,
    "scan": cmd_scan,
    "verify": cmd_verify,
}


# --- argument parsing ---------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route usage problems to exit code 1
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="charbound", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("json", "csv", "text"), default="text")
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trials", type=int, default=0)
        p.add_argument("--out", type=str, default=None)

    p = sub.add_parser("symrank", help="closed-form rank, witness, floor, and oracle")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--convention", choices=("literal", "strict"), default="literal")
    common(p)

    p = sub.add_parser("embed", help="build and verify the witness embedding")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--convention", choices=("literal", "strict"), default="literal")
    common(p)

    p = sub.add_parser("theta", help="certified theta of a weight-band graph")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--t-lo", dest="t_lo", type=int, default=None)
    p.add_argument("--t-hi", dest="t_hi", type=int, default=None)
    p.add_argument("--convention", choices=("literal", "strict"), default="literal")
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--dense", action="store_true")
    group.add_argument("--reduced", action="store_true")
    common(p)

    p = sub.add_parser("kwise", help="maximal all-zeros probability, k-wise independent")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    common(p)

    p = sub.add_parser("interp", help="exact interpolation certificate for one n")
    p.add_argument("--n", type=int, required=True)
    common(p)

    p = sub.add_parser("scan", help="grid tables (theta or interp), optional figure")
    p.add_argument("--task", choices=("theta", "interp"), default="theta")
    p.add_argument("--n-min", dest="n_min", type=int, required=True)
    p.add_argument("--n-max", dest="n_max", type=int, required=True)
    p.add_argument("--step", type=int, default=8)
    p.add_argument("--plot", type=str, default=None)
    common(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=verify_mod.SUITE_NAMES, default="smoke")
    common(p)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    method = None
    if getattr(args, "dense", False):
        method = "dense"
    elif getattr(args, "reduced", False):
        method = "reduced"
    return RunConfig(
        command=args.command,
        m=getattr(args, "m", None),
        n=getattr(args, "n", None),
        d=getattr(args, "d", None),
        t_lo=getattr(args, "t_lo", None),
        t_hi=getattr(args, "t_hi", None),
        k=getattr(args, "k", None),
        convention=getattr(args, "convention", "literal"),
        mode=getattr(args, "mode", "exact"),
        method=method,
        tolerance=args.tol,
        format=args.format,
        out=args.out,
        seed=args.seed,
        trials=args.trials,
        suite=getattr(args, "suite", None),
        task=getattr(args, "task", None),
        n_min=getattr(args, "n_min", None),
        n_max=getattr(args, "n_max", None),
        step=getattr(args, "step", None),
        plot=getattr(args, "plot", None),
    )


def run_command(argv: Sequence[str]) -> int:
    """Parse, dispatch, and print one report; returns the exit code."""
    parser = build_parser()
    fmt = "text"
    try:
        args = parser.parse_args(argv)
        cfg = _config_from_args(args)
        fmt = cfg.format
        payload = HANDLERS[cfg.command](cfg)
    except UsageError as exc:
        _emit_error(EXIT_USAGE, str(exc), fmt)
        return EXIT_USAGE
    except GuardError as exc:
        _emit_error(EXIT_GUARD, str(exc), fmt)
        return EXIT_GUARD
    except ValueError as exc:
        _emit_error(EXIT_USAGE, str(exc), fmt)
        return EXIT_USAGE

    text = _render(payload, fmt)
    sys.stdout.write(text)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    if cfg.command == "verify" and not payload["all_passed"]:
        return EXIT_VERIFY
    return EXIT_OK


def _emit_error(code: int, message: str, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps({"error": {"code": code, "message": message}}) + "\n")
    else:
        sys.stderr.write(f"error: {message}\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run_command(sys.argv[1:] if argv is None else list(argv))


if __name__ == "__main__":
    raise SystemExit(main())
