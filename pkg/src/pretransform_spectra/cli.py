"""Command-line entry point.

Exit status: 0 when everything checked passes, 1 when a check fails,
2 for bad input (malformed JSON, invalid code/transform, guard exceeded).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass, fields
from typing import Any, Mapping

from . import __version__, verify
from .asymptotics import (
    GAP_OFFSET,
    GAP_SLOPE,
    original_growth_orders,
    rm_min_weight_average,
    rm_min_weight_original,
    theorem2_bounds,
    theorem4_compare,
)
from .config import (
    ConfigError,
    avg_spectrum_csv,
    code_from_json,
    csv_header,
    dyadic_fields,
    load_json_arg,
)
from .dyadic import Dyadic
from .monomial import CodeSpec, DomainError, construct_rm, d_min, is_decreasing, rbar
from .spectrum_avg import (
    avg_cum_weight,
    avg_num_weight_d,
    avg_spectrum,
    log_avg_cum_weight,
    log_avg_num_weight_d,
    log_avg_spectrum,
    min_weight_count_original,
)
from .spectrum_exact import MAX_K, exact_spectrum
from .transform import TransformMatrix, ensemble_from_json, sample_pretransform

COMMANDS = (
    "construct",
    "exact-spectrum",
    "avg-spectrum",
    "min-weight",
    "figure-data",
    "verify",
    "compare-pretransform",
)


@dataclass
class JobConfig:
    command: str
    code: Any = None
    transform: Any = None
    seed: int | None = None
    threads: int = 1
    mode: str = "exact"
    out: str | None = None
    format: str = "csv"
    d_max: int | None = None
    max_k: int = MAX_K
    which: str = "fig2"
    m_min: int = 6
    m_max: int = 20
    step: int = 2
    rate: float = 0.5
    k: int = 1
    suite: str = "all"

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "JobConfig":
        names = {f.name for f in fields(cls)}
        extra = set(data) - names
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        if "command" not in data:
            raise ConfigError("config needs a 'command'")
        cfg = cls(**data)
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.mode not in ("exact", "log"):
            raise ConfigError("mode must be 'exact' or 'log'")
        if self.format not in ("csv", "json"):
            raise ConfigError("format must be 'csv' or 'json'")
        if not isinstance(self.threads, int) or self.threads < 1:
            raise ConfigError("threads must be a positive integer")
        if self.seed is not None and (not isinstance(self.seed, int) or not 0 <= self.seed < 1 << 64):
            raise ConfigError("seed must be an unsigned 64-bit integer")
        for name in ("threads", "max_k", "m_min", "m_max", "step", "k"):
            if not isinstance(getattr(self, name), int):
                raise ConfigError(f"{name} must be an integer")
        if self.d_max is not None and not isinstance(self.d_max, int):
            raise ConfigError("d_max must be an integer")
        if not isinstance(self.rate, (int, float)):
            raise ConfigError("rate must be a number")
        if self.which not in ("fig2", "fig3"):
            raise ConfigError("which must be 'fig2' or 'fig3'")
        if self.suite not in (*verify.SUITES, "all"):
            raise ConfigError(f"unknown suite {self.suite!r}")
        needs_code = {"construct", "exact-spectrum", "avg-spectrum", "min-weight", "compare-pretransform"}
        if self.command in needs_code and self.code is None:
            raise ConfigError(f"{self.command} needs --code")

    def echo(self) -> dict[str, Any]:
        """Config as echoed in output headers; thread count and output path do not change results."""
        d = asdict(self)
        d.pop("threads")
        d.pop("out")
        for key in ("code", "transform"):
            if isinstance(d[key], str):
                d[key] = load_json_arg(d[key])
        return d


def _parse_code(cfg: JobConfig) -> CodeSpec:
    obj = load_json_arg(cfg.code) if isinstance(cfg.code, str) else cfg.code
    return code_from_json(obj)


def _resolve_transform(cfg: JobConfig, N: int) -> tuple[TransformMatrix, int | None]:
    if cfg.transform is None:
        return TransformMatrix.identity(N), cfg.seed
    obj = load_json_arg(cfg.transform) if isinstance(cfg.transform, str) else cfg.transform
    ensemble, seed = ensemble_from_json(obj)
    if ensemble.kind == "uniform_random":
        if "seed" in obj and cfg.seed is not None and cfg.seed != seed:
            raise ConfigError("conflicting seeds in --seed and the transform spec")
        seed = seed if "seed" in obj else (cfg.seed if cfg.seed is not None else 0)
    else:
        seed = cfg.seed
    return sample_pretransform(N, ensemble, seed or 0), seed


def _emit(cfg: JobConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_text(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _dyadic_json(v: Dyadic) -> dict[str, Any]:
    lg = v.log2()
    return {"mantissa": v.mantissa, "exponent": v.exponent, "log2": round(lg, 6) if v else None}


def _fmt(x: float | None) -> str:
    if x is None:
        return ""
    if x == -math.inf:
        return "-inf"
    return f"{x:.6f}"


def cmd_construct(cfg: JobConfig) -> int:
    spec = _parse_code(cfg)
    desc = {
        "label": spec.describe(),
        "m": spec.m,
        "N": spec.N,
        "K": spec.K,
        "rows": list(spec.info_rows),
        "monomials": [f.name() for f in spec.monomials],
        "decreasing": is_decreasing(spec),
        "rbar": rbar(spec) if spec.K else None,
        "d_min": d_min(spec) if spec.K else None,
    }
    if cfg.format == "json":
        _emit(cfg, _json_text(desc))
    else:
        lines = [csv_header(cfg.echo(), cfg.seed) + "row,monomial,degree,weight"]
        lines += [f"{f.row},{f.name()},{f.degree},{f.weight}" for f in spec.monomials]
        _emit(cfg, "\n".join(lines) + "\n")
    return 0


def cmd_exact_spectrum(cfg: JobConfig) -> int:
    spec = _parse_code(cfg)
    t, seed = _resolve_transform(cfg, spec.N)
    spec_counts = exact_spectrum(spec, t, max_k=cfg.max_k, threads=cfg.threads)
    if cfg.format == "json":
        _emit(cfg, _json_text({"config": cfg.echo(), "seed": seed, "spectrum": spec_counts.as_dict()}))
    else:
        _emit(cfg, csv_header(cfg.echo(), seed) + spec_counts.to_csv())
    return 0


def cmd_avg_spectrum(cfg: JobConfig) -> int:
    spec = _parse_code(cfg)
    d_max = spec.N if cfg.d_max is None else cfg.d_max
    if not 0 < d_max <= spec.N:
        raise ConfigError(f"d cap {d_max} outside (0, {spec.N}]")
    head = csv_header(cfg.echo(), cfg.seed)
    if cfg.mode == "log":
        rows = [(d, v) for d, v in enumerate(log_avg_spectrum(spec, d_max)) if d and v != -math.inf]
        if cfg.format == "json":
            _emit(cfg, _json_text({"config": cfg.echo(), "spectrum": [{"d": d, "log2": round(v, 6)} for d, v in rows]}))
        else:
            _emit(cfg, head + "d,log2\n" + "".join(f"{d},{v:.6f}\n" for d, v in rows))
        return 0
    values = avg_spectrum(spec, d_max)
    if cfg.format == "json":
        entries = [{"d": d, **_dyadic_json(v)} for d, v in enumerate(values) if d and v]
        _emit(cfg, _json_text({"config": cfg.echo(), "spectrum": entries}))
    else:
        _emit(cfg, head + avg_spectrum_csv(values))
    return 0


def cmd_min_weight(cfg: JobConfig) -> int:
    spec = _parse_code(cfg)
    if not spec.K:
        raise ConfigError("information set is empty")
    dm = d_min(spec)
    report: dict[str, Any] = {"code": spec.describe(), "d_min": dm, "decreasing": is_decreasing(spec)}
    status = 0
    if cfg.mode == "log":
        report["average_log2"] = round(log_avg_num_weight_d(spec, dm), 6)
    else:
        report["average"] = _dyadic_json(avg_num_weight_d(spec, dm))
    if report["decreasing"]:
        report["original"] = min_weight_count_original(spec)
        rep = theorem4_compare(spec)
        report["comparison"] = rep.to_json()
        ok = rep.holds and rep.equality == rep.predicate
        report["pass"] = ok
        status = 0 if ok else 1
    _emit(cfg, _json_text(report))
    return status


def _m_values(cfg: JobConfig) -> list[tuple[int, int]]:
    if cfg.step < 1 or cfg.m_min > cfg.m_max or cfg.m_min < 1:
        raise ConfigError(f"infeasible m range {cfg.m_min}..{cfg.m_max} step {cfg.step}")
    if not 0 < cfg.rate < 1:
        raise ConfigError("rate must lie strictly between 0 and 1")
    out = []
    for m in range(cfg.m_min, cfg.m_max + 1, cfg.step):
        r = m * cfg.rate
        if r != int(r):
            raise ConfigError(f"m={m} with rate {cfg.rate} does not give an integer r; use even m for rate 1/2")
        r = int(r)
        if r < 1 or m - r < 2:
            raise ConfigError(f"m={m}, r={r} outside the bound's range (need r >= 1, m - r >= 2)")
        if cfg.which == "fig3" and not 1 <= cfg.k < r:
            raise ConfigError(f"k={cfg.k} needs 1 <= k < r (r={r})")
        out.append((m, r))
    return out


def _fig2_rows(cfg: JobConfig) -> tuple[list[dict[str, Any]], bool]:
    rows, ok = [], True
    for m, r in _m_values(cfg):
        if cfg.mode == "log":
            pre = log_avg_num_weight_d(construct_rm(m, r), 1 << (m - r))
        else:
            pre = rm_min_weight_average(m, r).log2()
        lo, hi = theorem2_bounds(r)
        ok &= lo <= pre <= hi
        orig = math.log2(rm_min_weight_original(m, r))
        rows.append({"m": m, "r": r, "log2_original": orig, "log2_pretransformed": pre, "lower": lo, "upper": hi})
    return rows, ok


def _fig3_rows(cfg: JobConfig) -> tuple[list[dict[str, Any]], bool]:
    rows, ok = [], True
    k = cfg.k
    slope = (1 << (k + 2)) - 1
    for m, r in _m_values(cfg):
        spec = construct_rm(m, r)
        d = 1 << (m - r + k)
        pre = log_avg_cum_weight(spec, d) if cfg.mode == "log" else avg_cum_weight(spec, d).log2()
        orig = None
        if spec.K <= cfg.max_k:
            counts = exact_spectrum(spec, TransformMatrix.identity(spec.N), threads=cfg.threads)
            orig = math.log2(counts.cumulative(d) - 1)
        lo = float(slope * (r - k))
        ok &= pre >= lo
        upper = slope * r + GAP_SLOPE * math.log2(r) + GAP_OFFSET
        rows.append({"m": m, "r": r, "log2_original": orig, "log2_pretransformed": pre, "lower": lo, "upper": upper})
    return rows, ok


def cmd_figure_data(cfg: JobConfig) -> int:
    rows, ok = (_fig2_rows if cfg.which == "fig2" else _fig3_rows)(cfg)
    cols = ["m", "r", "log2_original", "log2_pretransformed", "lower", "upper"]
    if cfg.format == "json":
        clean = [{c: (round(v, 6) if isinstance(v, float) else v) for c, v in row.items()} for row in rows]
        meta = original_growth_orders(0 if cfg.which == "fig2" else cfg.k)
        _emit(cfg, _json_text({"config": cfg.echo(), "rows": clean, "pass": ok, "original_growth_orders": meta}))
    else:
        lines = [",".join(cols)]
        for row in rows:
            lines.append(",".join(str(row[c]) if isinstance(row[c], int) else _fmt(row[c]) for c in cols))
        _emit(cfg, csv_header(cfg.echo(), cfg.seed) + "\n".join(lines) + "\n")
    return 0 if ok else 1


def cmd_verify(cfg: JobConfig) -> int:
    report = verify.run(cfg.suite)
    _emit(cfg, _json_text(report))
    return 0 if report["pass"] else 1


def cmd_compare_pretransform(cfg: JobConfig) -> int:
    spec = _parse_code(cfg)
    t, seed = _resolve_transform(cfg, spec.N)
    ident = exact_spectrum(spec, TransformMatrix.identity(spec.N), max_k=cfg.max_k, threads=cfg.threads)
    pre = exact_spectrum(spec, t, max_k=cfg.max_k, threads=cfg.threads)
    avg = avg_spectrum(spec)
    if cfg.format == "json":
        rows = [
            {"d": d, "original": ident[d], "pretransformed": pre[d], "average": _dyadic_json(avg[d])}
            for d in range(1, spec.N + 1)
            if ident[d] or pre[d] or avg[d]
        ]
        _emit(cfg, _json_text({"config": cfg.echo(), "seed": seed, "rows": rows}))
        return 0
    lines = ["d,original,pretransformed,avg_mantissa,avg_exponent,avg_log2"]
    for d in range(1, spec.N + 1):
        if ident[d] or pre[d] or avg[d]:
            mant, exp, lg = dyadic_fields(avg[d])
            lines.append(f"{d},{ident[d]},{pre[d]},{mant},{exp},{lg}")
    _emit(cfg, csv_header(cfg.echo(), seed) + "\n".join(lines) + "\n")
    return 0


HANDLERS = {
    "construct": cmd_construct,
    "exact-spectrum": cmd_exact_spectrum,
    "avg-spectrum": cmd_avg_spectrum,
    "min-weight": cmd_min_weight,
    "figure-data": cmd_figure_data,
    "verify": cmd_verify,
    "compare-pretransform": cmd_compare_pretransform,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pretransform-spectra",
        description="Exact and ensemble-average weight spectra of pre-transformed RM/polar codes.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON job config (inline or @file); flags override its keys")
    common.add_argument("--code", help='code spec JSON or @file, e.g. {"m":4,"info":{"kind":"rm","r":2}}')
    common.add_argument("--transform", help='transform spec JSON or @file, e.g. {"kind":"random","seed":7}')
    common.add_argument("--seed", type=int)
    common.add_argument("--threads", type=int)
    common.add_argument("--mode", choices=["exact", "log"])
    common.add_argument("--out")
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--max-k", dest="max_k", type=int, help="enumeration guard on K")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("construct", parents=[common], help="resolve and describe a code spec")
    sub.add_parser("exact-spectrum", parents=[common], help="brute-force spectrum for one transform")
    p = sub.add_parser("avg-spectrum", parents=[common], help="ensemble-average spectrum")
    p.add_argument("--d-max", dest="d_max", type=int)
    sub.add_parser("min-weight", parents=[common], help="minimum-weight counts, average vs original")
    p = sub.add_parser("figure-data", parents=[common], help="data series for the bound figures")
    p.add_argument("--which", choices=["fig2", "fig3"])
    p.add_argument("--m-min", dest="m_min", type=int)
    p.add_argument("--m-max", dest="m_max", type=int)
    p.add_argument("--step", type=int)
    p.add_argument("--rate", type=float)
    p.add_argument("--k", type=int)
    p = sub.add_parser("verify", parents=[common], help="run self-check suites")
    p.add_argument("--suite", choices=[*verify.SUITES, "all"])
    sub.add_parser("compare-pretransform", parents=[common], help="original vs transformed vs average spectrum")
    return parser


def config_from_args(args: argparse.Namespace) -> JobConfig:
    data: dict[str, Any] = {}
    if args.config is not None:
        loaded = load_json_arg(args.config)
        if not isinstance(loaded, dict):
            raise ConfigError("config must be a JSON object")
        data.update(loaded)
    cli = {k: v for k, v in vars(args).items() if k != "config" and v is not None}
    if "command" in data and data["command"] != cli["command"]:
        raise ConfigError(f"config command {data['command']!r} differs from {cli['command']!r}")
    data.update(cli)
    return JobConfig.from_mapping(data)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        return HANDLERS[cfg.command](cfg)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
