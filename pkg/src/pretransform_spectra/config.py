"""Code-spec JSON ingestion and CSV/JSON output helpers."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from . import __version__
from .dyadic import Dyadic
from .monomial import CodeSpec, DomainError, construct_pw, construct_rm


class ConfigError(DomainError):
    pass


def load_json_arg(text: str) -> Any:
    """Inline JSON, or ``@path`` to a JSON file."""
    try:
        if text.startswith("@"):
            return json.loads(Path(text[1:]).read_text())
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read JSON from {text!r}: {exc}") from exc


def _reject_unknown(obj: Mapping[str, Any], allowed: set[str], where: str) -> None:
    extra = set(obj) - allowed
    if extra:
        raise ConfigError(f"unknown keys in {where}: {sorted(extra)}")


def code_from_json(obj: Any) -> CodeSpec:
    """``{"m": 4, "info": {"kind": "rm", "r": 2}}``, or kinds ``rows`` / ``pw``."""
    if not isinstance(obj, Mapping):
        raise ConfigError("code spec must be a JSON object")
    _reject_unknown(obj, {"m", "info"}, "code spec")
    m, info = obj.get("m"), obj.get("info")
    if not isinstance(m, int) or m < 0:
        raise ConfigError("code spec needs a non-negative integer 'm'")
    if not isinstance(info, Mapping):
        raise ConfigError("code spec needs an 'info' object")
    kind = info.get("kind")
    if kind == "rm":
        _reject_unknown(info, {"kind", "r"}, "info")
        r = info.get("r")
        if not isinstance(r, int):
            raise ConfigError("rm info needs an integer 'r'")
        return construct_rm(m, r)
    if kind == "pw":
        _reject_unknown(info, {"kind", "K"}, "info")
        K = info.get("K")
        if not isinstance(K, int):
            raise ConfigError("pw info needs an integer 'K'")
        return construct_pw(m, K)
    if kind == "rows":
        _reject_unknown(info, {"kind", "rows"}, "info")
        rows = info.get("rows")
        if not isinstance(rows, list) or not all(isinstance(r, int) for r in rows):
            raise ConfigError("rows info needs a list of integer row indices")
        return CodeSpec.from_rows(m, rows)
    raise ConfigError(f"unknown info kind {kind!r}")


def code_to_json(spec: CodeSpec) -> dict[str, Any]:
    return {"m": spec.m, "info": {"kind": "rows", "rows": list(spec.info_rows)}}


def csv_header(config: Mapping[str, Any], seed: int | None) -> str:
    lines = [
        f"# pretransform-spectra {__version__}",
        "# config: " + json.dumps(config, sort_keys=True, separators=(",", ":")),
        f"# seed: {seed if seed is not None else 'none'}",
    ]
    return "\n".join(lines) + "\n"


def dyadic_fields(value: Dyadic) -> tuple[int, int, str]:
    lg = value.log2()
    return value.mantissa, value.exponent, ("-inf" if lg == float("-inf") else f"{lg:.6f}")


def avg_spectrum_csv(values: list[Dyadic]) -> str:
    lines = ["d,mantissa,exponent,log2"]
    for d, v in enumerate(values):
        if d == 0 or not v:
            continue
        mant, exp, lg = dyadic_fields(v)
        lines.append(f"{d},{mant},{exp},{lg}")
    return "\n".join(lines) + "\n"


def parse_avg_spectrum_csv(text: str) -> dict[int, Dyadic]:
    out = {}
    for line in text.splitlines():
        if not line or line.startswith("#") or line.startswith("d,"):
            continue
        d, mant, exp, _ = line.split(",")
        out[int(d)] = Dyadic(int(mant), int(exp))
    return out


def parse_spectrum_csv(text: str) -> dict[int, int]:
    out = {}
    for line in text.splitlines():
        if not line or line.startswith("#") or line.startswith("d,"):
            continue
        d, c = line.split(",")
        out[int(d)] = int(c)
    return out
