"""Experiment configuration: line-oriented ``key = value`` files.

    x_list    = 10000, 1000000
    y_list    = 16, 100, x^0.5, x/log(x), x
    k_range   = 0, 3
    laws      = thm11, envelope19
    r_list    = 0.5, 1, 2
    cache_dir = .cache/nu
    format    = csv
    workers   = 1

``#`` starts a comment.  y entries are integers or rules in x: ``x``,
``x^theta`` (floored, then clamped to [16, x]) and ``x/log(x)``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from ..errors import DomainError
from ..laws import LAW_IDS, MIN_Y


class ConfigError(DomainError):
    pass


@dataclass
class ExperimentConfig:
    x_list: list[int]
    y_spec: list[str]
    k_range: tuple[int, int] = (0, 3)
    laws: list[str] = field(default_factory=list)
    r_list: list[float] = field(default_factory=list)
    cache_dir: str | None = None
    format: str = "csv"
    workers: int | None = None

    def __post_init__(self):
        if not self.x_list:
            raise ConfigError("x_list is empty")
        if not self.y_spec:
            raise ConfigError("no y values")
        lo, hi = self.k_range
        if lo < 0 or hi < lo:
            raise ConfigError(f"bad k_range {self.k_range}")
        unknown = set(self.laws) - set(LAW_IDS)
        if unknown:
            raise ConfigError(f"unknown laws {sorted(unknown)}; choose from {LAW_IDS}")
        if self.format not in ("csv", "markdown"):
            raise ConfigError(f"format must be csv or markdown, got {self.format!r}")
        for x in self.x_list:
            self.resolve_y(x)

    def resolve_y(self, x: int) -> list[int]:
        """Distinct integer y values for this x, ascending."""
        return sorted({resolve_y(spec, x) for spec in self.y_spec})

    def echo(self) -> dict:
        return {
            "x_list": list(self.x_list), "y_spec": list(self.y_spec), "k_range": list(self.k_range),
            "laws": list(self.laws), "r_list": list(self.r_list), "format": self.format,
        }


_THETA = re.compile(r"^x\^([0-9.]+)$")


def resolve_y(spec, x: int) -> int:
    s = str(spec).replace(" ", "")
    if re.fullmatch(r"\d+", s):
        y = int(s)
        if not MIN_Y <= y <= x:
            raise ConfigError(f"y={y} outside [{MIN_Y}, {x}]")
        return y
    if s == "x":
        y = x
    elif s == "x/log(x)":
        y = math.floor(x / math.log(x))
    elif m := _THETA.match(s):
        y = math.floor(x ** float(m.group(1)))
    else:
        raise ConfigError(f"cannot resolve y spec {spec!r}")
    if x < MIN_Y:
        raise ConfigError(f"x={x} below the minimum y={MIN_Y}")
    return min(max(y, MIN_Y), x)


def _items(value: str) -> list[str]:
    return [v.strip() for v in value.split(",") if v.strip()]


def parse_config(text: str) -> ExperimentConfig:
    raw: dict[str, str] = {}
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"line {n}: expected 'key = value'")
        raw[key.strip()] = value.strip()
    known = {"x_list", "y_list", "k_range", "laws", "r_list", "cache_dir", "format", "workers"}
    extra = set(raw) - known
    if extra:
        raise ConfigError(f"unknown keys {sorted(extra)}")
    try:
        kwargs = dict(
            x_list=[int(float(v)) if "e" in v.lower() else int(v) for v in _items(raw.get("x_list", ""))],
            y_spec=_items(raw.get("y_list", "")),
            laws=_items(raw.get("laws", "")),
            r_list=[float(v) for v in _items(raw.get("r_list", ""))],
            cache_dir=raw.get("cache_dir") or None,
            format=raw.get("format", "csv"),
            workers=int(raw["workers"]) if "workers" in raw else None,
        )
        if "k_range" in raw:
            lo, hi = (int(v) for v in _items(raw["k_range"]))
            kwargs["k_range"] = (lo, hi)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return ExperimentConfig(**kwargs)
