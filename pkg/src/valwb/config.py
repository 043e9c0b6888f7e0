"""Workbench configuration: base field, precision, and valuation spec.

Config files are line-oriented ``key = value`` text with ``#`` comments.
Grammar (all keys optional unless a spec kind requires them):

    char = 0 | <prime p>                  # base field: Q or F_p
    precision = <p/q>                     # working precision (default 64)
    ram_cap = <int>                       # ramification cap (default 64)
    horizon = <int>                       # sequence horizon (default 12)
    window = <int>                        # stabilization window (default 3)
    seed = <int>                          # RNG seed for sampled harnesses
    spec.kind = gauss | monomial | keypoly | pcslimit
    spec.center = <series text>           # monomial
    spec.gamma = <value text>             # monomial; "p/q" or "(z, p/q)"
    spec.Q = <polynomial text>            # keypoly
    spec.vQ = <value text>                # keypoly
    spec.base.kind = gauss | monomial     # keypoly digit valuation
    spec.base.center, spec.base.gamma     # when base.kind = monomial
    spec.generator = <generator name>     # pcslimit; e.g. "exponential"
    spec.over = K | Khat
    spec.declared_cofinal = true | false

The environment variable VALWB_PREC overrides ``precision``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import ParseError, WorkbenchError
from .field import GF, QQ, BaseField
from .groupval import GroupVal
from .pcs import builtin_generator
from .polyx import RATFUNC, polyx_from_text
from .series import PuiseuxSeries
from .valuation import OVER_K, OVER_KHAT, ValuationSpec

DEFAULT_PRECISION = Fraction(64)
DEFAULT_RAM_CAP = 64
DEFAULT_HORIZON = 12
DEFAULT_WINDOW = 3
DEFAULT_SEED = 0


@dataclass
class WorkbenchConfig:
    field: BaseField
    precision: Fraction = DEFAULT_PRECISION
    ram_cap: int = DEFAULT_RAM_CAP
    horizon: int = DEFAULT_HORIZON
    window: int = DEFAULT_WINDOW
    seed: int = DEFAULT_SEED
    spec: Optional[ValuationSpec] = None

    def __post_init__(self):
        if self.precision <= 0:
            raise WorkbenchError("precision must be positive")
        if self.horizon < 3:
            raise WorkbenchError("horizon must be at least 3")
        if self.window < 1:
            raise WorkbenchError("window must be at least 1")


def parse_config(text: str, env=None) -> WorkbenchConfig:
    """Parse config text; ``env`` defaults to ``os.environ``."""
    env = os.environ if env is None else env
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not key:
            raise ParseError(f"line {lineno}: empty key")
        if key in entries:
            raise ParseError(f"line {lineno}: duplicate key {key!r}")
        entries[key] = (lineno, value)
    return build_config(entries, env)


def load_config(path: str, env=None) -> WorkbenchConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read(), env)


def _take(entries, key, default=None):
    if key in entries:
        return entries.pop(key)[1]
    return default


def build_config(entries: dict, env) -> WorkbenchConfig:
    entries = dict(entries)
    char = int(_take(entries, "char", "0"))
    field = QQ if char == 0 else GF(char)
    precision = Fraction(_take(entries, "precision", str(DEFAULT_PRECISION)))
    if "VALWB_PREC" in env:
        precision = Fraction(env["VALWB_PREC"])
    cfg = WorkbenchConfig(
        field=field,
        precision=precision,
        ram_cap=int(_take(entries, "ram_cap", str(DEFAULT_RAM_CAP))),
        horizon=int(_take(entries, "horizon", str(DEFAULT_HORIZON))),
        window=int(_take(entries, "window", str(DEFAULT_WINDOW))),
        seed=int(_take(entries, "seed", str(DEFAULT_SEED))),
    )
    spec_entries = {k: v for k, v in entries.items() if k.startswith("spec.")}
    for k in spec_entries:
        entries.pop(k)
    if entries:
        key, (lineno, _) = next(iter(entries.items()))
        raise ParseError(f"line {lineno}: unknown key {key!r}")
    if spec_entries:
        cfg.spec = build_spec(
            {k[len("spec."):]: v[1] for k, v in spec_entries.items()}, cfg)
    return cfg


def build_spec(fields: dict, cfg: WorkbenchConfig) -> ValuationSpec:
    fields = dict(fields)
    kind = fields.pop("kind", None)
    if kind is None:
        raise ParseError("spec.kind is required when any spec.* key is present")
    over = fields.pop("over", OVER_K)
    if over not in (OVER_K, OVER_KHAT):
        raise ParseError(f"spec.over must be K or Khat, got {over!r}")
    declared = fields.pop("declared_cofinal", "false").lower() == "true"
    if kind == "gauss":
        spec = ValuationSpec.gauss(cfg.field, over=over)
    elif kind == "monomial":
        center = PuiseuxSeries.from_text(cfg.field, fields.pop("center", "0"))
        gamma = GroupVal.from_text(_require(fields, "gamma"))
        spec = ValuationSpec.monomial(center, gamma, over=over)
    elif kind == "keypoly":
        Q = polyx_from_text(cfg.field, _require(fields, "Q"), RATFUNC)
        vQ = GroupVal.from_text(_require(fields, "vQ"))
        base_fields = {k[len("base."):]: v for k, v in list(fields.items())
                       if k.startswith("base.")}
        for k in base_fields:
            fields.pop("base." + k)
        if not base_fields:
            base_fields = {"kind": "gauss"}
        base = build_spec(base_fields, cfg)
        spec = ValuationSpec.keypoly(Q, vQ, base, over=over)
    elif kind == "pcslimit":
        gen = builtin_generator(_require(fields, "generator"), cfg.horizon)
        gen.window = cfg.window
        spec = ValuationSpec.pcslimit(gen, over=over)
    else:
        raise ParseError(f"unknown spec.kind {kind!r}")
    if fields:
        raise ParseError(f"unknown spec key 'spec.{next(iter(fields))}'")
    spec.declared_cofinal = declared
    return spec


def _require(fields: dict, key: str) -> str:
    if key not in fields:
        raise ParseError(f"spec.{key} is required for this spec kind")
    return fields.pop(key)
