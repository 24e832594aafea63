"""Scenario configs: one dict in, one JSON-ready report out.

A config names the construction and its inputs:

    {"theorem": "3.2", "spaces": ["rationals", "rationals"], "depth": 6,
     "fuel": 256, "oracles": ["puncture"], "seed": 0}

Theorem tags: "3.1", "3.2", "4.1-lift", "4.1-lower", "4.1-roundtrip", "4.3".
Every report carries "ok", true only when all its checks certified.
"""

from __future__ import annotations

from typing import Optional

from ..errors import ConfigError
from ..topology import FiniteSpace, space_from_name
from .products import ProductSpace
from .thm31 import run_thm31
from .thm32 import run_thm32
from .thm41 import check_lift, check_lower, check_roundtrip, expand_beta, krom_lift_beta, \
    krom_product, krom_shrink_beta, memoized, shrink_beta
from .thm43 import run_thm43

THEOREMS = ("3.1", "3.2", "4.1-lift", "4.1-lower", "4.1-roundtrip", "4.3")

DEFAULT_SPACES = {
    "3.2": ["rationals", "rationals"],
    "4.1-lift": ["finite:sierpinski"],
    "4.1-lower": ["finite:sierpinski"],
    "4.1-roundtrip": ["finite:sierpinski"],
    "4.3": ["baire-omega"],
}


def _int(config, key, default, low=0):
    value = config.get(key, default)
    if not isinstance(value, int) or isinstance(value, bool) or value < low:
        raise ConfigError(f"{key} must be an integer >= {low}")
    return value


def _spaces(config, theorem):
    names = config.get("spaces") or DEFAULT_SPACES.get(theorem, [])
    if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
        raise ConfigError("spaces must be a list of zoo names")
    return [space_from_name(n) for n in names]


def _thm41(theorem: str, F, indices: int, depth: int) -> dict:
    if not isinstance(F, FiniteSpace):
        raise ConfigError("the exhaustive transfer check needs a finite space")
    X = ProductSpace({i: F for i in range(indices)})
    K = krom_product(X)
    reports = []
    for sigma in (shrink_beta(X), expand_beta(X)):
        if theorem == "4.1-lift":
            reports.append(check_lift(sigma, X, depth))
        elif theorem == "4.1-lower":
            reports.append(check_lower(krom_lift_beta(memoized(sigma), X, K), X, depth))
        else:
            reports.append(check_roundtrip(sigma, X, depth))
    if theorem == "4.1-lower":
        reports.append(check_lower(krom_shrink_beta(K), X, depth))
    return {"theorem": theorem, "space": F.space_id, "indices": indices, "depth": depth,
            "checks": [r.to_json() for r in reports], "ok": all(r.ok for r in reports)}


def run_scenario(config: dict, fuel: Optional[int] = None) -> dict:
    if not isinstance(config, dict):
        raise ConfigError("a scenario config is a JSON object")
    theorem = str(config.get("theorem", ""))
    if theorem not in THEOREMS:
        raise ConfigError(f"unknown theorem tag {theorem!r}; choose from {', '.join(THEOREMS)}")
    seed = _int(config, "seed", 0)
    if "fuel" in config:
        fuel = _int(config, "fuel", 1, low=1)
    if theorem == "3.1":
        return run_thm31(_int(config, "family", 100, low=1), seed)
    spaces = _spaces(config, theorem)
    if theorem == "3.2":
        if len(spaces) != 2:
            raise ConfigError("theorem 3.2 takes two spaces X and Y")
        X, Y = spaces
        if X.space_id != "rationals" or Y.space_id != "rationals":
            raise ConfigError("the 3.2 scenario is wired for X = Y = rationals")
        oracles = config.get("oracles") or ["puncture"]
        if len(oracles) != 1 or oracles[0] not in ("puncture", "whole"):
            raise ConfigError("oracles must be [\"puncture\"] or [\"whole\"]")
        report = run_thm32(X, Y, _int(config, "depth", 6), oracles[0], seed, fuel)
        report["ok"] = report["certified"]
        return report
    if theorem.startswith("4.1"):
        if len(spaces) != 1:
            raise ConfigError("the product scenarios take one factor space")
        return _thm41(theorem, spaces[0], _int(config, "indices", 2, low=1),
                      _int(config, "depth", 3))
    if len(spaces) != 1:
        raise ConfigError("theorem 4.3 takes one space")
    return run_thm43(spaces[0], _int(config, "depth", 5), fuel=fuel)
