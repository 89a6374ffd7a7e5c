"""Loading of the versioned golden values shipped in ``fixtures/``."""

from __future__ import annotations

import hashlib
import json
from importlib import resources
from pathlib import Path

from .polyring import FactorClaim, Poly, parse_poly

DEFAULT_NAME = "reference_values.json"


def fixture_path() -> Path:
    return Path(str(resources.files("quinticslice") / "fixtures" / DEFAULT_NAME))


def load(path: str | Path | None = None) -> dict:
    p = Path(path) if path is not None else fixture_path()
    data = json.loads(p.read_text())
    data["_sha256"] = hashlib.sha256(p.read_bytes()).hexdigest()
    return data


def factor_claim(entry: dict, var: str = "S") -> FactorClaim:
    unit = entry["sign"]
    for prime, exp in entry["prime_powers"]:
        unit *= prime**exp
    factors = tuple((parse_poly(text, var), int(mult)) for text, mult in entry["factors"])
    return FactorClaim(unit, factors)


def poly(data: dict, key: str, var: str = "S") -> Poly:
    return parse_poly(data[key], var)
