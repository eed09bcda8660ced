"""Access to the embedded example data.

Every value in ``examples.json`` is wrapped as ``{"value": ..., "provenance": ...}``;
provenance is ``PRINTED: ...`` for transcribed values and ``DERIVED: ...`` for
values computed from printed ones.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from ..errors import ParseError
from ..gf import FieldSpec

DATA_VERSION = 1


@dataclass(frozen=True)
class Expected:
    value: object
    provenance: str

    def to_json(self):
        return {"value": self.value, "provenance": self.provenance}


@lru_cache(maxsize=None)
def load() -> dict:
    text = resources.files(__package__).joinpath("data/examples.json").read_text()
    data = json.loads(text)
    if data.get("version") != DATA_VERSION:
        raise ParseError(f"unsupported data version {data.get('version')}")
    return data


def wrapped(obj) -> Expected:
    if not isinstance(obj, dict) or set(obj) != {"value", "provenance"}:
        raise ParseError(f"expected a value/provenance wrapper, got {obj!r}")
    return Expected(obj["value"], obj["provenance"])


_POWER = re.compile(r"w(?:\^(-?\d+))?")


def omega_power(expr: str, F: FieldSpec):
    """Resolve '0', '1', 'w' or 'w^e' against the field's designated primitive element."""
    expr = expr.replace(" ", "")
    if expr == "0":
        return F.zero
    if expr == "1":
        return F.one
    m = _POWER.fullmatch(expr)
    if not m:
        raise ParseError(f"cannot read field element {expr!r}")
    return F.omega ** int(m.group(1) or 1)
