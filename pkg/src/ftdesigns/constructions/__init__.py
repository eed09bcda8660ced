"""Executable example constructions and a registry of named instances."""

from __future__ import annotations

from .data import Expected, load, omega_power
from .examples import (
    ExampleInstance,
    ex_d8q8,
    ex_gamma_l1,
    ex_hall,
    ex_hyperbolic,
    ex_sem1dim_3pts,
    ex_sem1dim_subfield,
    ex_tensor,
    frobenius_image,
    quadric_zero_set,
    table1_instance,
    table2_instance,
    table2_subgroup,
)
from .spreads import SpreadSet, desarguesian_spread, hall_spreads, is_spread, sl2_5, sl2_9
from .verify import InstanceReport, verify_instance


def _registry() -> dict:
    reg = {
        "hyperbolic": ex_hyperbolic,
        "gamma-l1": ex_gamma_l1,
        "tens-1": lambda: ex_tensor(1),
        "tens-2": lambda: ex_tensor(2),
        "hall": lambda: ex_hall()[1],
        "d8q8": ex_d8q8,
    }
    for entry in load()["sem1dim_3pts"]:
        reg[entry["id"]] = lambda a=tuple(entry["args"]): ex_sem1dim_3pts(*a)
    for entry in load()["sem1dim_subfield"]:
        reg[entry["id"]] = lambda a=tuple(entry["args"]): ex_sem1dim_subfield(*a)
    for i in range(1, len(load()["table1"]) + 1):
        reg[f"table1-{i}"] = lambda i=i: table1_instance(i)
    for i in range(1, len(load()["table2"]) + 1):
        reg[f"table2-{i}"] = lambda i=i: table2_instance(i)
    return reg


REGISTRY = _registry()


def build(example_id: str) -> ExampleInstance:
    try:
        return REGISTRY[example_id]()
    except KeyError:
        raise KeyError(f"unknown example {example_id!r}") from None


__all__ = [
    "REGISTRY", "build", "Expected", "ExampleInstance", "InstanceReport", "SpreadSet",
    "desarguesian_spread", "ex_d8q8", "ex_gamma_l1", "ex_hall", "ex_hyperbolic",
    "ex_sem1dim_3pts", "ex_sem1dim_subfield", "ex_tensor", "frobenius_image",
    "hall_spreads", "is_spread", "omega_power", "quadric_zero_set", "sl2_5", "sl2_9",
    "table1_instance", "table2_instance", "table2_subgroup", "verify_instance",
]
