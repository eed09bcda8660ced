"""Run every check on an ExampleInstance and compare with its expected values."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .. import classify as cl
from .. import design as ds
from .. import group as gr
from ..errors import DesignError
from .examples import ExampleInstance


@dataclass
class Check:
    name: str
    ok: bool
    got: object
    expected: object = None
    provenance: str | None = None

    def to_json(self):
        out = {"name": self.name, "ok": self.ok, "got": self.got}
        if self.expected is not None:
            out["expected"] = self.expected
        if self.provenance:
            out["provenance"] = self.provenance
        return out


@dataclass
class InstanceReport:
    id: str
    checks: list[Check] = field(default_factory=list)
    facts: dict = field(default_factory=dict)
    seconds: float = 0.0
    design: ds.Design | None = field(default=None, repr=False)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def to_json(self, timings: bool = True):
        out = {"id": self.id, "status": "pass" if self.ok else "fail",
               "checks": [c.to_json() for c in self.checks], "facts": self.facts}
        if timings:
            out["seconds"] = round(self.seconds, 3)
        return out


def _expect(report: InstanceReport, inst: ExampleInstance, key: str, got):
    exp = inst.expected.get(key)
    if exp is None:
        return
    want = exp.value
    if isinstance(want, list) and isinstance(got, (list, tuple)):
        ok = list(got) == want
    else:
        ok = got == want
    report.checks.append(Check(key, ok, got, want, exp.provenance))


def verify_instance(inst: ExampleInstance, cap: int = ds.DEFAULT_BLOCK_CAP,
                    fingerprint: bool = False) -> InstanceReport:
    """Flag check, both lambda computations, orbit divisibility and block shape."""
    t0 = time.perf_counter()
    rep = InstanceReport(inst.id)
    G0, p, d, B = inst.group, inst.p, inst.d, inst.base_block
    decomp = gr.orbits_on_nonzero(G0)
    orbit0 = ds.base_orbit(G0, B, p)
    stab = gr.setwise_stabilizer(G0, B).order
    flag = ds.orbit_closed_under_translation(orbit0, p, d)
    rep.facts.update({
        "g0_order": G0.order,
        "orbit_lengths": decomp.lengths,
        "base_orbit": len(orbit0),
        "g0b_order": stab,
        "flag_transitive": flag,
    })
    _expect(rep, inst, "g0_order", G0.order)
    _expect(rep, inst, "orbit_lengths", decomp.lengths)
    _expect(rep, inst, "g0b_order", stab)
    rep.checks.append(Check("flag_transitive_zero_check", flag, flag, True))
    rep.checks.append(Check("orbit_stabilizer", len(orbit0) * stab == G0.order,
                            [len(orbit0), stab, G0.order]))

    params = None
    try:
        D = inst.design(cap=cap)
        rep.design = D
        params = ds.verify_parameters(D, method="pairs" if D.v <= ds.FULL_PAIR_LIMIT else "orbit")
        rep.facts["params"] = list(params.as_tuple())
    except DesignError as exc:
        rep.facts["params_error"] = f"{type(exc).__name__}: {exc}"
        rep.checks.append(Check("verify_parameters", False, rep.facts["params_error"]))
    if params is not None:
        _expect(rep, inst, "params", list(params.as_tuple()))
        rep.checks.append(Check("identities", params.identities_hold() and params.b >= params.v,
                                list(params.as_tuple())))
    elif "params" in inst.expected:
        exp = inst.expected["params"]
        rep.checks.append(Check("params", False, None, exp.value, exp.provenance))

    if flag:
        lams = ds.orbit_lambdas(len(orbit0), B, decomp)
        values = sorted({str(x) for x in lams.values()})
        rep.facts["orbit_lambdas"] = values
        agree = params is not None and values == [str(params.lam)]
        rep.checks.append(Check("lambda_paths_agree", agree, values,
                                None if params is None else [str(params.lam)]))
        rep.checks.append(Check("lambda_is_2", values == ["2"], values, ["2"]))
        r = len(orbit0)
        rep.checks.append(Check("orbit_divisibility", cl.orbit_divisibility(G0, r), r))
    shape = ds.block_shape(B, p, d)
    rep.facts["block_shape"] = {"t": shape.t, "shape": shape.shape, "cici_index": str(shape.cici_index)}
    rep.checks.append(Check("cici_index_integral", shape.index_integral, str(shape.cici_index)))
    if fingerprint and rep.design is not None:
        rep.facts["fingerprint"] = ds.fingerprint(rep.design).digest()
    rep.seconds = time.perf_counter() - t0
    return rep
