"""Builders for the example families of flag-transitive 2-(v,k,2) designs."""

from __future__ import annotations

import itertools
import json
import dataclasses
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .. import design as ds
from .. import group as gr
from .. import linalg as la
from ..errors import BadCongruence, BadDivisor, CapExceeded, DimensionMismatch, SubgroupSearchFailed
from ..gf import FieldSpec, field_create
from . import spreads as sp
from .data import Expected, load, omega_power, wrapped


@dataclass
class ExampleInstance:
    id: str
    p: int
    d: int
    group: gr.GroupClosure
    base_block: tuple[int, ...]
    expected: dict[str, Expected] = dataclasses.field(default_factory=dict)
    field: FieldSpec | None = None
    n: int | None = None
    extra: dict = dataclasses.field(default_factory=dict)

    @property
    def v(self) -> int:
        return self.p**self.d

    def design(self, cap: int = ds.DEFAULT_BLOCK_CAP) -> ds.Design:
        return ds.design_from_base_block(self.p, self.d, self.group, self.base_block,
                                         cap=cap, field=self.field, n=self.n)


def _ids(rows, p: int) -> tuple[int, ...]:
    return tuple(sorted({la.point_id(r, p) for r in rows}))


# --- linear groups over GF(q), blown up to GF(p) ------------------------------------

def _kmat(F: FieldSpec, n: int, entries: dict) -> list:
    M = [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]
    for (i, j), c in entries.items():
        M[i][j] = c
    return M


def _subfield_basis(F: FieldSpec):
    return [F.gen**i for i in range(F.d)]


def sl_generators(F: FieldSpec, n: int) -> list[tuple[str, np.ndarray]]:
    """Elementary transvections I + c E_ij, c running over a GF(p)-basis of GF(q)."""
    gens = []
    for i, j in itertools.permutations(range(n), 2):
        for c in _subfield_basis(F):
            gens.append((f"t{i}{j}_{c.index}", la.field_blowup(_kmat(F, n, {(i, j): c}), F)))
    return gens


def sp_generators(F: FieldSpec, n: int) -> list[tuple[str, np.ndarray]]:
    """Symplectic transvections x -> x + c f(x, a) a for a in e_i and e_i + e_j."""
    if n % 2:
        raise DimensionMismatch(f"Sp needs even n, got {n}")
    m = n // 2
    J = [[F.zero] * n for _ in range(n)]
    for i in range(m):
        J[i][m + i] = F.one
        J[m + i][i] = -F.one
    axes = [[F.one if k == i else F.zero for k in range(n)] for i in range(n)]
    axes += [[F.one if k in (i, j) else F.zero for k in range(n)] for i, j in itertools.combinations(range(n), 2)]
    gens = []
    for a_i, a in enumerate(axes):
        Ja = [sum((J[r][s] * a[s] for s in range(n)), F.zero) for r in range(n)]
        for c in _subfield_basis(F):
            M = [[(F.one if r == s else F.zero) + c * Ja[r] * a[s] for s in range(n)] for r in range(n)]
            gens.append((f"s{a_i}_{c.index}", la.field_blowup(M, F)))
    return gens


def singer_cycle(F: FieldSpec, n: int) -> np.ndarray:
    """Companion matrix of the first primitive degree-n polynomial over F, blown up."""
    target = F.order**n - 1
    if n == 1:
        return la.field_blowup([[F.omega]], F)
    for low in itertools.product(range(F.order), repeat=n):
        if low[0] == 0:
            continue
        coeffs = [F.from_index(i) for i in low]
        M = [[F.zero] * n for _ in range(n)]
        for i in range(n - 1):
            M[i][i + 1] = F.one
        M[n - 1] = [-c for c in coeffs]
        A = la.field_blowup(M, F)
        if la.matrix_order(A, F.p, limit=target) == target:
            return A
    raise SubgroupSearchFailed(f"no primitive polynomial of degree {n} over {F!r}")


def classical_group(kind: str, F: FieldSpec, n: int, cap: int = gr.DEFAULT_CLOSURE_CAP,
                    extra=()) -> gr.GroupClosure:
    if kind == "GL1":
        gens = [("z", singer_cycle(F, n))]
    elif kind == "SL":
        gens = sl_generators(F, n) if n > 1 else [("one", la.identity(F.d))]
    elif kind == "Sp":
        gens = sp_generators(F, n)
    else:
        raise ValueError(f"unknown group family {kind!r}")
    return gr.closure(gens + list(extra), F.p, cap=cap)


def _q_structure(p: int, d: int, n: int) -> FieldSpec:
    if n < 1 or d % n:
        raise DimensionMismatch(f"n = {n} must divide d = {d}")
    return field_create(p, d // n)


def ex_sem1dim_3pts(p: int, d: int, n: int, X: str = "SL", cap: int = gr.DEFAULT_CLOSURE_CAP) -> ExampleInstance:
    """B = {x, zeta x, zeta^2 x} with zeta of order 3 in GF(q^n)*, translated to contain 0."""
    if (p**d - 1) % 3:
        raise BadCongruence(f"{p}^{d} is not 1 mod 3")
    F = _q_structure(p, d, n)
    G0 = classical_group(X, F, n, cap=cap)
    S = singer_cycle(F, n)
    zeta = la.mat_pow(S, (p**d - 1) // 3, p)
    x = la.vector_of([F.one] + [F.zero] * (n - 1), F)
    pts = [x, (x @ zeta) % p, (x @ zeta @ zeta) % p]
    B = _ids([(y - x) % p for y in pts], p)
    inst = ExampleInstance(f"sem1dim-3pts-{p}-{d}-{n}-{X}", p, d, G0, B, field=F, n=n)
    for entry in load()["sem1dim_3pts"]:
        if entry["args"] == [p, d, n, X]:
            inst.expected["params"] = wrapped(entry["params"])
    return inst


def ex_sem1dim_subfield(p: int, d: int, n: int, t: int, X: str = "SL",
                        allow_full_degree: bool = False,
                        cap: int = gr.DEFAULT_CLOSURE_CAP) -> ExampleInstance:
    """B = GF(p^t)-span of x = e_1, G0 = X : <sigma^(t/2)>."""
    if n < 1 or d % n:
        raise BadDivisor(f"n = {n} must divide d = {d}")
    e = d // n
    if t < 2 or t % 2 or e % t or (t == e and not allow_full_degree):
        raise BadDivisor(f"t = {t} is not a proper even divisor of {e}")
    F = field_create(p, e)
    if n == 1 and X == "SL":
        X = "GL1"
    sigma = la.block_diag(*([la.frobenius_matrix(F, t // 2)] * n))
    G0 = classical_group(X, F, n, cap=cap, extra=[("sigma", sigma)])
    step = (F.order - 1) // (p**t - 1)
    g = F.omega**step
    rows = [la.vector_of([g**i] + [F.zero] * (n - 1), F) for i in range(t)]
    B = tuple(la.span(rows, p, d).members().tolist())
    inst = ExampleInstance(f"sem1dim-subfield-{p}-{d}-{n}-{t}", p, d, G0, B, field=F, n=n)
    for entry in load()["sem1dim_subfield"]:
        if entry["args"] == [p, d, n, t]:
            inst.expected["params"] = wrapped(entry["params"])
    return inst


# --- the twenty two-dimensional examples -----------------------------------------

@lru_cache(maxsize=None)
def _table1_group(p: int, gens_key: str, omega: int | None) -> gr.GroupClosure:
    F = field_create(p, 1, omega=omega)
    mats = json.loads(gens_key)
    gens = []
    for label, M in zip("ab", mats):
        gens.append((label, np.array([[omega_power(x, F).coeffs[0] for x in row] for row in M])))
    return gr.closure(gens, p)


def table1_instance(line: int, omega: int | None = None) -> ExampleInstance:
    """Line ``line`` of the table of 2-dimensional examples; lines sharing generators share a closure."""
    rows = load()["table1"]
    if not 1 <= line <= len(rows):
        raise IndexError(f"line {line} outside 1..{len(rows)}")
    row = rows[line - 1]
    p = row["p"]
    F = field_create(p, 1, omega=omega)
    G0 = _table1_group(p, json.dumps(row["generators"]["value"]), omega)
    B = _ids([[omega_power(x, F).coeffs[0] for x in pt] for pt in row["base_block"]["value"]], p)
    expected = {k: wrapped(row[k]) for k in ("params", "g0_order")}
    return ExampleInstance(f"table1-{line}", p, 2, G0, B, expected, field=F, n=2,
                           extra={"structure": row["structure"]["value"]})


# --- Segre-variety designs ---------------------------------------------------------

@lru_cache(maxsize=None)
def _tensor_group() -> gr.GroupClosure:
    data = load()["tensor"]
    alpha = la.companion_matrix(wrapped(data["singer_poly"]).value, 2)
    beta = np.array(wrapped(data["beta"]).value)
    gamma = np.array(wrapped(data["gamma"]).value)
    I3, I2 = la.identity(3), la.identity(2)
    return gr.closure([
        ("a", la.mat_tensor(alpha, I2, 2)),
        ("b", la.mat_tensor(I3, beta, 2)),
        ("c", la.mat_tensor(I3, gamma, 2)),
    ], 2)


def tensor_block(y) -> tuple[int, ...]:
    """<x0 (x) u1, x1 (x) u1 + y (x) u2> in V_3(2) (x) V_2(2)."""
    x = la.identity(3)
    u = la.identity(2)
    first = la.tensor(x[0], u[0], 2)
    second = (la.tensor(x[1], u[0], 2) + la.tensor(np.asarray(y), u[1], 2)) % 2
    return tuple(la.span([first, second], 2, 6).members().tolist())


def ex_tensor(which: int) -> ExampleInstance:
    data = load()["tensor"]
    vecs = wrapped(data["second_vectors"]).value
    if str(which) not in vecs:
        raise ValueError(f"which must be 1 or 2, got {which}")
    expected = {k: wrapped(data[k]) for k in ("params", "orbit_lengths", "g0_order", "g0b_order")}
    return ExampleInstance(f"tens-{which}", 2, 6, _tensor_group(), tensor_block(vecs[str(which)]),
                           expected, extra={"second_vector": vecs[str(which)]})


# --- the 2-(81,6,2) design on the hyperbolic quadric -------------------------------

def _hyperbolic_data():
    return load()["hyperbolic"]


@lru_cache(maxsize=None)
def hyperbolic_group() -> gr.GroupClosure:
    h = _hyperbolic_data()
    return gr.closure([("a", np.array(wrapped(h["alpha"]).value)),
                       ("b", np.array(wrapped(h["beta"]).value))], 3)


def hyperbolic_block() -> tuple[int, ...]:
    spec = wrapped(_hyperbolic_data()["base_block"]).value
    W = la.span(spec["subspace"], 3, 4).members()
    shift = la.point_id(spec["shift"], 3)
    add = la.addition_table(3, 4)
    return tuple(sorted(W.tolist() + add[W, shift].tolist()))


def ex_hyperbolic() -> ExampleInstance:
    h = _hyperbolic_data()
    expected = {k: wrapped(h[k]) for k in ("params", "orbit_lengths", "g0_order")}
    return ExampleInstance("hyperbolic", 3, 4, hyperbolic_group(), hyperbolic_block(), expected)


def quadric_zero_set(p: int = 3) -> set[int]:
    """Nonzero points with X1 X4 + X2 X3 = 0."""
    pts = la.all_points(p, 4)
    q = (pts[:, 0] * pts[:, 3] + pts[:, 1] * pts[:, 2]) % p
    return {int(i) for i in np.nonzero(q == 0)[0] if i}


def table2_subgroup(line: int) -> gr.GroupClosure:
    rows = load()["table2"]
    if not 1 <= line <= len(rows):
        raise IndexError(f"line {line} outside 1..{len(rows)}")
    G = hyperbolic_group()
    bindings = dict(zip("ab", G.gen_matrices))
    words = wrapped(rows[line - 1]["words"]).value
    gens = [(f"h{i}", gr.word_eval(w, bindings, 3)) for i, w in enumerate(words)]
    return gr.closure(gens, 3)


def table2_instance(line: int) -> ExampleInstance:
    row = load()["table2"][line - 1]
    h = _hyperbolic_data()
    expected = {
        "params": wrapped(h["params"]),
        "g0_order": wrapped(row["h0_order"]),
        "g0b_order": wrapped(row["h0b_order"]),
    }
    return ExampleInstance(f"table2-{line}", 3, 4, table2_subgroup(line), hyperbolic_block(), expected,
                           extra={"words": wrapped(row["words"]).value})


# --- Hall spreads and the (D8 o Q8).F10 design --------------------------------------

@lru_cache(maxsize=None)
def hall_data() -> sp.HallData:
    return sp.hall_spreads()


def hall_group() -> gr.GroupClosure:
    """Z8 o SL_2(5): the SL_2(5) copy together with the GF(9)* scalars it commutes with."""
    X = sp.sl2_5()
    return gr.closure(list(X.generators) + [("z", sp.gf9_scalars())], 3)


def ex_hall():
    H = hall_data()
    data = load()["hall"]
    B = tuple(H.spreads[0].components[0].members().tolist())
    expected = {k: wrapped(data[k]) for k in ("params", "g0_order")}
    inst = ExampleInstance("hall", 3, 4, hall_group(), B, expected,
                           extra={"spreads": H.spreads, "desarguesian": H.desarguesian,
                                  "subspace_orbit_lengths": H.decomposition.lengths,
                                  "pair_spreads": H.pair_spreads})
    inst.expected["subspace_orbit_lengths"] = wrapped(data["subspace_orbit_lengths"])
    inst.expected["spread_pairs"] = wrapped(data["spread_pairs"])
    return H.spreads, inst


@lru_cache(maxsize=None)
def hall_spread_stabilizer() -> gr.GroupClosure:
    return sp.spread_stabilizer(hall_data().spreads[0])


@lru_cache(maxsize=None)
def d8q8_group(order: int = 320) -> gr.GroupClosure:
    """First <a, b> of the given order, transitive on nonzero vectors, inside the Hall spread stabilizer.

    a is the first element of order 5 in closure order; b runs over the stabilizer.
    """
    St = hall_spread_stabilizer()
    a = next(g for g in St.elements if la.matrix_order(g, 3) == 5)
    for b in St.elements:
        try:
            K = gr.closure([("a", a), ("b", b)], 3, cap=order)
        except CapExceeded:
            continue
        if K.order == order and gr.is_transitive_on_nonzero(K):
            return K
    raise SubgroupSearchFailed(f"no transitive subgroup of order {order}")


def ex_d8q8() -> ExampleInstance:
    data = load()["d8q8"]
    B = tuple(la.span(wrapped(data["block"]).value, 3, 4).members().tolist())
    expected = {k: wrapped(data[k]) for k in ("params", "g0_order", "g0b_order")}
    return ExampleInstance("d8q8", 3, 4, d8q8_group(), B, expected,
                           extra={"stabilizer_order": hall_spread_stabilizer().order})


# --- semilinear 1-dimensional example -------------------------------------------------

def gamma_l1_field() -> FieldSpec:
    f = wrapped(load()["gamma_l1"]["field"]).value
    return field_create(f["p"], f["d"], f["poly"])


@lru_cache(maxsize=None)
def gamma_l1_group() -> gr.GroupClosure:
    data = load()["gamma_l1"]
    F = gamma_l1_field()
    alpha = la.mul_matrix(F.omega ** wrapped(data["mult"]).value)
    beta = la.frobenius_matrix(F, wrapped(data["frob"]).value)
    return gr.closure([("a", alpha), ("b", beta)], 3)


def ex_gamma_l1() -> ExampleInstance:
    data = load()["gamma_l1"]
    F = gamma_l1_field()
    B = _ids([omega_power(x, F).coeffs for x in wrapped(data["base_block"]).value], 3)
    expected = {k: wrapped(data[k]) for k in ("params", "orbit_lengths", "g0_order")}
    return ExampleInstance("gamma-l1", 3, 4, gamma_l1_group(), B, expected, field=F, n=1)


def frobenius_image(B, F: FieldSpec, power: int = 1) -> tuple[int, ...]:
    P = la.point_permutation(la.frobenius_matrix(F, power), F.p)
    return tuple(sorted(P[list(B)].tolist()))
