"""Spreads of V_4(3) and friends: Desarguesian spreads, the SL_2(5) orbit
structure on 2-subspaces, and the two Hall spreads it preserves."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .. import group as gr
from .. import linalg as la
from ..errors import DimensionMismatch, SpreadAssemblyFailed, SubgroupSearchFailed
from ..gf import field_create


@dataclass(frozen=True)
class SpreadSet:
    p: int
    d: int
    components: tuple[la.Subspace, ...]

    @property
    def t(self) -> int:
        return self.components[0].dim

    def keys(self) -> frozenset:
        return frozenset(S.basis for S in self.components)

    def __len__(self):
        return len(self.components)


def is_spread(components, p: int | None = None, d: int | None = None) -> bool:
    """Equal dimension t, and the nonzero vectors are covered exactly once."""
    components = list(components)
    if not components:
        return False
    p = p or components[0].p
    d = d or components[0].d
    t = components[0].dim
    if t == 0 or d % t or any(S.dim != t or S.p != p or S.d != d for S in components):
        return False
    if len(components) != (p**d - 1) // (p**t - 1):
        return False
    hits = np.bincount(np.concatenate([S.members() for S in components]), minlength=p**d)
    return bool(np.all(hits[1:] == 1))


def desarguesian_spread(p: int, e: int, m: int) -> SpreadSet:
    """The GF(p^e)-points of V_m(p^e), as e-dimensional subspaces of V_{em}(p)."""
    if e < 1 or m < 1:
        raise DimensionMismatch(f"need e, m >= 1, got {e}, {m}")
    F = field_create(p, e)
    basis = [F.gen**i for i in range(e)]
    comps = []
    for vec in itertools.product(range(F.order), repeat=m):
        if not any(vec):
            continue
        lead = next(x for x in vec if x)
        if lead != F.one.index:
            continue
        elems = [F.from_index(x) for x in vec]
        rows = [la.vector_of([c * a for a in elems], F) for c in basis]
        comps.append(la.span(rows, p, e * m))
    return SpreadSet(p, e * m, tuple(comps))


def component_permutation(spread: SpreadSet, A) -> list[int] | None:
    """Index permutation induced by A on the components, or None if A moves one off the spread."""
    index = {S.basis: i for i, S in enumerate(spread.components)}
    out = []
    for S in spread.components:
        j = index.get(S.image(A).basis)
        if j is None:
            return None
        out.append(j)
    return out


def kernel_contains(spread: SpreadSet, A) -> bool:
    perm = component_permutation(spread, A)
    return perm is not None and perm == list(range(len(spread)))


# --- SL_2(9) and its SL_2(5) ------------------------------------------------------

@lru_cache(maxsize=None)
def sl2_9() -> gr.GroupClosure:
    """SL_2(9) from elementary transvections, blown up to GL_4(3)."""
    F = field_create(3, 2)
    gens = []
    for c in (F.one, F.gen):
        gens.append((f"u{c.index}", la.field_blowup([[F.one, c], [F.zero, F.one]], F)))
        gens.append((f"l{c.index}", la.field_blowup([[F.one, F.zero], [c, F.one]], F)))
    return gr.closure(gens, 3)


@lru_cache(maxsize=None)
def sl2_5() -> gr.GroupClosure:
    """First pair (order 4, order 10) of SL_2(9), in closure order, generating a group of order 120."""
    S = sl2_9()
    orders = [la.matrix_order(g, 3) for g in S.elements]
    fours = [g for g, o in zip(S.elements, orders) if o == 4]
    tens = [g for g, o in zip(S.elements, orders) if o == 10]
    for a in fours:
        for b in tens:
            try:
                H = gr.closure([("a", a), ("b", b)], 3, cap=120)
            except Exception:
                continue
            if H.order == 120:
                return H
    raise SubgroupSearchFailed("no SL_2(5) inside SL_2(9)")


def gf9_scalars() -> np.ndarray:
    """Multiplication by a primitive element of GF(9) on V_2(9) = V_4(3)."""
    F = field_create(3, 2)
    return la.field_blowup([[F.omega, F.zero], [F.zero, F.omega]], F)


@dataclass
class HallData:
    group: gr.GroupClosure
    decomposition: gr.OrbitDecomposition
    desarguesian: SpreadSet
    five_orbits: list[tuple[la.Subspace, ...]]
    pair_spreads: dict[tuple[int, int], bool]
    spreads: list[SpreadSet]


def hall_spreads(X: gr.GroupClosure | None = None) -> HallData:
    X = X or sl2_5()
    decomp = gr.orbits_on_subspaces(X, 2)
    tens = [tuple(m) for _, m in decomp.orbits if len(m) == 10]
    fives = [tuple(m) for _, m in decomp.orbits if len(m) == 5]
    desarg = [SpreadSet(3, 4, o) for o in tens if is_spread(o)]
    pairs = {}
    spreads = []
    for i, j in itertools.combinations(range(len(fives)), 2):
        comps = fives[i] + fives[j]
        ok = is_spread(comps)
        pairs[(i, j)] = ok
        if ok:
            spreads.append(SpreadSet(3, 4, tuple(sorted(comps, key=lambda S: S.basis))))
    if not spreads:
        raise SpreadAssemblyFailed("no union of two length-5 orbits is a spread")
    if len(desarg) != 1:
        raise SpreadAssemblyFailed(f"expected one Desarguesian 10-orbit, found {len(desarg)}")
    return HallData(X, decomp, desarg[0], fives, pairs, spreads)


def spread_stabilizer(spread: SpreadSet) -> gr.GroupClosure:
    """All g in GL_d(p) permuting the components (d = 2t, two components give a basis)."""
    p, d, t = spread.p, spread.d, spread.t
    if d != 2 * t:
        raise DimensionMismatch("backtrack assumes two components span V")
    comps = spread.components
    A, B = comps[0].basis_array(), comps[1].basis_array()
    frame = np.vstack([A, B])
    frame_inv = la.mat_inv(frame, p)
    # every ordered basis of every component
    bases = []
    for S in comps:
        M = S.members()
        pts = la.all_points(p, d)[M]
        for rows in itertools.product(range(len(M)), repeat=t):
            R = pts[list(rows)]
            if la.rank(R, p) == t:
                bases.append((S.basis, R))
    label = np.full(p**d, -1, dtype=np.int64)
    for i, S in enumerate(comps):
        label[S.members()[1:]] = i
    pairs = [(Ra, Rb) for (ka, Ra), (kb, Rb) in itertools.product(bases, repeat=2) if ka != kb]
    G = np.stack([np.vstack([Ra, Rb]) for Ra, Rb in pairs])
    G = np.einsum("ij,gjk->gik", frame_inv, G) % p
    # a candidate survives if every component lands inside a single component
    keep = np.ones(len(G), dtype=bool)
    pts = la.all_points(p, d)
    for S in comps[2:]:
        imgs = la.point_ids(np.einsum("vd,gde->gve", pts[S.members()[1:]], G[keep]) % p, p)
        lab = label[imgs]
        ok = np.all(lab == lab[:, :1], axis=1)
        idx = np.nonzero(keep)[0]
        keep[idx[~ok]] = False
    return gr._from_elements(p, d, list(G[keep]))
