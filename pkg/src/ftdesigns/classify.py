"""Arithmetic filters for flag-transitive 2-(v,k,2) designs and bounded base-block searches."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import design as ds
from . import group as gr
from . import linalg as la
from .design import cici_index  # noqa: F401  (re-exported)
from .errors import CapExceeded, OddDegree

DEFAULT_CANDIDATE_CAP = 10**5
DEFAULT_SPACE_CAP = 10**7


@dataclass(frozen=True)
class ParamCandidate:
    p: int
    d: int
    k: int
    r: int
    b: int
    notes: tuple[str, ...] = field(default=(), compare=False)

    @property
    def v(self) -> int:
        return self.p**self.d

    def kr(self) -> tuple[int, int]:
        return (self.k, self.r)


def param_feasible(p: int, d: int, require_even_r: bool = True, lam: int = 2,
                   cap: int = DEFAULT_SPACE_CAP) -> list[ParamCandidate]:
    """All (k, r) with r(k-1) = lam(v-1), b = vr/k integral, r^2 > 2v, 2 < k < v and b >= v."""
    v = p**d
    if v > cap:
        raise CapExceeded(f"v = {v} exceeds cap {cap}")
    out = []
    for k in range(3, v):
        if (lam * (v - 1)) % (k - 1):
            continue
        r = lam * (v - 1) // (k - 1)
        if (v * r) % k:
            continue
        b = v * r // k
        # r > sqrt(2) p^{d/2}, kept in integers
        if r * r <= 2 * v or b < v:
            continue
        if require_even_r and r % 2:
            continue
        notes = ("even_r" if r % 2 == 0 else "odd_r", "r_lt_k" if r < k else "r_ge_k")
        out.append(ParamCandidate(p, d, k, r, b, notes))
    return out


def fato_candidates(p: int, d: int) -> list[ParamCandidate]:
    """Feasible even-r parameters with r | 4(p^{d/2} - 1)."""
    if d % 2:
        raise OddDegree(f"d = {d} is odd")
    bound = 4 * (p ** (d // 2) - 1)
    return [c for c in param_feasible(p, d, True) if bound % c.r == 0]


def block_shape_cases(p: int, d: int, k: int, r: int) -> set[str]:
    cases = set()
    if r % k == 0:
        cases.add("k_divides_r")
    t = 0
    while p**t < k:
        t += 1
    if p**t == k and t > 1:
        cases.add("subspace")
    if p % 2 and k % 2 == 0:
        half = k // 2
        s = 0
        while p**s < half:
            s += 1
        if p**s == half and s >= 1:
            cases.add("two_coset")
    return cases


def orbit_divisibility(G0, r: int, p: int | None = None) -> bool:
    """r/2 divides gcd of the G0-orbit lengths on nonzero vectors and p^d - 1."""
    decomp = gr.orbits_on_nonzero(G0, p)
    if isinstance(G0, gr.GroupClosure):
        p, dim = G0.p, G0.dim
    else:
        dim = gr._labelled(G0)[0][1].shape[0]
    g = math.gcd(p**dim - 1, *decomp.lengths)
    return (2 * g) % r == 0


# --- searches ---------------------------------------------------------------------

@dataclass(frozen=True)
class SearchHit:
    block: tuple[int, ...]         # lexicographically minimal member of B^{G0}
    params: ds.DesignParams

    def csv_row(self) -> str:
        P = self.params
        return ",".join(map(str, (" ".join(map(str, self.block)), P.v, P.k, P.r, P.b, P.lam)))


def _space(G0):
    if isinstance(G0, gr.GroupClosure):
        return G0.p, G0.dim, [la.point_permutation(g, G0.p) for g in G0.gen_matrices]
    raise TypeError("search needs a GroupClosure")


def _run(G0, candidates, lam: int, shuffle_seed: int | None) -> list[SearchHit]:
    p, dim, perms = _space(G0)
    v = p**dim
    decomp = gr.orbits_on_nonzero(G0)
    candidates = list(candidates)
    if shuffle_seed is not None:
        random.Random(shuffle_seed).shuffle(candidates)
    seen: set[tuple[int, ...]] = set()
    hits = []
    for cand in candidates:
        if cand in seen:
            continue
        orb = gr.block_orbit(perms, cand)
        seen.update(orb)
        if not ds.orbit_closed_under_translation(orb, p, dim):
            continue
        lams = set(ds.orbit_lambdas(len(orb), cand, decomp).values())
        if lams != {lam}:
            continue
        k = len(cand)
        r = len(orb)
        hits.append(SearchHit(orb[0], ds.DesignParams(v, v * r // k, r, k, lam)))
    return sorted(hits, key=lambda h: h.block)


def search_small_blocks(G0, k: int, cap: int = DEFAULT_CANDIDATE_CAP, lam: int = 2,
                        shuffle_seed: int | None = None) -> list[SearchHit]:
    """Every k-subset containing 0, one representative per G0-orbit."""
    p, dim, _ = _space(G0)
    v = p**dim
    n = comb(v - 1, k - 1)
    if n > cap:
        raise CapExceeded(f"C({v - 1},{k - 1}) = {n} candidates exceed cap {cap}")
    cands = ((0,) + c for c in itertools.combinations(range(1, v), k - 1))
    return _run(G0, cands, lam, shuffle_seed)


def search_subspace_blocks(G0, t: int, cap: int = DEFAULT_CANDIDATE_CAP, lam: int = 2,
                           shuffle_seed: int | None = None) -> list[SearchHit]:
    p, dim, _ = _space(G0)
    n = la.gaussian_binomial(dim, t, p)
    if n > cap:
        raise CapExceeded(f"{n} subspaces exceed cap {cap}")
    cands = [tuple(S.members().tolist()) for S in la.enumerate_subspaces(p, dim, t, cap=cap)]
    return _run(G0, cands, lam, shuffle_seed)


def search_two_coset_blocks(G0, t: int, cap: int = DEFAULT_CANDIDATE_CAP, lam: int = 2,
                            shuffle_seed: int | None = None) -> list[SearchHit]:
    """Blocks W u (W + y) with W a t-subspace and y outside W."""
    p, dim, _ = _space(G0)
    v = p**dim
    n = la.gaussian_binomial(dim, t, p) * (v // p**t - 1)
    if n > cap:
        raise CapExceeded(f"{n} two-coset candidates exceed cap {cap}")
    add = la.addition_table(p, dim)
    cands = []
    for S in la.enumerate_subspaces(p, dim, t, cap=cap):
        W = S.members()
        covered = np.zeros(v, dtype=bool)
        covered[W] = True
        for y in range(v):
            if covered[y]:
                continue
            coset = add[W, y]
            covered[coset] = True
            cands.append(tuple(sorted(W.tolist() + coset.tolist())))
    return _run(G0, cands, lam, shuffle_seed)
