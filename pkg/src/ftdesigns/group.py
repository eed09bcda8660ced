"""Explicit finite matrix groups over GF(p).

Groups are stored as full element lists (desk scale only) built by a
breadth-first product closure.  Every orbit routine also works from a bare
list of generators, via reachability, so large groups never need closing.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

import numpy as np

from . import linalg as la
from .errors import CapExceeded, DimensionMismatch, ParseError, SingularMatrix, UnboundLabel
from .gf import FieldSpec, field_create

DEFAULT_CLOSURE_CAP = 10**6


def mkey(A: np.ndarray) -> bytes:
    return np.ascontiguousarray(A, dtype=np.uint8).tobytes()


@dataclass(eq=False)
class GroupClosure:
    p: int
    dim: int
    generators: list[tuple[str, np.ndarray]]
    elements: list[np.ndarray] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def keys(self) -> dict[bytes, int]:
        return {mkey(g): i for i, g in enumerate(self.elements)}

    def __contains__(self, A) -> bool:
        return mkey(np.asarray(A) % self.p) in self.keys

    def __len__(self):
        return len(self.elements)

    @property
    def gen_matrices(self) -> list[np.ndarray]:
        return [g for _, g in self.generators]

    @cached_property
    def perms(self) -> np.ndarray:
        """(order, p^dim) array: row i is the point permutation of element i."""
        pts = la.all_points(self.p, self.dim)
        stack = np.stack(self.elements)
        return la.point_ids(np.einsum("vd,gde->gve", pts, stack), self.p)

    def to_json(self) -> dict:
        return {
            "field": {"p": self.p, "d": 1, "poly": [0, 1]},
            "dim": self.dim,
            "generators": [{"label": lab, "matrix": g.tolist()} for lab, g in self.generators],
        }


@dataclass
class OrbitDecomposition:
    orbits: list[tuple[object, list]]

    @property
    def lengths(self) -> list[int]:
        return sorted(len(members) for _, members in self.orbits)

    def orbit_of(self, x):
        for rep, members in self.orbits:
            if x in members:
                return members
        raise KeyError(x)


def _labelled(generators) -> list[tuple[str, np.ndarray]]:
    out = []
    for i, g in enumerate(generators):
        if isinstance(g, tuple):
            out.append((g[0], np.asarray(g[1], dtype=np.int64)))
        else:
            out.append((f"g{i}", np.asarray(g, dtype=np.int64)))
    return out


def closure(generators, p: int, cap: int = DEFAULT_CLOSURE_CAP) -> GroupClosure:
    """Breadth-first product closure of matrices over GF(p).

    ``generators`` are matrices or ``(label, matrix)`` pairs.  Elements are
    kept in BFS insertion order, applying generators sorted by label.
    """
    gens = _labelled(generators)
    if not gens:
        raise ValueError("need at least one generator")
    dim = gens[0][1].shape[0]
    for lab, g in gens:
        if g.shape != (dim, dim):
            raise DimensionMismatch(f"generator {lab} has shape {g.shape}")
        if la.mat_det(g, p) == 0:
            raise SingularMatrix(f"generator {lab} is singular")
    gens = [(lab, g % p) for lab, g in gens]
    ordered = [g for _, g in sorted(gens, key=lambda lg: lg[0])]
    I = la.identity(dim)
    elements = [I]
    seen = {mkey(I)}
    i = 0
    while i < len(elements):
        g = elements[i]
        i += 1
        for s in ordered:
            h = (g @ s) % p
            k = mkey(h)
            if k not in seen:
                if len(elements) >= cap:
                    raise CapExceeded(f"group order exceeds cap {cap}")
                seen.add(k)
                elements.append(h)
    G = GroupClosure(p, dim, gens, elements)
    G.__dict__["keys"] = {k: n for n, k in enumerate(mkey(e) for e in elements)}
    return G


def subgroup(G: GroupClosure, generators) -> GroupClosure:
    return closure(generators, G.p, cap=G.order)


# --- actions ------------------------------------------------------------------

def _gen_perms(G, p=None, dim=None):
    if isinstance(G, GroupClosure):
        return G.p, G.dim, [la.point_permutation(g, G.p) for g in G.gen_matrices]
    gens = [g for _, g in _labelled(G)]
    return p, gens[0].shape[0], [la.point_permutation(g, p) for g in gens]


def _bfs(seed, step_fns):
    seen = {seed}
    queue = deque([seed])
    while queue:
        x = queue.popleft()
        for f in step_fns:
            y = f(x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def orbit(G, seed, action: str = "vector", p: int | None = None) -> list:
    """Orbit of ``seed`` under the group generated by G's generators.

    action "vector": seed is a point id or coordinate vector, returns point ids.
    action "set": seed is an iterable of point ids, returns sorted id tuples.
    action "subspace": seed is a Subspace, returns Subspaces sorted by key.
    """
    if action == "subspace":
        gens = G.gen_matrices if isinstance(G, GroupClosure) else [g for _, g in _labelled(G)]
        members = _bfs(seed, [lambda S, A=A: S.image(A) for A in gens])
        return sorted(members, key=lambda S: S.basis)
    p, dim, perms = _gen_perms(G, p)
    if action == "vector":
        if not isinstance(seed, (int, np.integer)):
            seed = la.point_id(seed, p)
        return sorted(_bfs(int(seed), [lambda x, P=P: int(P[x]) for P in perms]))
    if action == "set":
        seed = tuple(sorted(int(x) for x in seed))
        return sorted(_bfs(seed, [lambda S, P=P: tuple(sorted(P[list(S)].tolist())) for P in perms]))
    raise ValueError(f"unknown action {action!r}")


def block_orbit(perms: list[np.ndarray], seed) -> list[tuple[int, ...]]:
    """Orbit of a point set under generator permutations (vectorized step)."""
    start = tuple(sorted(int(x) for x in seed))
    seen = {start}
    frontier = [start]
    while frontier:
        arr = np.array(frontier, dtype=np.int64)
        new = []
        for P in perms:
            imgs = np.sort(P[arr], axis=1)
            for row in map(tuple, imgs.tolist()):
                if row not in seen:
                    seen.add(row)
                    new.append(row)
        frontier = new
    return sorted(seen)


def orbits_on_nonzero(G, p: int | None = None) -> OrbitDecomposition:
    p, dim, perms = _gen_perms(G, p)
    v = p**dim
    label = np.full(v, -1, dtype=np.int64)
    orbits = []
    for x in range(1, v):
        if label[x] >= 0:
            continue
        members = _bfs(x, [lambda y, P=P: int(P[y]) for P in perms])
        for y in members:
            label[y] = len(orbits)
        orbits.append((x, sorted(members)))
    return OrbitDecomposition(orbits)


def orbits_on_subspaces(G, t: int, p: int | None = None, cap: int = la.DEFAULT_SUBSPACE_CAP) -> OrbitDecomposition:
    if isinstance(G, GroupClosure):
        p, dim, gens = G.p, G.dim, G.gen_matrices
    else:
        gens = [g for _, g in _labelled(G)]
        dim = gens[0].shape[0]
    subs = la.enumerate_subspaces(p, dim, t, cap=cap)
    # act through point permutations: a subspace is determined by its member set
    perms = [la.point_permutation(g, p) for g in gens]
    by_members = {tuple(S.members().tolist()): i for i, S in enumerate(subs)}
    images = []
    for P in perms:
        img = np.empty(len(subs), dtype=np.int64)
        for i, S in enumerate(subs):
            img[i] = by_members[tuple(sorted(P[S.members()].tolist()))]
        images.append(img)
    seen = np.zeros(len(subs), dtype=bool)
    orbits = []
    for i in range(len(subs)):
        if seen[i]:
            continue
        members = _bfs(i, [lambda j, m=m: int(m[j]) for m in images])
        for j in members:
            seen[j] = True
        orbits.append((subs[i], [subs[j] for j in sorted(members)]))
    return OrbitDecomposition(orbits)


def setwise_stabilizer(G: GroupClosure, S) -> GroupClosure:
    """Subgroup of G mapping the point set (or Subspace) S onto itself."""
    if isinstance(S, la.Subspace):
        ids = S.members()
    else:
        ids = np.array(sorted({int(x) for x in S}), dtype=np.int64)
    imgs = np.sort(G.perms[:, ids], axis=1)
    mask = np.all(imgs == ids[None, :], axis=1)
    elems = [G.elements[i] for i in np.nonzero(mask)[0]]
    return _from_elements(G.p, G.dim, elems)


def _from_elements(p: int, dim: int, elems: list[np.ndarray]) -> GroupClosure:
    """Wrap a known subgroup element list, choosing a small generating set greedily."""
    gens: list[tuple[str, np.ndarray]] = []
    H = {mkey(la.identity(dim))}
    for g in elems:
        if mkey(g) not in H:
            gens.append((f"s{len(gens)}", g))
            H = set(closure(gens, p).keys)
    if not gens:
        gens = [("s0", la.identity(dim))]
    G = closure(gens, p, cap=max(len(elems), 1))
    return G


def element_order(A: np.ndarray, p: int) -> int:
    return la.matrix_order(A, p)


def is_transitive_on_nonzero(G, p: int | None = None) -> bool:
    return len(orbits_on_nonzero(G, p).orbits) == 1


def orbit_gcd(decomp: OrbitDecomposition, extra: int = 0) -> int:
    g = extra
    for n in decomp.lengths:
        g = gcd(g, n)
    return g


# --- words --------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<lab>[^\W\d]\w*)|(?P<num>-?\d+)|(?P<sym>[()^]))")


def _tokenize(word: str, bindings) -> list[tuple[str, str]]:
    toks = []
    pos = 0
    word = word.rstrip()
    while pos < len(word):
        m = _TOKEN.match(word, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {word!r}")
        pos = m.end()
        if m.group("lab"):
            lab = m.group("lab")
            # "ba" is accepted as "b a" when only single-letter labels are bound
            if lab not in bindings and all(c in bindings for c in lab):
                toks.extend(("lab", c) for c in lab)
            else:
                toks.append(("lab", lab))
        elif m.group("num"):
            toks.append(("num", m.group("num")))
        else:
            toks.append(("sym", m.group("sym")))
    return toks


def word_eval(word: str, bindings: dict, p: int | None = None) -> np.ndarray:
    """Evaluate a generator word left to right.

    Grammar: SEQ := TERM+ ; TERM := ATOM ['^' ['-'] DIGITS] ; ATOM := label | '(' SEQ ')'.
    """
    bindings = {k: np.asarray(v, dtype=np.int64) for k, v in bindings.items()}
    if not bindings:
        raise UnboundLabel("no bindings")
    if p is None:
        p = int(max(int(v.max()) for v in bindings.values())) + 1
    dim = next(iter(bindings.values())).shape[0]
    toks = _tokenize(word, bindings)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def seq(closing: bool):
        acc = la.identity(dim)
        nterms = 0
        while True:
            kind, val = peek()
            if kind is None:
                if closing:
                    raise ParseError(f"missing ')' in {word!r}")
                break
            if kind == "sym" and val == ")":
                if not closing:
                    raise ParseError(f"unbalanced ')' in {word!r}")
                break
            acc = (acc @ term()) % p
            nterms += 1
        if nterms == 0:
            raise ParseError(f"empty sequence in {word!r}")
        return acc

    def term():
        nonlocal pos
        kind, val = peek()
        if kind == "lab":
            pos += 1
            if val not in bindings:
                raise UnboundLabel(val)
            base = bindings[val] % p
        elif kind == "sym" and val == "(":
            pos += 1
            base = seq(closing=True)
            pos += 1
        else:
            raise ParseError(f"unexpected token {val!r} in {word!r}")
        kind, val = peek()
        if kind == "sym" and val == "^":
            pos += 1
            kind, val = peek()
            if kind != "num":
                raise ParseError(f"exponent expected in {word!r}")
            pos += 1
            return la.mat_pow(base, int(val), p)
        return base

    return seq(closing=False)


# --- JSON -----------------------------------------------------------------------

def group_from_json(obj, cap: int = DEFAULT_CLOSURE_CAP, close: bool = True):
    """Load the group JSON schema; entries over GF(p^e) (e > 1) are element indices."""
    if isinstance(obj, (str, bytes)):
        obj = json.loads(obj)
    try:
        fld = obj["field"]
        F: FieldSpec = field_create(int(fld["p"]), int(fld.get("d", 1)), fld.get("poly"))
        dim = int(obj["dim"])
        gens = []
        for g in obj["generators"]:
            M = g["matrix"]
            if len(M) != dim or any(len(row) != dim for row in M):
                raise DimensionMismatch(f"generator {g.get('label')} is not {dim}x{dim}")
            if F.d == 1:
                A = la.as_matrix(M, F.p)
            else:
                A = la.field_blowup([[F.from_index(int(x)) for x in row] for row in M], F)
            gens.append((str(g["label"]), A))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, (DimensionMismatch,)):
            raise
        raise ParseError(f"bad group JSON: {exc}") from exc
    if not gens:
        raise ParseError("group JSON has no generators")
    if close:
        return closure(gens, F.p, cap=cap)
    return F.p, gens
