"""Deliberately naive reference implementations, written without numpy or the
package under test, used to cross-check the optimized code paths."""

from __future__ import annotations

import itertools
from collections import Counter


# --- polynomials over GF(p), constant term first --------------------------------

def pmul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def pmod(a, m, p):
    a = list(a)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, y in enumerate(m):
            a[shift + i] = (a[shift + i] - c * y) % p
        a.pop()
    return a + [0] * (len(m) - 1 - len(a))


def gf_mul(a, b, poly, p):
    return tuple(pmod(pmul(list(a), list(b), p), list(poly), p))


def gf_pow(a, e, poly, p):
    d = len(poly) - 1
    out = tuple([1] + [0] * (d - 1))
    for _ in range(e):
        out = gf_mul(out, a, poly, p)
    return out


def mult_order(a, poly, p):
    d = len(poly) - 1
    one = tuple([1] + [0] * (d - 1))
    x, n = tuple(a), 1
    while x != one:
        x = gf_mul(x, a, poly, p)
        n += 1
    return n


def irreducible_by_search(poly, p):
    """No factor of degree 1..d//2 (trial division by every monic polynomial)."""
    d = len(poly) - 1
    for deg in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            f = list(low) + [1]
            if not any(pmod(poly, f, p)):
                return False
    return True


# --- matrices over GF(p) as tuples of tuples -------------------------------------

def mmul(A, B, p):
    n, m = len(A), len(B[0])
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(len(B))) % p for j in range(m))
                 for i in range(n))


def vmul(v, A, p):
    return tuple(sum(v[k] * A[k][j] for k in range(len(v))) % p for j in range(len(A[0])))


def brute_closure(gens, p):
    gens = [tuple(tuple(int(x) % p for x in row) for row in g) for g in gens]
    n = len(gens[0])
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                x = mmul(g, h, p)
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    return seen


def brute_rank(rows, p):
    M = [list(r) for r in rows]
    rank, col = 0, 0
    ncols = len(M[0]) if M else 0
    while rank < len(M) and col < ncols:
        piv = next((i for i in range(rank, len(M)) if M[i][col] % p), None)
        if piv is None:
            col += 1
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][col], p - 2, p)
        M[rank] = [x * inv % p for x in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][col]:
                c = M[i][col]
                M[i] = [(x - c * y) % p for x, y in zip(M[i], M[rank])]
        rank += 1
        col += 1
    return rank


def vectors(p, d):
    """All of V_d(p) in lexicographic order (first coordinate most significant)."""
    return list(itertools.product(range(p), repeat=d))


def count_subspaces(p, d, t):
    """Distinct t-dim subspaces, by collecting spans of independent t-tuples."""
    seen = set()
    V = vectors(p, d)[1:]
    for rows in itertools.combinations(V, t):
        if brute_rank(rows, p) != t:
            continue
        span = frozenset(
            tuple(sum(c * r[j] for c, r in zip(cs, rows)) % p for j in range(d))
            for cs in itertools.product(range(p), repeat=t))
        seen.add(span)
    return len(seen)


# --- designs -------------------------------------------------------------------

def design_params(blocks, v):
    """(v, k, r, b, lambda) by counting every pair; None if not a 2-design."""
    blocks = [frozenset(B) for B in blocks]
    ks = {len(B) for B in blocks}
    if len(ks) != 1:
        return None
    k = ks.pop()
    reps = Counter(x for B in blocks for x in B)
    if len(reps) != v or len(set(reps.values())) != 1:
        return None
    pairs = Counter(pr for B in blocks for pr in itertools.combinations(sorted(B), 2))
    if len(pairs) != v * (v - 1) // 2 or len(set(pairs.values())) != 1:
        return None
    return (v, k, next(iter(reps.values())), len(blocks), next(iter(pairs.values())))


def affine_design(p, d, group_elems, base):
    """Blocks B^g + w over all g in the group and all translations w, as sets of vectors."""
    V = vectors(p, d)
    base = [tuple(x) for x in base]
    images = {frozenset(vmul(x, g, p) for x in base) for g in group_elems}
    blocks = set()
    for C in images:
        for w in V:
            blocks.add(frozenset(tuple((a + b) % p for a, b in zip(x, w)) for x in C))
    return blocks


def flag_transitive(p, d, group_elems, blocks):
    """Brute force: the T:G0-orbit of one flag is the whole flag set."""
    V = vectors(p, d)
    blocks = list(blocks)
    k = len(next(iter(blocks)))
    flags = {(x, B) for B in blocks for x in B}
    B0 = next(iter(blocks))
    x0 = next(iter(B0))
    orbit = set()
    for g in group_elems:
        for w in V:
            def act(y):
                gy = vmul(y, g, p)
                return tuple((a + b) % p for a, b in zip(gy, w))
            orbit.add((act(x0), frozenset(act(y) for y in B0)))
    return orbit == flags and len(flags) == len(blocks) * k
