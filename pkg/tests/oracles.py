"""Brute-force reference implementations.

Nothing here imports the order kernels or the library's constructions; each
oracle works from raw ids and pairs so it can disagree with the library.
"""

from __future__ import annotations

import itertools


def closure(ids, pairs):
    """Reflexive-transitive closure by repeated search from every vertex."""
    succ = {x: set() for x in ids}
    for a, b in pairs:
        succ[a].add(b)
    out = set()
    for x in ids:
        seen = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for z in succ[y]:
                if z not in seen:
                    seen.add(z)
                    stack.append(z)
        out |= {(x, y) for y in seen}
    return out


def strict(leq):
    return {(a, b) for a, b in leq if a != b and (b, a) not in leq}


def covers(ids, leq):
    lt = strict(leq)
    return {(a, b) for a, b in lt if not any((a, c) in lt and (c, b) in lt for c in ids)}


def all_chains(ids, leq):
    """Every strictly increasing chain, as tuples."""
    lt = strict(leq)
    out = []

    def grow(chain):
        out.append(tuple(chain))
        for z in ids:
            if (chain[-1], z) in lt:
                grow(chain + [z])

    for x in ids:
        grow([x])
    return out


def length(ids, leq):
    """Edges on the longest chain; -1 when there are no strata."""
    return max((len(c) - 1 for c in all_chains(ids, leq)), default=-1)


def minimal(ids, leq):
    lt = strict(leq)
    return {x for x in ids if not any((y, x) in lt for y in ids)}


def up(ids, leq, x):
    return {y for y in ids if (x, y) in leq}


def weak_components(ids, edges):
    parent = {x: x for x in ids}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    groups = {}
    for x in ids:
        groups.setdefault(find(x), set()).add(x)
    return list(groups.values())


def isomorphic(ids_a, leq_a, lab_a, ids_b, leq_b, lab_b):
    """Label- and order-preserving bijection by trying every permutation."""
    ids_a, ids_b = list(ids_a), list(ids_b)
    if len(ids_a) != len(ids_b):
        return False
    for perm in itertools.permutations(ids_b):
        m = dict(zip(ids_a, perm))
        if all(lab_a[x] == lab_b[m[x]] for x in ids_a) and all(
            ((x, y) in leq_a) == ((m[x], m[y]) in leq_b) for x in ids_a for y in ids_a
        ):
            return True
    return False


def pushout(w_ids, w_leq, y_ids, y_leq, x_ids, f, h):
    """Quotient of the tagged disjoint union under ``f(x) ~ h(x)``.

    Returns the class of every tagged stratum and the closed order on classes.
    """
    tagged = [("W", s) for s in w_ids] + [("Y", s) for s in y_ids]
    parent = {t: t for t in tagged}

    def find(t):
        while parent[t] != t:
            t = parent[t]
        return t

    for x in x_ids:
        a, b = find(("W", f[x])), find(("Y", h[x]))
        if a != b:
            parent[b] = a
    cls = {t: find(t) for t in tagged}
    pairs = {(cls["W", a], cls["W", b]) for a, b in w_leq}
    pairs |= {(cls["Y", a], cls["Y", b]) for a, b in y_leq}
    classes = sorted(set(cls.values()))
    return cls, closure(classes, pairs)


def monotone_maps(src_ids, src_leq, tgt_ids, tgt_leq):
    src_ids = list(src_ids)
    for values in itertools.product(list(tgt_ids), repeat=len(src_ids)):
        m = dict(zip(src_ids, values))
        if all((m[a], m[b]) in tgt_leq for a, b in src_leq):
            yield m


def mediator_counts(p_ids, p_leq, w_ids, w_leq, y_ids, y_leq, f, h, j, i, z_ids, z_leq):
    """Mediator count for every commuting cocone into ``Z``, by full enumeration."""
    counts = []
    for s in monotone_maps(w_ids, w_leq, z_ids, z_leq):
        for t in monotone_maps(y_ids, y_leq, z_ids, z_leq):
            if any(s[f[x]] != t[h[x]] for x in f):
                continue
            n = 0
            for phi in monotone_maps(p_ids, p_leq, z_ids, z_leq):
                if all(phi[j[a]] == s[a] for a in w_ids) and all(phi[i[b]] == t[b] for b in y_ids):
                    n += 1
            counts.append(n)
    return counts
