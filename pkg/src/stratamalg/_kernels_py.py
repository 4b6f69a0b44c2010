"""Pure-Python order kernels.

Every relation is a flat row-major ``n*n`` byte matrix: ``leq[i*n + j]`` is
nonzero iff ``i <= j``.  Maps are sequences of target indices.  The compiled
twin in ``_kernels.pyx`` exposes exactly these signatures.
"""

from __future__ import annotations

from typing import Optional, Sequence

OK, FAIL, EXHAUSTED = 0, 1, 2


def closure(n: int, rel) -> bytearray:
    """Reflexive-transitive closure (Warshall)."""
    m = bytearray(rel)
    for i in range(n):
        m[i * n + i] = 1
    for k in range(n):
        rk = k * n
        for i in range(n):
            ri = i * n
            if m[ri + k]:
                for j in range(n):
                    if m[rk + j]:
                        m[ri + j] = 1
    return m


def antisymmetry_violations(n: int, leq) -> list[tuple[int, int]]:
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            if leq[i * n + j] and leq[j * n + i]:
                out.append((i, j))
    return out


def _strict(leq, n, i, j):
    return i != j and leq[i * n + j] and not leq[j * n + i]


def cover_pairs(n: int, leq) -> list[tuple[int, int]]:
    """Pairs ``(lo, hi)`` with ``lo < hi`` and nothing strictly between."""
    out = []
    for lo in range(n):
        for hi in range(n):
            if not _strict(leq, n, lo, hi):
                continue
            for t in range(n):
                if _strict(leq, n, lo, t) and _strict(leq, n, t, hi):
                    break
            else:
                out.append((lo, hi))
    return out


def chain_heights(n: int, leq) -> list[int]:
    """Longest strict chain starting at each element and going up."""
    upsize = [sum(1 for j in range(n) if leq[i * n + j]) for i in range(n)]
    order = sorted(range(n), key=lambda i: upsize[i])
    height = [0] * n
    for i in order:
        best = 0
        for j in range(n):
            if _strict(leq, n, i, j) and height[j] + 1 > best:
                best = height[j] + 1
        height[i] = best
    return height


def order_violation(
    n_src: int, leq_src, n_tgt: int, leq_tgt, mapping: Sequence[int]
) -> Optional[tuple[int, int]]:
    """First ``(a, b)`` with ``a <= b`` whose images are not ``<=``."""
    for a in range(n_src):
        fa = mapping[a] * n_tgt
        for b in range(n_src):
            if leq_src[a * n_src + b] and not leq_tgt[fa + mapping[b]]:
                return (a, b)
    return None


def reflect_violation(
    n_src: int, leq_src, n_tgt: int, leq_tgt, mapping: Sequence[int]
) -> Optional[tuple[int, int]]:
    """First ``(a, b)`` whose images are ``<=`` while ``a <= b`` fails."""
    for a in range(n_src):
        fa = mapping[a] * n_tgt
        for b in range(n_src):
            if leq_tgt[fa + mapping[b]] and not leq_src[a * n_src + b]:
                return (a, b)
    return None


def _constraints(n, leq):
    # for each k: earlier elements a with (a<=k) / (k<=a)
    cons = []
    for k in range(n):
        below = [a for a in range(k) if leq[a * n + k]]
        above = [a for a in range(k) if leq[k * n + a]]
        cons.append((below, above))
    return cons


class _Budget:
    __slots__ = ("left",)

    def __init__(self, left):
        self.left = left

    def spend(self):
        self.left -= 1
        return self.left >= 0


def _homs(n, cons, nz, leqz, forced, budget, limit=None):
    """Order-preserving maps into Z extending the ``forced`` partial map."""
    cur = [0] * n
    found = []

    def rec(k):
        if limit is not None and len(found) >= limit:
            return True
        if not budget.spend():
            return False
        if k == n:
            found.append(tuple(cur))
            return True
        below, above = cons[k]
        cands = range(nz) if forced[k] < 0 else (forced[k],)
        for v in cands:
            if all(leqz[cur[a] * nz + v] for a in below) and all(
                leqz[v * nz + cur[a]] for a in above
            ):
                cur[k] = v
                if not rec(k + 1):
                    return False
        return True

    ok = rec(0)
    return found if ok else None


def universal_check(
    n_p: int,
    leq_p,
    n_w: int,
    leq_w,
    n_y: int,
    leq_y,
    f: Sequence[int],
    h: Sequence[int],
    j: Sequence[int],
    i: Sequence[int],
    n_z: int,
    leq_z,
    budget: int,
):
    """Check the pushout property of ``P`` against one target poset ``Z``.

    ``f: X->W`` and ``h: X->Y`` form the cospan, ``j: W->P`` and ``i: Y->P``
    the legs.  Every commuting cocone ``(s, t)`` into ``Z`` is enumerated and
    the order-preserving maps ``phi: P->Z`` with ``phi j = s`` and
    ``phi i = t`` are counted (stopping at two).

    Returns ``(status, cocones, witness)``; witness is ``(s, t, count)`` for
    the first cocone whose mediator count is not exactly one.
    """
    b = _Budget(budget)
    cons_w = _constraints(n_w, leq_w)
    cons_y = _constraints(n_y, leq_y)
    cons_p = _constraints(n_p, leq_p)
    s_maps = _homs(n_w, cons_w, n_z, leq_z, [-1] * n_w, b)
    if s_maps is None:
        return EXHAUSTED, 0, None
    cocones = 0
    for s in s_maps:
        forced_y = [-1] * n_y
        for x in range(len(f)):
            forced_y[h[x]] = s[f[x]]
        t_maps = _homs(n_y, cons_y, n_z, leq_z, forced_y, b)
        if t_maps is None:
            return EXHAUSTED, cocones, None
        for t in t_maps:
            cocones += 1
            forced_p = [-1] * n_p
            clash = False
            for w in range(n_w):
                forced_p[j[w]] = s[w]
            for y in range(n_y):
                p = i[y]
                if forced_p[p] >= 0 and forced_p[p] != t[y]:
                    clash = True
                    break
                forced_p[p] = t[y]
            if clash:
                return FAIL, cocones, (tuple(s), tuple(t), 0)
            meds = _homs(n_p, cons_p, n_z, leq_z, forced_p, b, limit=2)
            if meds is None:
                return EXHAUSTED, cocones, None
            if len(meds) != 1:
                return FAIL, cocones, (tuple(s), tuple(t), len(meds))
    return OK, cocones, None
