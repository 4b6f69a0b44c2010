# cython: language_level=3
"""Compiled order kernels; same contract as ``_kernels_py``."""

from libc.stdlib cimport malloc, free
from libc.string cimport memset

OK, FAIL, EXHAUSTED = 0, 1, 2


def closure(int n, const unsigned char[::1] rel):
    cdef bytearray out = bytearray(rel)
    cdef unsigned char[::1] m = out
    cdef int i, j, k, ri, rk
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
    return out


def antisymmetry_violations(int n, const unsigned char[::1] leq):
    cdef int i, j
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            if leq[i * n + j] and leq[j * n + i]:
                out.append((i, j))
    return out


cdef inline bint _strict(const unsigned char[::1] leq, int n, int i, int j):
    return i != j and leq[i * n + j] and not leq[j * n + i]


def cover_pairs(int n, const unsigned char[::1] leq):
    cdef int lo, hi, t
    cdef bint between
    out = []
    for lo in range(n):
        for hi in range(n):
            if not _strict(leq, n, lo, hi):
                continue
            between = False
            for t in range(n):
                if _strict(leq, n, lo, t) and _strict(leq, n, t, hi):
                    between = True
                    break
            if not between:
                out.append((lo, hi))
    return out


def chain_heights(int n, const unsigned char[::1] leq):
    cdef int i, j, best, c
    upsize = [0] * n
    for i in range(n):
        c = 0
        for j in range(n):
            if leq[i * n + j]:
                c += 1
        upsize[i] = c
    order = sorted(range(n), key=lambda x: upsize[x])
    cdef int* height = <int*> malloc(max(n, 1) * sizeof(int))
    try:
        for i in order:
            best = 0
            for j in range(n):
                if _strict(leq, n, i, j) and height[j] + 1 > best:
                    best = height[j] + 1
            height[i] = best
        return [height[i] for i in range(n)]
    finally:
        free(height)


def order_violation(int n_src, const unsigned char[::1] leq_src, int n_tgt,
                    const unsigned char[::1] leq_tgt, mapping):
    cdef int a, b, fa
    cdef list mp = list(mapping)
    for a in range(n_src):
        fa = <int> mp[a] * n_tgt
        for b in range(n_src):
            if leq_src[a * n_src + b] and not leq_tgt[fa + <int> mp[b]]:
                return (a, b)
    return None


def reflect_violation(int n_src, const unsigned char[::1] leq_src, int n_tgt,
                      const unsigned char[::1] leq_tgt, mapping):
    cdef int a, b, fa
    cdef list mp = list(mapping)
    for a in range(n_src):
        fa = <int> mp[a] * n_tgt
        for b in range(n_src):
            if leq_tgt[fa + <int> mp[b]] and not leq_src[a * n_src + b]:
                return (a, b)
    return None


cdef struct Cons:
    int n
    int* below_ptr
    int* below_idx
    int* above_ptr
    int* above_idx
    int* cur  # scratch for _homs
    int* nxt


cdef Cons _make_cons(int n, const unsigned char[::1] leq):
    cdef Cons c
    cdef int k, a, nb = 0, na = 0
    c.n = n
    c.below_ptr = <int*> malloc((n + 1) * sizeof(int))
    c.above_ptr = <int*> malloc((n + 1) * sizeof(int))
    c.below_idx = <int*> malloc(max(n * n, 1) * sizeof(int))
    c.above_idx = <int*> malloc(max(n * n, 1) * sizeof(int))
    c.cur = <int*> malloc(max(n, 1) * sizeof(int))
    c.nxt = <int*> malloc(max(n, 1) * sizeof(int))
    for k in range(n):
        c.below_ptr[k] = nb
        c.above_ptr[k] = na
        for a in range(k):
            if leq[a * n + k]:
                c.below_idx[nb] = a
                nb += 1
            if leq[k * n + a]:
                c.above_idx[na] = a
                na += 1
    c.below_ptr[n] = nb
    c.above_ptr[n] = na
    return c


cdef void _free_cons(Cons* c):
    free(c.below_ptr)
    free(c.below_idx)
    free(c.above_ptr)
    free(c.above_idx)
    free(c.cur)
    free(c.nxt)


cdef long long _homs(Cons* c, int nz, const unsigned char* leqz,
                     const int* forced, int* out, long long max_out,
                     long long* budget) nogil:
    """Enumerate order-preserving maps extending ``forced``.

    Writes up to ``max_out`` maps to ``out`` (when not NULL) and returns how
    many were found, or -1 once the budget runs out.
    """
    cdef int n = c.n
    cdef long long found = 0
    cdef int k, v, p, a
    cdef bint ok
    cdef int* cur = c.cur
    cdef int* nxt = c.nxt
    budget[0] -= 1
    if budget[0] < 0:
        return -1
    if n == 0:
        return 1
    k = 0
    nxt[0] = 0
    while k >= 0:
        v = nxt[k]
        while v < nz:
            if forced[k] >= 0 and v != forced[k]:
                v += 1
                continue
            ok = True
            for p in range(c.below_ptr[k], c.below_ptr[k + 1]):
                a = c.below_idx[p]
                if not leqz[cur[a] * nz + v]:
                    ok = False
                    break
            if ok:
                for p in range(c.above_ptr[k], c.above_ptr[k + 1]):
                    a = c.above_idx[p]
                    if not leqz[v * nz + cur[a]]:
                        ok = False
                        break
            if ok:
                break
            v += 1
        if v >= nz:
            k -= 1
            continue
        cur[k] = v
        nxt[k] = v + 1
        budget[0] -= 1
        if budget[0] < 0:
            found = -1
            break
        if k + 1 == n:
            if out != NULL:
                for p in range(n):
                    out[found * n + p] = cur[p]
            found += 1
            if found >= max_out:
                break
        else:
            k += 1
            nxt[k] = 0
    return found


cdef inline long long _count_forced(Cons* c, int nz, const unsigned char* leqz,
                                    const int* forced, long long* budget) nogil:
    """Extensions of a total ``forced`` map: 1 if it is order-preserving, else 0."""
    cdef int k, p
    budget[0] -= c.n + 1
    if budget[0] < 0:
        return -1
    for k in range(c.n):
        for p in range(c.below_ptr[k], c.below_ptr[k + 1]):
            if not leqz[forced[c.below_idx[p]] * nz + forced[k]]:
                return 0
        for p in range(c.above_ptr[k], c.above_ptr[k + 1]):
            if not leqz[forced[k] * nz + forced[c.above_idx[p]]]:
                return 0
    return 1


def universal_check(int n_p, const unsigned char[::1] leq_p,
                    int n_w, const unsigned char[::1] leq_w,
                    int n_y, const unsigned char[::1] leq_y,
                    f, h, j, i,
                    int n_z, const unsigned char[::1] leq_z,
                    long long budget):
    cdef Cons cw = _make_cons(n_w, leq_w)
    cdef Cons cy = _make_cons(n_y, leq_y)
    cdef Cons cp = _make_cons(n_p, leq_p)
    cdef int n_x = len(f)
    cdef long long cap_w = 1, cap_y = 1, ns, nt, si, ti, cocones = 0, med
    cdef int q, x, w, y, pp, status = OK
    cdef int* fa = <int*> malloc(max(n_x, 1) * sizeof(int))
    cdef int* ha = <int*> malloc(max(n_x, 1) * sizeof(int))
    cdef int* ja = <int*> malloc(max(n_w, 1) * sizeof(int))
    cdef int* ia = <int*> malloc(max(n_y, 1) * sizeof(int))
    cdef int* none_w = <int*> malloc(max(n_w, 1) * sizeof(int))
    cdef int* forced_y = <int*> malloc(max(n_y, 1) * sizeof(int))
    cdef int* forced_p = <int*> malloc(max(n_p, 1) * sizeof(int))
    cdef int* s_buf = NULL
    cdef int* t_buf = NULL
    cdef int* s
    cdef int* t
    cdef bint clash, total
    cdef const unsigned char* lz = &leq_z[0] if n_z > 0 else NULL
    witness = None
    for q in range(n_x):
        fa[q] = f[q]
        ha[q] = h[q]
    for q in range(n_w):
        ja[q] = j[q]
        none_w[q] = -1
    for q in range(n_y):
        ia[q] = i[q]
    for q in range(n_w):
        cap_w *= n_z
        if cap_w > budget + 1:
            break
    for q in range(n_y):
        cap_y *= n_z
        if cap_y > budget + 1:
            break
    cap_w = min(cap_w, budget + 1)
    cap_y = min(cap_y, budget + 1)
    try:
        s_buf = <int*> malloc(max(cap_w * n_w, 1) * sizeof(int))
        t_buf = <int*> malloc(max(cap_y * n_y, 1) * sizeof(int))
        ns = _homs(&cw, n_z, lz, none_w, s_buf, cap_w, &budget)
        if ns < 0:
            return EXHAUSTED, 0, None
        for si in range(ns):
            s = s_buf + si * n_w
            for q in range(n_y):
                forced_y[q] = -1
            for x in range(n_x):
                forced_y[ha[x]] = s[fa[x]]
            nt = _homs(&cy, n_z, lz, forced_y, t_buf, cap_y, &budget)
            if nt < 0:
                return EXHAUSTED, cocones, None
            for ti in range(nt):
                t = t_buf + ti * n_y
                cocones += 1
                for q in range(n_p):
                    forced_p[q] = -1
                for w in range(n_w):
                    forced_p[ja[w]] = s[w]
                clash = False
                for y in range(n_y):
                    pp = ia[y]
                    if forced_p[pp] >= 0 and forced_p[pp] != t[y]:
                        clash = True
                        break
                    forced_p[pp] = t[y]
                if clash:
                    return FAIL, cocones, (
                        tuple(s[q] for q in range(n_w)),
                        tuple(t[q] for q in range(n_y)),
                        0,
                    )
                total = True
                for q in range(n_p):
                    if forced_p[q] < 0:
                        total = False
                        break
                if total:
                    med = _count_forced(&cp, n_z, lz, forced_p, &budget)
                else:
                    med = _homs(&cp, n_z, lz, forced_p, NULL, 2, &budget)
                if med < 0:
                    return EXHAUSTED, cocones, None
                if med != 1:
                    return FAIL, cocones, (
                        tuple(s[q] for q in range(n_w)),
                        tuple(t[q] for q in range(n_y)),
                        int(med),
                    )
        return OK, cocones, None
    finally:
        free(fa); free(ha); free(ja); free(ia)
        free(none_w); free(forced_y); free(forced_p)
        free(s_buf); free(t_buf)
        _free_cons(&cw); _free_cons(&cy); _free_cons(&cp)
