"""Seeded generators of skeletons, embeddings and cospans.

Random skeletons are random DAG cover relations over at most a dozen strata:
every stratum gets a level, relations only go from lower to higher levels,
and a level-``i`` stratum gets dimension at least ``i``.  All functions take
an explicit :class:`random.Random`; :func:`sub_rng` derives per-iteration
generators so results do not depend on scheduling.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Iterator, Optional

from .morphisms import Declarations, StrataMorphism
from .skeleton import Skeleton, StratumLabel, fresh_id, restrict


def sub_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"{seed}:{index}")


def random_skeleton(
    rng: random.Random,
    n_min: int = 1,
    n_max: int = 12,
    p_edge: float = 0.35,
    compact: Optional[bool] = None,
    levels: int = 4,
    prefix: str = "s",
) -> Skeleton:
    n = rng.randint(n_min, n_max)
    lvl = [rng.randrange(levels) for _ in range(n)]
    ids = [f"{prefix}{k}" for k in range(n)]
    strata = {}
    for k, sid in enumerate(ids):
        strata[sid] = StratumLabel(
            lvl[k] + rng.choice((0, 0, 1)),
            rng.random() < 0.5 if compact is None else compact,
            rng.random() < 0.8,
        )
    order = [
        (ids[a], ids[b])
        for a in range(n)
        for b in range(n)
        if lvl[a] < lvl[b] and rng.random() < p_edge
    ]
    return Skeleton(strata, order)


def _linear_extension(s: Skeleton) -> list[str]:
    return sorted(s.ids, key=lambda x: (len(s.down(x)), x))


def random_extension(
    rng: random.Random,
    x: Skeleton,
    n_new: int,
    closed: bool = False,
    prefix: str = "w",
    p_edge: float = 0.4,
    tries: int = 20,
) -> tuple[Skeleton, StrataMorphism]:
    """A skeleton containing ``x`` as a whole-strata, order-reflecting part.

    With ``closed`` the new strata never lie below an old one, so ``x`` is
    down-closed in the result.  Returns the extension and the inclusion.
    """
    taken = set(x.ids)
    new_ids = []
    for _ in range(n_new):
        nid = fresh_id(f"{prefix}{len(new_ids)}", taken)
        taken.add(nid)
        new_ids.append(nid)
    base = _linear_extension(x)
    for attempt in range(tries):
        seq = list(base)
        for nid in new_ids:
            pos = len(seq) if closed else rng.randint(0, len(seq))
            seq.insert(pos, nid)
        rank = {sid: k for k, sid in enumerate(seq)}
        p = p_edge if attempt < tries - 1 else 0.0
        order = list(x.relation | set(x.leq_pairs()))
        for nid in new_ids:
            for other in seq:
                if other == nid:
                    continue
                if rank[other] < rank[nid] and rng.random() < p:
                    order.append((other, nid))
                elif rank[other] > rank[nid] and rng.random() < p:
                    order.append((nid, other))
        strata = dict(x.labels)
        for nid in new_ids:
            floor = max(
                (x.labels[o].dim for o, t in order if t == nid and o in x.labels),
                default=0,
            )
            strata[nid] = StratumLabel(int(floor) + rng.randint(0, 2), rng.random() < 0.5)
        w = Skeleton(strata, order)
        if restrict(w, x.ids) == x:
            return w, StrataMorphism(x, w, {s: (s, True) for s in x.ids})
    raise AssertionError("unreachable: the edge-free attempt always reflects")


def random_strong_embedding(rng: random.Random, w: Skeleton) -> tuple[Skeleton, StrataMorphism]:
    """Random whole-strata sub-skeleton of ``w`` with its inclusion."""
    members = [s for s in w.ids if rng.random() < 0.5]
    x = restrict(w, members)
    return x, StrataMorphism(x, w, {s: (s, True) for s in x.ids})


def _rename(f: StrataMorphism, prefix: str) -> StrataMorphism:
    ren = {s: f"{prefix}{k}" for k, s in enumerate(f.target.ids)}
    tgt = f.target.relabel(ren)
    return StrataMorphism(
        f.source, tgt, {s: (ren[t], o) for s, (t, o) in f.entries.items()}, f.declarations
    )


def random_strong_cospan(
    rng: random.Random,
    closed: bool = False,
    x_max: int = 4,
    extra_max: int = 4,
) -> tuple[StrataMorphism, StrataMorphism]:
    """Strong embeddings ``f: X -> W`` and ``h: X -> Y`` with a common source.

    ``Y`` is renamed so identification is not by accident of shared ids.
    """
    x = random_skeleton(rng, 0, x_max, prefix="x")
    _, f = random_extension(rng, x, rng.randint(0, extra_max), closed, "w")
    _, h = random_extension(rng, x, rng.randint(0, extra_max), closed, "y")
    return f, _rename(h, "u")


def random_order_preserving_map(
    rng: random.Random,
    a: Skeleton,
    b: Skeleton,
    declarations: Declarations = Declarations(),
    prefer_injective: bool = False,
) -> Optional[StrataMorphism]:
    """Random dimension-compatible order-preserving strata map, if any."""
    order = sorted(a.ids, key=lambda x: (len(a.down(x)), x))
    assign: dict[str, str] = {}

    def rec(k):
        if k == len(order):
            return True
        x = order[k]
        cands = [y for y in b.ids if a.labels[x].dim <= b.labels[y].dim]
        rng.shuffle(cands)
        if prefer_injective:
            used = set(assign.values())
            cands.sort(key=lambda y: y in used)
        for y in cands:
            if all(
                (not a.leq(x, x2) or b.leq(y, y2)) and (not a.leq(x2, x) or b.leq(y2, y))
                for x2, y2 in assign.items()
            ):
                assign[x] = y
                if rec(k + 1):
                    return True
                del assign[x]
        return False

    if not rec(0):
        return None
    entries = {}
    for x, y in assign.items():
        same = a.labels[x].dim == b.labels[y].dim
        entries[x] = (y, same and rng.random() < 0.5)
    return StrataMorphism(a, b, entries, declarations)


def random_morphism(
    rng: random.Random, declarations: Declarations = Declarations()
) -> StrataMorphism:
    while True:
        a = random_skeleton(rng, 1, 6, prefix="a")
        b = random_skeleton(rng, 1, 8, prefix="b")
        f = random_order_preserving_map(
            rng, a, b, declarations, prefer_injective=rng.random() < 0.5
        )
        if f is not None:
            return f


# -- exhaustive enumeration ---------------------------------------------------


def _canonical(n: int, leq: tuple) -> tuple:
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(leq[perm[i] * n + perm[j]] for i in range(n) for j in range(n))
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def poset_classes(n: int) -> tuple[tuple, ...]:
    """Isomorphism classes of posets on ``n`` points as leq tuples."""
    if n == 0:
        return ((),)
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    seen = set()
    out = []
    for bits in range(1 << len(pairs)):
        rel = [0] * (n * n)
        for i in range(n):
            rel[i * n + i] = 1
        for k, (i, j) in enumerate(pairs):
            if bits >> k & 1:
                if (bits >> pairs.index((j, i))) & 1:
                    break
                rel[i * n + j] = 1
        else:
            if all(
                not (rel[i * n + j] and rel[j * n + k]) or rel[i * n + k]
                for i in range(n)
                for j in range(n)
                for k in range(n)
            ):
                key = _canonical(n, tuple(rel))
                if key not in seen:
                    seen.add(key)
                    out.append(key)
    return tuple(sorted(out))


def poset_skeleton(n: int, leq: tuple, prefix: str = "z") -> Skeleton:
    ids = [f"{prefix}{k}" for k in range(n)]
    return Skeleton(
        {sid: StratumLabel(0) for sid in ids},
        [(ids[i], ids[j]) for i in range(n) for j in range(n) if leq[i * n + j]],
    )


@lru_cache(maxsize=None)
def all_posets(max_n: int, prefix: str = "z") -> tuple[Skeleton, ...]:
    """One skeleton per isomorphism class of posets with at most ``max_n`` points."""
    return tuple(poset_skeleton(n, key, prefix) for n in range(max_n + 1) for key in poset_classes(n))


def _strong_embeddings(x: Skeleton, y: Skeleton) -> Iterator[dict[str, str]]:
    xs = list(x.ids)
    assign: dict[str, str] = {}

    def rec(k):
        if k == len(xs):
            yield dict(assign)
            return
        a = xs[k]
        used = set(assign.values())
        for b in y.ids:
            if b in used or x.labels[a].key() != y.labels[b].key():
                continue
            if all(
                x.leq(a, a2) == y.leq(b, b2) and x.leq(a2, a) == y.leq(b2, b)
                for a2, b2 in assign.items()
            ):
                assign[a] = b
                yield from rec(k + 1)
                del assign[a]

    yield from rec(0)


def enumerate_strong_cospans(
    max_strata: int = 4,
) -> Iterator[tuple[StrataMorphism, StrataMorphism]]:
    """Every strong cospan ``W <- X -> Y`` with ``|W|, |Y| <= max_strata``.

    ``W`` and ``Y`` range over poset isomorphism classes, ``X`` over all
    whole-strata subsets of ``W``, and ``h`` over all strong embeddings of
    ``X`` into ``Y``.
    """
    ws = all_posets(max_strata, "w")
    ys = all_posets(max_strata, "y")
    for w in ws:
        for r in range(len(w) + 1):
            for members in itertools.combinations(w.ids, r):
                sub = restrict(w, members)
                ren = {s: f"x{k}" for k, s in enumerate(sub.ids)}
                x = sub.relabel(ren)
                f = StrataMorphism(x, w, {ren[s]: (s, True) for s in sub.ids})
                for y in ys:
                    if len(y) < len(x):
                        continue
                    for emb in _strong_embeddings(x, y):
                        yield f, StrataMorphism(x, y, {a: (b, True) for a, b in emb.items()})
