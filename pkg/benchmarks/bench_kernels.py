"""Compare the compiled and pure-Python order kernels.

Times the pushout universal check over a seeded sample of strong cospans
(every poset target up to the given size) and the transitive closure of
random relations.  Run ``python3 benchmarks/bench_kernels.py --help``.
"""

from __future__ import annotations

import argparse
import random
import statistics
import time

from stratamalg import kernels
from stratamalg.amalgamation import pushout
from stratamalg.generators import all_posets, enumerate_strong_cospans


def _universal_args(max_strata: int, sample: int, seed: int, target_strata: int) -> list[tuple]:
    cospans = list(enumerate_strong_cospans(max_strata))
    rng = random.Random(seed)
    picked = rng.sample(cospans, min(sample, len(cospans)))
    out = []
    for f, h in picked:
        p = pushout(f, h)
        am, w, y = p.amalgam, f.target, h.target
        for z in all_posets(target_strata):
            out.append(
                (
                    len(am), am.leq_matrix,
                    len(w), w.leq_matrix,
                    len(y), y.leq_matrix,
                    f.indices(), h.indices(), p.left_leg.indices(), p.right_leg.indices(),
                    len(z), z.leq_matrix,
                    10_000_000,
                )
            )
    return out


def _closure_args(count: int, n: int, seed: int) -> list[tuple]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        rel = bytes(1 if a != b and rng.random() < 0.15 else 0 for a in range(n) for b in range(n))
        out.append((n, rel))
    return out


def _time(fn, calls: list[tuple], repeat: int) -> float:
    runs = []
    for _ in range(repeat):
        start = time.perf_counter()
        for args in calls:
            fn(*args)
        runs.append(time.perf_counter() - start)
    return statistics.median(runs)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-strata", type=int, default=4, help="cospan size bound")
    ap.add_argument("--sample", type=int, default=100, help="cospans to check")
    ap.add_argument("--target-strata", type=int, default=4)
    ap.add_argument("--closure-size", type=int, default=40)
    ap.add_argument("--closure-count", type=int, default=50)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    backends = kernels.backends()
    if "compiled" not in backends:
        print("compiled backend not built; only the Python kernel is timed")
    uni = _universal_args(args.max_strata, args.sample, args.seed, args.target_strata)
    clo = _closure_args(args.closure_count, args.closure_size, args.seed)

    results: dict[str, dict[str, float]] = {}
    for name, mod in sorted(backends.items()):
        results[name] = {
            "universal_check": _time(mod.universal_check, uni, args.repeat),
            "closure": _time(mod.closure, clo, args.repeat),
        }
        if name == "compiled":
            py = [backends["python"].universal_check(*a) for a in uni]
            assert py == [mod.universal_check(*a) for a in uni], "backends disagree"

    print(f"{'kernel':<16}" + "".join(f"{n:>12}" for n in sorted(results)) + f"{'speedup':>10}")
    for k in ("universal_check", "closure"):
        row = [results[n][k] for n in sorted(results)]
        speed = f"{results['python'][k] / results['compiled'][k]:>9.1f}x" if "compiled" in results else ""
        print(f"{k:<16}" + "".join(f"{t:>11.3f}s" for t in row) + speed)
    print(f"({len(uni)} universal-check calls, {len(clo)} closures of size {args.closure_size})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
