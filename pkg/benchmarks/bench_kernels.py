"""Micro-benchmark: numba-jitted kernels vs the pure-numpy fallback.

Run: python benchmarks/bench_kernels.py --patterns 2000 --strings 500
Setting DRIFTSIG_DISABLE_NUMBA=1 makes the package itself use the numpy
path; this script always times both implementations side by side.
"""

import argparse
import random
import time
from itertools import islice

from driftsig import _kernels
from driftsig.alphabet import encode_many
from driftsig.engine import compile_set, pack_patterns
from driftsig.learner import LearnerConfig, generate_components
from driftsig.streams import DriftConfig, gen_synthetic


def best_of(fn, repeats=3):
    best = float("inf")
    out = None
    for _ in range(repeats):
        start = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--patterns", type=int, default=2000, help="component pool size")
    ap.add_argument("--strings", type=int, default=500, help="strings matched against the pool")
    ap.add_argument("--events", type=int, default=20000, help="events for the automaton scan")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")

    rng = random.Random(args.seed)
    values = [e.value for e in islice(gen_synthetic(DriftConfig(seed=args.seed)), args.events)]
    strings = values[: args.strings]

    pool = generate_components(
        set(strings[:60]), LearnerConfig(max_ngram=4, max_wildcards=1, max_quantified=0)
    )
    patterns = list(pool.components)
    rng.shuffle(patterns)
    patterns = patterns[: args.patterns]
    packed = pack_patterns(patterns)
    scodes, s_off = encode_many(strings)

    print(f"pattern x string match matrix: {len(patterns)} x {len(strings)}")
    t_nb, out_nb = best_of(lambda: _kernels.nfa_match_matrix_numba(*packed, scodes, s_off))
    t_np, out_np = best_of(lambda: _kernels.nfa_match_matrix_numpy(*packed, scodes, s_off))
    assert (out_nb == out_np).all(), "kernel outputs diverge"
    print(f"  numba: {t_nb * 1e3:8.1f} ms")
    print(f"  numpy: {t_np * 1e3:8.1f} ms")
    print(f"  speedup: {t_np / t_nb:.1f}x")

    print(f"pattern-hits-any-string filter: {len(patterns)} x {len(strings)}")
    t_nb, out_nb = best_of(lambda: _kernels.nfa_match_any_numba(*packed, scodes, s_off))
    t_np, out_np = best_of(lambda: _kernels.nfa_match_any_numpy(*packed, scodes, s_off))
    assert (out_nb == out_np).all(), "kernel outputs diverge"
    print(f"  numba: {t_nb * 1e3:8.1f} ms")
    print(f"  numpy: {t_np * 1e3:8.1f} ms")
    print(f"  speedup: {t_np / t_nb:.1f}x")

    matcher = compile_set(patterns[:200])
    ecodes, e_off = encode_many(values)
    print(f"combined automaton scan: {len(values)} events, {matcher.n_states} states")
    t_nb, out_nb = best_of(
        lambda: _kernels.dfa_match_any_numba(matcher._trans, matcher._hit_run, matcher._hit_end, ecodes, e_off)
    )
    t_np, out_np = best_of(
        lambda: _kernels.dfa_match_any_numpy(matcher._trans, matcher._hit_run, matcher._hit_end, ecodes, e_off)
    )
    assert (out_nb == out_np).all(), "kernel outputs diverge"
    print(f"  numba: {t_nb * 1e3:8.1f} ms")
    print(f"  numpy: {t_np * 1e3:8.1f} ms")
    print(f"  speedup: {t_np / t_nb:.1f}x")


if __name__ == "__main__":
    main()
