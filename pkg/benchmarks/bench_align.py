"""Compare the compiled alignment kernel with the pure-Python one.

    python3 benchmarks/bench_align.py [--lengths 10 50 200] [--repeat 5]
"""
import argparse
import random
import timeit
from array import array

from cockpit_wer import _align_py

try:
    from cockpit_wer import _align_ext
except ImportError:
    _align_ext = None


def pair(n, vocab, rng):
    ref = [rng.randrange(vocab) for _ in range(n)]
    hyp = [w if rng.random() > 0.2 else rng.randrange(vocab) for w in ref]
    return ref, hyp


def best(fn, repeat, number):
    return min(timeit.repeat(fn, repeat=repeat, number=number)) / number


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lengths", type=int, nargs="+", default=[10, 50, 200, 1000])
    ap.add_argument("--vocab", type=int, default=50)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    if _align_ext is None:
        print("compiled kernel not built; timing the Python kernel only")
    print(f"{'words':>6} {'python ms':>11} {'cython ms':>11} {'speedup':>8}")
    for n in args.lengths:
        ref, hyp = pair(n, args.vocab, rng)
        number = max(1, 20_000 // (n * n) + 1)
        py = best(lambda: _align_py.edit_ops(ref, hyp), args.repeat, number)
        if _align_ext is None:
            print(f"{n:>6} {py * 1e3:>11.3f} {'-':>11} {'-':>8}")
            continue
        ra, ha = array("i", ref), array("i", hyp)
        assert _align_ext.edit_ops(ra, ha) == _align_py.edit_ops(ref, hyp)
        cy = best(lambda: _align_ext.edit_ops(ra, ha), args.repeat, number)
        print(f"{n:>6} {py * 1e3:>11.3f} {cy * 1e3:>11.3f} {py / cy:>7.1f}x")


if __name__ == "__main__":
    main()
