"""Compare the compiled and pure-Python trajectory walkers.

    python3 benchmarks/bench_kernels.py --x0 1e5 --repeat 3

Times a full census of P(2,4,3,3) and a batch of single walks with each
backend, and checks that both produce identical results.
"""

import argparse
import statistics
import time

from permseq import kernel
from permseq.census import CensusSettings, cycle_census
from permseq.cli import parse_int
from permseq.perm import make_pabcd


def _time(fn, repeat):
    runs = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        runs.append(time.perf_counter() - t)
    return statistics.median(runs), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--x0", type=parse_int, default=10**5)
    ap.add_argument("--walks", type=parse_int, default=2000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not kernel.HAVE_COMPILED:
        raise SystemExit("compiled kernel not built; reinstall with Cython available")

    spec = make_pabcd(2, 4, 3, 3)
    settings = CensusSettings(10**8, 20)
    results = {}
    print(f"{'task':<28}{'backend':<9}{'median s':>10}")
    for backend in ("cython", "python"):
        t, rep = _time(lambda: cycle_census(spec, args.x0, settings, backend=backend), args.repeat)
        results[("census", backend)] = (t, rep.cycle_keys(), rep.divergent_min_count)
        print(f"{'census X0=' + str(args.x0):<28}{backend:<9}{t:>10.3f}")

        def walks():
            return [kernel.walk(spec, x, 10**8, 20, backend=backend)[:4] for x in range(1, args.walks + 1)]

        t, out = _time(walks, args.repeat)
        results[("walks", backend)] = (t, out)
        print(f"{str(args.walks) + ' walks':<28}{backend:<9}{t:>10.3f}")

    for task in ("census", "walks"):
        fast, slow = results[(task, "cython")], results[(task, "python")]
        if fast[1:] != slow[1:]:
            raise SystemExit(f"{task}: backends disagree")
        print(f"{task}: speed-up {slow[0] / fast[0]:.1f}x, results identical")


if __name__ == "__main__":
    main()
