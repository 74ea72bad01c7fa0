"""Compare the compiled and pure-Python kernels on the same inputs.

    python benchmarks/bench_kernels.py [--quick] [--repeat N]

Each row runs one kernel on one workload with every available backend,
checks that all backends return the same result and prints the best time.
"""

import argparse
import time

from lmkit import kernels
from lmkit.algebra import make_chain, make_power
from lmkit.duality import space_from_chains


def _best(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def workloads(quick):
    A = make_power(make_chain(4 if quick else 5), 3)
    L = A.lattice
    unary = list(A.phi) + list(A.phi_bar)
    pairs = [(a, b) for a in range(0, A.size, 7) for b in range(A.size) if A.poset.leq(a, b)][:40]

    def closure(mod):
        return [mod.congruence_closure(A.size, L.flat_join, L.flat_meet, unary, [p]) for p in pairs]

    B = make_power(make_chain(3), 3) if quick else make_power(make_chain(2), 5)
    P = B.poset

    def upsets(mod):
        return mod.upsets(P.size, P.strict_up, P.linear_extension)

    X = space_from_chains([4, 3, 4, 2, 3] if quick else [4, 4, 3, 2, 3, 2], 5)

    def scan(mod):
        return [mod.scan_subsets(X.size, X.maps, k) for k in (kernels.SEMIMODAL, kernels.MODAL, kernels.THETA)]

    def collision(mod):
        return mod.preimage_collision(X.size, X.maps)

    return [
        (f"congruence_closure |A|={A.size}, {len(pairs)} pairs", closure),
        (f"upsets |P|={P.size}", upsets),
        (f"scan_subsets |X|={X.size}", scan),
        (f"preimage_collision |X|={X.size}", collision),
    ]


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--quick", action="store_true", help="small inputs, for smoke tests")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    backends = kernels.available_backends()
    rows = []
    print(f"{'workload':<44}" + "".join(f"{b:>12}" for b in backends) + "   speedup")
    for label, fn in workloads(args.quick):
        times = {}
        results = {}
        for b in backends:
            times[b], results[b] = _best(lambda: fn(kernels.get_backend(b)), args.repeat)
        if len({repr(r) for r in results.values()}) != 1:
            raise SystemExit(f"backends disagree on {label}")
        speed = times["python"] / times["cython"] if "cython" in times else 1.0
        print(f"{label:<44}" + "".join(f"{times[b]:>11.4f}s" for b in backends) + f"   {speed:6.1f}x")
        rows.append((label, times))
    return rows


if __name__ == "__main__":
    main()
