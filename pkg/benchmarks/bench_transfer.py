"""Compare the numba and numpy transfer-product kernels.

    python benchmarks/bench_transfer.py [--points 20001] [--n-imp 22 200] [--repeat 5]

Both kernels are called directly, so the env flag does not matter here.
"""

import argparse
import math
import timeit

import numpy as np

from quasibound import LatticeParams, _accel
from quasibound.model import coupling_x_array


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=20001)
    ap.add_argument("--n-imp", type=int, nargs="+", default=[22, 200])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _accel.transfer_products_numba is None:
        raise SystemExit("numba is not installed")

    # interior grid avoids band edges and the resonance
    ks = np.linspace(-math.pi, math.pi, args.points + 2)[1:-1] + 1e-7
    print(f"{'n_imp':>6} {'points':>8} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8} {'median rel':>11} {'max rel':>9}")
    for n in args.n_imp:
        p = LatticeParams(n_imp=n)
        xs = coupling_x_array(ks, p)
        call = (ks, xs, p.b, p.j, p.n_imp)
        ref, ref_s = _accel.transfer_products_numpy(*call)
        got, got_s = _accel.transfer_products_numba(*call)  # compile / cache load
        scale = np.exp(ref_s - got_s)[:, None, None]
        # per-point difference relative to the largest entry; the max sits next to a
        # band edge where |X| is huge and both kernels lose digits to cancellation
        diff = np.abs(got - ref * scale).max(axis=(1, 2)) / np.abs(ref * scale).max(axis=(1, 2))
        t_np = min(timeit.repeat(lambda: _accel.transfer_products_numpy(*call), number=1, repeat=args.repeat))
        t_nb = min(timeit.repeat(lambda: _accel.transfer_products_numba(*call), number=1, repeat=args.repeat))
        print(f"{n:>6} {ks.size:>8} {1e3 * t_np:>10.2f} {1e3 * t_nb:>10.2f} {t_np / t_nb:>8.1f} {np.median(diff):>11.1e} {diff.max():>9.1e}")


if __name__ == "__main__":
    main()
