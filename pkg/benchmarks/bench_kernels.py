"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat N]

BFS runs on the face adjacency of large (3,7) and (4,4) patches; row
reduction runs on random integer matrices and on an actual support-block
constraint matrix.  Results are checked for equality across backends.
"""
import argparse
import random
import timeit

from tesscurv import kernels, spectral
from tesscurv.exact import _int_row
from tesscurv.generate import generate_regular


def bfs_cases():
    for p, q, r in [(3, 7, 9), (4, 4, 25)]:
        patch, f0 = generate_regular(p, q, r)
        indptr, indices = patch.face_csr
        yield f"bfs ({p},{q}) r={r} faces={len(patch.face_ids)}", (indptr, indices, [f0], len(patch.face_ids))


def rref_cases():
    rng = random.Random(7)
    for n in (30, 60):
        rows = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        yield f"rref random {n}x{n}", (rows, n)
    patch, _ = generate_regular(3, 7, 8)
    S = spectral.make_support(patch, spectral.vertex_ball(patch, 0, 2))
    op = spectral.random_elliptic(patch, 1)
    K, _ = spectral.support_blocks(op, S)
    yield f"rref support block {len(K)}x{len(S)}", ([_int_row(r) for r in K], len(S))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    mods = kernels.backends()
    if "cython" not in mods:
        print("compiled extension not built; only the Python backend is timed")
    print(f"{'case':44s}" + "".join(f"{name:>12s}" for name in mods) + "     speedup")
    for label, fn, cases in [("bfs", "bfs_distances", bfs_cases()), ("rref", "rref_int", rref_cases())]:
        for name, args_ in cases:
            times, results = {}, {}
            for mname, mod in mods.items():
                f = getattr(mod, fn)
                if fn == "rref_int":
                    call = lambda f=f: f([list(r) for r in args_[0]], args_[1])
                else:
                    call = lambda f=f: f(*args_)
                results[mname] = call()
                times[mname] = min(timeit.repeat(call, number=1, repeat=args.repeat))
            if len({str(v) for v in results.values()}) != 1:
                raise SystemExit(f"backends disagree on {name}")
            row = f"{name:44s}" + "".join(f"{times[m] * 1e3:10.2f}ms" for m in mods)
            if "cython" in times:
                row += f"  {times['python'] / times['cython']:8.1f}x"
            print(row)


if __name__ == "__main__":
    main()
