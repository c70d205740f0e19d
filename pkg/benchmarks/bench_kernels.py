"""Compiled vs pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json out.json]

Micro-benchmarks call both kernel modules on identical inputs; the
end-to-end rows rerun a small workload in a subprocess with each backend.
"""

import argparse
import json
import os
import random
import subprocess
import sys
import timeit

from dqm import _pykernels
from dqm.algebra.field import get_field

try:
    from dqm import _kernels
except ImportError:
    _kernels = None

WORKLOAD = """
import time
from dqm.algebra import get_field
from dqm.extremal import extremal_form
from dqm.forms import sequence, nu_infty
from dqm.hyperderive import differential_exponent
t = time.perf_counter()
F = get_field(3)
extremal_form(F, 16, 0, 4)
nu_infty(sequence(F, "xi", 1))
differential_exponent(sequence(F, "x", 2), 4)
print(time.perf_counter() - t)
"""


def rand_poly(rng, q, deg):
    c = [rng.randrange(q) for _ in range(deg)] + [rng.randrange(1, q)]
    return bytes(c)


def micro(mod, F, deg, repeat, number):
    ctx = mod.make_ctx(F.p, F.q, F.e, F.add_table, F.mul_table, F.neg_table, F.inv_table)
    rng = random.Random(deg)
    a, b, c, d = (rand_poly(rng, F.q, deg) for _ in range(4))
    b = mod.pmonic(ctx, b)[1]
    d = mod.pmonic(ctx, d)[1]
    cases = {
        "pmul": lambda: mod.pmul(ctx, a, c),
        "pdivmod": lambda: mod.pdivmod(ctx, mod.pmul(ctx, a, c), b),
        "pgcd": lambda: mod.pgcd(ctx, a, b),
        "kadd": lambda: mod.kadd(ctx, a, b, c, d),
        "kmul": lambda: mod.kmul(ctx, a, b, c, d),
    }
    return {name: min(timeit.repeat(fn, number=number, repeat=repeat)) / number for name, fn in cases.items()}


def end_to_end(pure):
    env = dict(os.environ)
    env.pop("DQM_PURE_PYTHON", None)
    if pure:
        env["DQM_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", default=None)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled extension not built; only the pure-Python backend is available")
    results = {"micro": [], "end_to_end": {}}
    print(f"{'q':>3} {'deg':>5} {'op':>8} {'compiled(us)':>13} {'python(us)':>11} {'speedup':>8}")
    for p, e in ((3, 1), (2, 2), (5, 1)):
        F = get_field(p, e)
        for deg in (16, 64, 256):
            number = max(1, 2000 // deg)
            py = micro(_pykernels, F, deg, args.repeat, number)
            cy = micro(_kernels, F, deg, args.repeat, number) if _kernels else {}
            for op in py:
                c = cy.get(op)
                sp = py[op] / c if c else float("nan")
                cs = f"{c * 1e6:13.2f}" if c else f"{'-':>13}"
                print(f"{F.q:>3} {deg:>5} {op:>8} {cs} {py[op] * 1e6:11.2f} {sp:8.1f}")
                results["micro"].append({"q": F.q, "deg": deg, "op": op, "compiled_s": c, "python_s": py[op]})
    t_py = end_to_end(True)
    results["end_to_end"]["python_s"] = t_py
    line = f"end-to-end workload: python {t_py:.2f}s"
    if _kernels:
        t_cy = end_to_end(False)
        results["end_to_end"]["compiled_s"] = t_cy
        line += f", compiled {t_cy:.2f}s, speedup {t_py / t_cy:.1f}x"
    print(line)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(results, fh, indent=2)


if __name__ == "__main__":
    main()
