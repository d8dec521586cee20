"""Benchmark: compiled reduction kernel vs the pure-Python fallback.

Runs the same surface construction and Groebner workloads twice -- once
with the compiled extension (when available) and once with
CFR_FORCE_PY_KERNEL=1 -- in separate interpreter processes, and reports
wall times and the speedup.  The workloads are checked to produce
identical generator strings in both modes.

Usage:  python benchmarks/bench_kernel.py [--surface 26] [--seed 7]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import textwrap

WORKER = textwrap.dedent("""
    import json, sys, time
    from cfr import kernel
    from cfr.fields import GF
    from cfr.surfaces import build_surface
    from cfr.congruence import verify_congruence

    sid, seed = int(sys.argv[1]), int(sys.argv[2])
    mode = "compiled" if kernel.HAVE_FAST_KERNEL else "python"
    t0 = time.perf_counter()
    s = build_surface(sid, GF(32771), seed)
    t_build = time.perf_counter() - t0
    t0 = time.perf_counter()
    certs = verify_congruence(s, trials=1, seed=seed + 1)
    t_verify = time.perf_counter() - t0
    print(json.dumps({
        "mode": mode,
        "build": t_build,
        "verify": t_verify,
        "generators": [str(g) for g in s.ideal.gens],
        "passed": all(c.passed for c in certs),
    }))
""")


def run(sid: int, seed: int, force_py: bool) -> dict:
    env = dict(os.environ)
    if force_py:
        env["CFR_FORCE_PY_KERNEL"] = "1"
    else:
        env.pop("CFR_FORCE_PY_KERNEL", None)
    out = subprocess.run([sys.executable, "-c", WORKER, str(sid), str(seed)],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--surface", type=int, default=26,
                    choices=(14, 26, 38))
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    fast = run(args.surface, args.seed, force_py=False)
    slow = run(args.surface, args.seed, force_py=True)

    if fast["generators"] != slow["generators"]:
        print("MISMATCH: kernels disagree on the surface generators")
        sys.exit(1)
    if fast["mode"] == slow["mode"]:
        print("note: compiled kernel unavailable; both runs used Python")

    print(f"surface s{args.surface}, seed {args.seed} "
          f"(identical output verified)")
    for stage in ("build", "verify"):
        f, s = fast[stage], slow[stage]
        print(f"  {stage:8s}  compiled {f:8.2f}s   python {s:8.2f}s   "
              f"speedup {s / f:5.1f}x")


if __name__ == "__main__":
    main()
