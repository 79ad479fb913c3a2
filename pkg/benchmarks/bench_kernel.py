"""Compare the compiled scalar kernel against the pure Python fallback.

Times the two hot operations (scalar multiply and the elimination row
update) on identical inputs drawn from a real field, then runs a small
end-to-end solve in a subprocess per backend so each one pays its own
import-time selection.  Run from the repository root after installing:

    python3 benchmarks/bench_kernel.py [--p P] [--repeat N] [--skip-solve]
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
from fractions import Fraction
from time import perf_counter

from uqsl2._kernel import pure
from uqsl2.cyclo_field import FieldCtx

try:
    from uqsl2._kernel import _ckernel
except ImportError:
    _ckernel = None

SOLVE_CHILD = (
    "from time import perf_counter; "
    "from uqsl2._kernel import BACKEND; "
    "from uqsl2.relation_engine import commutant_dim; "
    "t0 = perf_counter(); d = commutant_dim(3, 5); "
    "print(BACKEND, d, perf_counter() - t0)"
)


def sample_scalars(ctx: FieldCtx, count: int):
    """Kernel-form scalars with mixed denominators, none zero."""
    vals = []
    for i in range(count):
        v = ctx.q_power(3 * i + 1) - ctx.qint(i % ctx.p + 1)
        v = v * ctx.scalar(Fraction(5, i + 2)) + ctx.scalar(Fraction(i % 7 - 3, 3))
        if not v:
            v = ctx.one
        vals.append((v.nums, v.den))
    return vals


def sample_rows(scalars, rows: int, width: int):
    """Overlapping sparse rows keyed by integer columns."""
    n = len(scalars)
    srcs, dsts, coeffs = [], [], []
    for r in range(rows):
        srcs.append({r + j: scalars[(r + 3 * j) % n] for j in range(width)})
        dsts.append({r + j: scalars[(r + 5 * j + 1) % n] for j in range(0, width, 2)})
        coeffs.append(scalars[(7 * r + 2) % n])
    return srcs, dsts, coeffs


def bench_mul(mod, scalars, red, repeat: int) -> float:
    pairs = [(a, b) for a in scalars for b in scalars]
    best = float("inf")
    for _ in range(repeat):
        t0 = perf_counter()
        for (an, ad), (bn, bd) in pairs:
            mod.kmul(an, ad, bn, bd, red)
        best = min(best, perf_counter() - t0)
    return best


def bench_axpy(mod, srcs, dsts, coeffs, red, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        work = [dict(d) for d in dsts]
        t0 = perf_counter()
        for w, s, (cn, cd) in zip(work, srcs, coeffs):
            mod.krow_axpy(w, s, cn, cd, red)
        best = min(best, perf_counter() - t0)
    return best


def bench_solve() -> dict[str, tuple[int, float]]:
    """Run the p=3, five-strand end-space solve once per backend."""
    results = {}
    for name, extra_env in (("pure", {"UQSL2_PURE_KERNEL": "1"}), ("compiled", {})):
        env = {k: v for k, v in os.environ.items() if k != "UQSL2_PURE_KERNEL"}
        env.update(extra_env)
        proc = subprocess.run(
            [sys.executable, "-c", SOLVE_CHILD],
            env=env,
            capture_output=True,
            text=True,
            check=True,
        )
        backend, dim, seconds = proc.stdout.split()
        results[name] = (backend, int(dim), float(seconds))
    return results


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--p", type=int, default=7, help="field parameter (degree phi(2p))")
    parser.add_argument("--count", type=int, default=64, help="number of sample scalars")
    parser.add_argument("--repeat", type=int, default=3, help="best-of repetitions")
    parser.add_argument("--skip-solve", action="store_true", help="skip the subprocess solve")
    args = parser.parse_args()

    ctx = FieldCtx(args.p)
    red = ctx.red
    scalars = sample_scalars(ctx, args.count)
    srcs, dsts, coeffs = sample_rows(scalars, rows=40, width=120)

    print(f"scalar kernel benchmark: p={args.p}, field degree {len(ctx.one.nums)}")
    if _ckernel is None:
        print("compiled kernel not built; timing the pure backend only")
    backends = [("pure", pure)] + ([("compiled", _ckernel)] if _ckernel else [])

    times: dict[str, dict[str, float]] = {}
    for name, mod in backends:
        times[name] = {
            "kmul": bench_mul(mod, scalars, red, args.repeat),
            "krow_axpy": bench_axpy(mod, srcs, dsts, coeffs, red, args.repeat),
        }

    ops = [("kmul", f"kmul x{len(scalars) ** 2}"), ("krow_axpy", f"krow_axpy x{len(srcs)}")]
    print(f"\n{'op':<20}{'pure':>12}{'compiled':>12}{'speedup':>10}")
    for key, label in ops:
        t_pure = times["pure"][key]
        if _ckernel:
            t_c = times["compiled"][key]
            print(f"{label:<20}{t_pure:>11.4f}s{t_c:>11.4f}s{t_pure / t_c:>9.1f}x")
        else:
            print(f"{label:<20}{t_pure:>11.4f}s{'-':>12}{'-':>10}")

    # cross-check: both backends must multiply identically
    if _ckernel:
        for (an, ad) in scalars[:8]:
            for (bn, bd) in scalars[:8]:
                assert pure.kmul(an, ad, bn, bd, red) == _ckernel.kmul(an, ad, bn, bd, red)

    if not args.skip_solve and _ckernel:
        results = bench_solve()
        (bk_p, dim_p, t_p) = results["pure"]
        (bk_c, dim_c, t_c) = results["compiled"]
        assert bk_p == "pure" and bk_c == "compiled", (bk_p, bk_c)
        assert dim_p == dim_c, "backends disagree on the solve"
        print(f"\ncommutant_dim(3, 5) = {dim_c} (subprocess, includes startup)")
        print(f"{'end-space solve':<20}{t_p:>11.4f}s{t_c:>11.4f}s{t_p / t_c:>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
