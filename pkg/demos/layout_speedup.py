#!/usr/bin/env python3
# The memory-layout experiment. Both variants run the identical in-place
# butterfly; the only difference is where a spectrum column lives. In the
# x-major store a column is strided across the whole matrix, so every
# butterfly step lands on a different cache line. In the mask-major
# (transposed) store a column is one contiguous row. Watch the transform-only
# times diverge as the box grows -- the integer results never do.

import sys

from sboxeval import generate_sbox, run_benchmark, speedup_report, write_csv

reps = 3
print(f"{'size':>6s} {'rowmajor ms':>12s} {'transposed ms':>14s} {'speedup':>8s}")

records_all = []
for bits in (8, 9, 10, 11):
    s = generate_sbox(bits, bits, seed=99)
    records = run_benchmark(s, {"rowmajor", "transposed"}, repetitions=reps)
    by_method = {r.method: r for r in records}
    row = by_method["rowmajor"].transform_only_mean_ms
    tr = by_method["transposed"].transform_only_mean_ms
    print(f"{bits:>3d}x{bits:<2d} {row:>12.1f} {tr:>14.1f} {row / tr:>7.1f}x")
    records_all.extend(records)

print()
print("speedup report (end-to-end, rowmajor baseline):")
for entry in speedup_report(records_all, "rowmajor"):
    print(f"  {entry.n:2d}x{entry.m:<2d} {entry.method:12s} "
          f"workers={entry.workers}  {entry.ratio:5.2f}x")

print()
print("CSV of the runs above:")
write_csv(records_all, sys.stdout)
