#!/usr/bin/env python3
# The golden-value walkthrough: the AES S-box has nonlinearity 112, and every
# pipeline in the package must say so -- the strided baseline, the
# cache-friendly transposed transform, the fused transform, the thread pool
# at several widths, and the transform-free brute-force search.

import time

from sboxeval import aes_sbox, evaluate

aes = aes_sbox()
print(f"AES S-box: {aes.n}x{aes.m}, first bytes "
      + " ".join(f"{int(b):02x}" for b in aes.table[:8]))
print()

for method, workers in [
    ("rowmajor", None),
    ("transposed", None),
    ("fused", None),
    ("parallel", 2),
    ("parallel", 4),
    ("bruteforce", None),
]:
    start = time.perf_counter()
    result = evaluate(aes, method=method, workers=workers)
    elapsed = (time.perf_counter() - start) * 1e3
    label = method if workers is None else f"{method} ({workers} workers)"
    print(f"{label:24s} nl = {result.value}  argmin v = {result.argmin_v:3d}  "
          f"[{elapsed:7.1f} ms]")

print()
print("All six agree: the minimum is reached at output mask v = 1, where the")
print("worst linear approximation matches the component on 144 of 256 inputs,")
print("i.e. |W| = 32 and nl = 2^7 - 32/2 = 112.")
