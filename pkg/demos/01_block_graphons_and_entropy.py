"""Step graphons and graphon entropy.

Builds the family of block benchmark graphons W[r,s] (r equal blocks,
value 1/2 off the diagonal, the first s diagonal blocks filled with 1 and
the rest with 0), checks the entropy identity Ent = 1 - 1/r, and shows
why capping diagonal 1-blocks at 1/2 strictly increases entropy.
"""

import math

from graphlimitlab import (
    StepGraphon,
    binary_entropy,
    cap_at_half,
    entropy,
    make_wrs,
    pointwise_leq,
)

# ── binary entropy ──────────────────────────────────────────────────────

print("h(1/2) =", binary_entropy(0.5))
print("h(1/4) =", binary_entropy(0.25))
print("h(0) = h(1) =", binary_entropy(0.0), binary_entropy(1.0))

# ── the block benchmark family ──────────────────────────────────────────

print("\nW[2,0]: two balanced blocks, 1/2 across, 0 on the diagonal")
W = make_wrs(2, 0)
print("  measures:", [str(m) for m in W.measures])
print("  values:\n", W.values)

print("\nEnt(W[r,s]) = 1 - 1/r, independent of s:")
for r in (1, 2, 3, 5, 10):
    row = [entropy(make_wrs(r, s)) for s in range(min(r, 3) + 1)]
    print(f"  r={r:2d}: entropy(s=0..{min(r,3)}) = {row}, target {1 - 1/r}")

print("\nThe single infinite-r representative is the constant 1/2 graphon:")
print("  Ent =", entropy(make_wrs(math.inf)))

# ── capping at 1/2 ─────────────────────────────────────────────────────

# a diagonal block of 1s carries no entropy; replacing it with 1/2 adds
# the block's measure to the integral while staying pointwise below
print("\ncap at 1/2 on W[2,1]:")
W21 = make_wrs(2, 1)
capped = cap_at_half(W21)
print("  before:\n", W21.values)
print("  after:\n", capped.values)
print("  entropy:", entropy(W21), "->", entropy(capped))
print("  capped <= original pointwise:", pointwise_leq(capped, W21))

print("\nstrict entropy gain for every pattern with a 1-block (t = 4):")
for pattern in range(1 << 4):
    bits = [(pattern >> i) & 1 for i in range(4)]
    values = make_wrs(4, 0).values.copy()
    for i, bit in enumerate(bits):
        values[i, i] = float(bit)
    W = StepGraphon(make_wrs(4, 0).measures, values)
    gain = entropy(cap_at_half(W)) - entropy(W)
    marker = "+" if gain > 0 else " "
    print(f"  pattern {bits} gain {gain:.4f} {marker}")
