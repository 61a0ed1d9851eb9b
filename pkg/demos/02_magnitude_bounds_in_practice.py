"""How tight are the magnitude bounds, really?

Complete sums obey the square-root bound 2*sqrt(p); incomplete sums pay
an extra logarithm.  This script measures observed maxima against both
caps across a few moduli and window lengths, printing the headroom.
The complete-sum ratio creeps toward 1 (the bound is sharp in the
limit); the windowed ratio stays far below its cap, which is typical:
the log factor is an artifact of the completion argument, not of the
sums themselves.
"""

import numpy as np

from klab import PrimeModulus, SumSpec, all_windows, kloosterman_table

print("complete sums: observed max |K| / (2 sqrt p) over all twists")
for p in (101, 997, 10007):
    pm = PrimeModulus(p)
    best = 0.0
    for ell in (1,):  # one table suffices: twisting permutes the family
        T = kloosterman_table(SumSpec(ell, pm))
        best = max(best, float(np.abs(T[1:]).max()))
    print(f"  p = {p:>6}: max = {best:8.4f}, ratio = {best / (2 * pm.sqrt_p):.4f}")

print()
print("windowed sums: observed max vs 2 (1 + ln p) sqrt(p)")
pm = PrimeModulus(10007)
cap = 2 * (1 + pm.log_p) * pm.sqrt_p
print(f"  p = {pm.p}, cap = {cap:.2f}")
for H in (16, 128, 1024, 5003, 10006):
    peak = 0.0
    for ell in (1, 2, 3):
        W = all_windows(SumSpec(ell, pm), H)
        peak = max(peak, float(np.abs(W).max()))
    print(f"  H = {H:>6}: max over starts/twists = {peak:8.3f}"
          f"   (uses {100 * peak / cap:5.1f}% of the cap)")

print()
print("Observed windowed maxima track ~sqrt(H) until H nears p, then")
print("collapse: at H = p every window is a full period and sums to -1.")
