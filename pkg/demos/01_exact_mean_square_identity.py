"""Walk through the exact identity behind every bound in this package.

Averaging |window sum|^2 over all p window starts has a closed spectral
form: a weighted second moment of the complete-sum table, with a
Fejer-style kernel carrying the window length.  This script computes
both sides at a small modulus, shows the agreement digit by digit, and
then plots (textually) how the mean square grows with H.
"""

import numpy as np

from klab import PrimeModulus, SumSpec, spectral_mean_square, window_mean_square

p = PrimeModulus(997)
spec = SumSpec(5, p)

print(f"modulus p = {p.p}, twist = {spec.ell}")
print()
print(f"{'H':>5}  {'direct mean square':>20}  {'spectral form':>20}  {'rel diff':>10}")
for H in (1, 2, 4, 16, 64, 256, 996, 997):
    lhs = window_mean_square(spec, H)
    rhs = spectral_mean_square(spec, H)
    rel = abs(lhs - rhs) / rhs
    print(f"{H:>5}  {lhs:>20.10f}  {rhs:>20.10f}  {rel:>10.2e}")

print()
print("Three endpoints are known in closed form:")
print(f"  H = 1    -> p - 1    = {window_mean_square(spec, 1):.6f}")
print(f"  H = p-1  -> 2p - 3   = {window_mean_square(spec, 996):.6f}")
print(f"  H = p    -> p        = {window_mean_square(spec, 997):.6f}")
print()
print("The H = p case is the classical cancellation story: every full")
print("period sums to exactly -1, no matter the twist.")

# Growth profile: mean square per unit H, a flat line near 1 would mean
# square-root cancellation on average across all starts.
print()
print("mean square / (p*H)  (values near 1 indicate square-root size):")
hs = np.unique(np.geomspace(1, 996, 12).astype(int))
for H in hs:
    v = window_mean_square(spec, int(H)) / (p.p * H)
    bar = "#" * int(round(40 * min(v, 1.5)))
    print(f"  H={int(H):>4}  {v:6.3f}  {bar}")
