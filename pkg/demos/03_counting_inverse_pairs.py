"""Counting x*y = 1 (mod p) with both factors confined to intervals.

The count splits into a size-driven main term |I1||I2|/p plus a
Fourier error term built from one geometric series and one inverse
exponential sum per frequency.  The split is exact, not asymptotic:
the two routes agree to machine precision on every box.
"""

from klab import (
    IntInterval,
    PrimeModulus,
    count_solutions,
    error_term,
    main_term,
    solubility_threshold,
)

p = PrimeModulus(10007)

boxes = [
    (IntInterval(1, 100), IntInterval(1, 100)),
    (IntInterval(5000, 5200), IntInterval(2000, 2600)),
    (IntInterval(1, 1000), IntInterval(9000, 10006)),
    (IntInterval(42, 42), IntInterval(1, 10006)),
]

print(f"p = {p.p}")
print()
for I1, I2 in boxes:
    count, witness = count_solutions(I1, I2, p)
    mt = main_term(I1, I2, p)
    et = error_term(I1, I2, p)
    print(f"I1 = [{I1.lo}, {I1.hi}]  x  I2 = [{I2.lo}, {I2.hi}]")
    print(f"  exact count   = {count}")
    print(f"  main term     = {mt:.6f}")
    print(f"  error term    = {et.real:+.6f} {et.imag:+.1e}i")
    print(f"  main + error  = {mt + et.real:.6f}")
    if witness:
        x, y = witness
        print(f"  witness       = ({x}, {y}); check: {x}*{y} mod p = {(x * y) % p.p}")
    print()

# When must a family of boxes contain a solution?  The sufficient
# family size grows like p^3 (ln p)^4 / (H K)^2, which is astronomically
# conservative at desk scale:
for H, K in ((100, 100), (500, 500), (1000, 1000)):
    J = solubility_threshold(H, K, p)
    capacity = (p.p - 1) // H
    print(f"H = K = {H:>4}: sufficient J = {J:>12,}  "
          f"(only {capacity} disjoint intervals even fit)")
print()
print("In practice a handful of random boxes at H = K ~ p^0.55 already")
print("hits a witness nearly always; see the acceptance suite's rate check.")
