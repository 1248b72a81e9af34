"""Independent numpy brute-force checks for the closed-form tails and the
Wilson interval values frozen into the C++ test suites.

Run: python3 tests/oracles/brute_force_tails.py
"""
import math

import numpy as np
from scipy import stats

N = 10_000_000
rng = np.random.default_rng(20240607)


def report(name, mc, closed):
    sigma = math.sqrt(closed * (1 - closed) / N)
    status = "ok" if abs(mc - closed) <= 4 * sigma else "MISMATCH"
    print(f"{name:<40s} mc={mc:.6f} closed={closed:.6f} 4sigma={4 * sigma:.6f} {status}")


# no interference: (2P/s2)(X^2+Y^2)/Z^2
p, s2, beta = 5.0, 100.0, 1.0
x, y, z = rng.standard_normal((3, N))
stat = (2 * p / s2) * (x * x + y * y) / (z * z)
report("NoRfi P=5 s2=100 beta=1", np.mean(stat >= beta), (1 + beta * s2 / (2 * p)) ** -0.5)

# single interferer: (P/Pmin)(A^2+B^2)/C^2
p, pmin = 10.0, 10.0
for beta in (0.5, 1.0, 2.0, 4.0):
    a, b, c = rng.standard_normal((3, N))
    stat = (p / pmin) * (a * a + b * b) / (c * c)
    report(f"SingleRfi P=Pmin=10 beta={beta}", np.mean(stat >= beta), (1 + beta * pmin / p) ** -0.5)

# multiple interferers, U = 3
u, p, pt, beta = 3, 10.0, 10.0, 1.0
num = rng.chisquare(2, N)
den = np.zeros(N)
for _ in range(2 * u):
    g = rng.standard_normal(N)
    den += g * g
stat = (p / pt) * num / den
report("MultiRfi U=3 P=Pt beta=1", np.mean(stat >= beta), (1 + beta * pt / p) ** -u)

# practical SINR with unit powers, U = 25
u, beta = 25, 0.1
h = rng.exponential(1.0, N)
den = rng.gamma(u + 1, 1.0, N)  # sum of U+1 Exp(1)
report("PracticalSinr U=25 beta=0.1", np.mean(h / den >= beta), (1 + beta) ** -(u + 1))
h = np.zeros(N)
for _ in range(2):
    g = rng.standard_normal(N) / math.sqrt(2)
    h += g * g
den = np.zeros(N)
for _ in range(2 * (u + 1)):
    g = rng.standard_normal(N) / math.sqrt(2)
    den += g * g
report("PracticalSinr U=25 beta=0.1 (normals)", np.mean(h / den >= beta), (1 + beta) ** -(u + 1))

print("1.1^-26 =", repr(1.1 ** -26))
print("11^-1/2 =", repr(11 ** -0.5))
print("2^-1/2  =", repr(2 ** -0.5))


# Wilson score interval, independent of the C++ implementation
def wilson(hits, n, conf=0.95):
    z = stats.norm.ppf(1 - (1 - conf) / 2)
    ph = hits / n
    denom = 1 + z * z / n
    centre = (ph + z * z / (2 * n)) / denom
    half = z * math.sqrt(ph * (1 - ph) / n + z * z / (4 * n * n)) / denom
    return centre - half, centre + half


lo, hi = wilson(500_000, 1_000_000)
print(f"wilson(5e5,1e6) = ({lo!r}, {hi!r}) half={(hi - lo) / 2!r}")
lo, hi = wilson(7, 100)
print(f"wilson(7,100)   = ({lo!r}, {hi!r})")
lo, hi = wilson(0, 100)
print(f"wilson(0,100)   = ({lo!r}, {hi!r})")

# arctan-integral bound: Cauchy ratio-of-normals Monte Carlo of the integrand
# (1/2)[P(X >= t+Y) + P(X >= t-Y)], X = A/C, Y = B/D.
a, c, b, d = rng.standard_normal((4, N))
xr, yr = a / c, b / d
for t in (0.5, 1.0, 2.0, 1000.0):
    mc = 0.5 * (np.mean(xr >= t + yr) + np.mean(xr >= t - yr))
    closed = 0.5 - math.atan(t / 2) / math.pi
    report(f"arctan bound t={t}", mc, closed)
