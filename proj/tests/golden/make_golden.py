"""Regenerates the golden kernels with mpmath at 40 digits.

    python3 make_golden.py > rl_kernels.json
"""
import json

import mpmath as mp

mp.mp.dps = 40


def rl_kernel(z, n):
    h = mp.mpf(1) / n
    g = mp.gamma(z + 1)
    return [h**z * ((m + 1) ** z - (mp.mpf(m) ** z if m else 0)) / g for m in range(n)]


def pair(c):
    c = mp.mpc(c)
    return [float(c.real), float(c.imag)]


cases = []
for z, n in [(mp.mpf("0.5"), 8), (mp.mpc("0.3", "0.4"), 8), (mp.mpf("2.5"), 16), (mp.mpc("1", "1"), 16)]:
    cases.append({"z": pair(z), "N": n, "k": [pair(v) for v in rl_kernel(z, n)]})
print(json.dumps({"riemann_liouville": cases}))
