"""Independent reference values for the unit tests.

Closed forms are evaluated with mpmath at 30 digits; values without a closed
form come from brute-force numpy integration unrelated to the library code.
Run: python3 tests/oracles/oracles.py > tests/oracle_values.hpp
"""
import math

import mpmath as mp
import numpy as np

mp.mp.dps = 30
out = {}


def lq_volume(n, q):
    if q == math.inf:
        return mp.mpf(2) ** n
    return (2 * mp.gamma(1 / mp.mpf(q) + 1)) ** n / mp.gamma(n / mp.mpf(q) + 1)


def c_np(n, p):
    return mp.gamma((p + n) / mp.mpf(2)) / (2 * mp.pi ** ((n - 1) / mp.mpf(2)) * mp.gamma((p + 1) / mp.mpf(2)))


for n in range(2, 7):
    for q, tag in ((1, "1"), (1.5, "1_5"), (2, "2"), (4, "4"), (math.inf, "inf")):
        out[f"vol_lq_n{n}_q{tag}"] = lq_volume(n, q)
out["c_2_2"] = c_np(2, 2)
out["c_3_2"] = c_np(3, 2)
out["c_2_1"] = c_np(2, 1)
out["c_4_3_5"] = c_np(4, 3.5)
out["sphere_area_5"] = 2 * mp.pi ** 2.5 / mp.gamma(2.5)

# Disk moments and sections.
out["disk_moment_p1"] = mp.quad(lambda t: abs(t) * 2 * mp.sqrt(1 - t * t), [-1, 0, 1])
out["disk_moment_p2"] = mp.quad(lambda t: t * t * 2 * mp.sqrt(1 - t * t), [-1, 0, 1])
out["disk_gamma_p2"] = mp.sqrt(out["disk_moment_p2"] / (mp.pi * mp.pi))
out["disk_central_slicing"] = mp.pi / (2 * mp.sqrt(mp.pi))
vb3 = 4 * mp.pi / 3
out["ball3_central_slicing"] = vb3 / (mp.pi * vb3 ** (mp.mpf(1) / 3))
out["disk_r2_mass"] = mp.quad(lambda r: r ** 3 * 2 * mp.pi, [0, 1])
out["gaussian_disk_mass_s07"] = mp.quad(lambda r: 2 * mp.pi * r * mp.e ** (-r * r / (2 * mp.mpf("0.49"))), [0, 1])

# Square [-1,1]^2 against the disk.
out["square_dovr_disk"] = mp.sqrt(mp.pi / 2)
out["jensen_square_p2_lhs"] = 4 / mp.pi
out["jensen_square_p2_rhs"] = 1 / (mp.mpf(1) / 2 + 1 / mp.pi)

# Profile moment functional F(q).
out["tent_F0"] = mp.mpf(1) / 2
out["tent_F1"] = mp.sqrt(mp.mpf(1) / 3)
out["tent_F3"] = (4 * mp.quad(lambda t: t ** 3 * (1 - t), [0, 1])) ** (mp.mpf(1) / 4)
out["tent_Fm05"] = ((mp.mpf("0.5") / 2) * 2 * mp.quad(lambda t: t ** -0.5 * (1 - t), [0, 1])) ** (1 / mp.mpf("0.5"))

# Least first moment of the unit-volume cube over directions. E|sum a_i U_i|
# for U uniform on [-1/2,1/2]^n is the n-fold divided difference of
# sgn(x) x^(n+1) / (n+1)! at 0 (exact; needs every a_i != 0).
def cube_first_moment(a):
    a = [mp.mpf(x) for x in a]
    norm = mp.sqrt(sum(x * x for x in a))
    a = [x / norm for x in a]
    n = len(a)
    total = mp.mpf(0)
    for mask in range(2 ** n):
        eps = [1 if (mask >> i) & 1 else -1 for i in range(n)]
        x = sum(e * ai for e, ai in zip(eps, a)) / 2
        total += mp.fprod(eps) * mp.sign(x) * x ** (n + 1)
    return total / (mp.factorial(n + 1) * mp.fprod(a))


def cube_min_first_moment(n):
    from scipy.optimize import minimize
    r = minimize(lambda v: float(cube_first_moment(v)), np.ones(n) + 0.01 * np.arange(n), method="Nelder-Mead",
                 options={"xatol": 1e-10, "fatol": 1e-15, "maxiter": 20000})
    return cube_first_moment(r.x)


out["cube2_min_p1"] = cube_min_first_moment(2)
out["cube3_min_p1"] = cube_min_first_moment(3)
# Exact diagonal value in the plane: E|U1+U2|/sqrt(2) with U uniform on [-1/2,1/2].
out["cube2_diag_p1"] = mp.sqrt(2) / 6

print("#pragma once")
print("// Generated by tests/oracles/oracles.py; do not edit by hand.")
print("namespace oracle {")
for k, v in out.items():
    print(f"inline constexpr double {k} = {mp.nstr(v, 17)};")
print("}  // namespace oracle")
