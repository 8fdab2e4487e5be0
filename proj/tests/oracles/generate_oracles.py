# Copyright 2026 The branchpde Authors
# SPDX-License-Identifier: Apache-2.0
"""Independent reference values for the C++ test suite.

Everything here is computed from first principles (brute-force enumeration,
exact fractions, mpmath at 50 digits, numpy quadrature) without sharing code
with the library. Output: frozen.json next to this script. Re-run with

    python3 tests/oracles/generate_oracles.py

and commit the result; the tests only read the frozen file.
"""

import itertools
import json
import math
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import mpmath
import numpy as np

mpmath.mp.dps = 50


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1:]
        yield [[first]] + part


def stirling_table(mmax):
    out = {}
    for m in range(1, mmax + 1):
        counts = [0] * (m + 1)
        for p in set_partitions(list(range(m))):
            counts[len(p)] += 1
        out[str(m)] = counts
    return out


def bell_complete_brute(m, x):
    total = Fraction(0)
    for p in set_partitions(list(range(m))):
        prod = Fraction(1)
        for block in p:
            prod *= x[len(block) - 1]
        total += prod
    return total


def compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def mi_up_to(d, amax):
    out = []
    for s in range(amax + 1):
        for a in itertools.product(range(s + 1), repeat=d):
            if sum(a) == s:
                out.append(a)
    return out


def below(a):
    return list(itertools.product(*[range(v + 1) for v in a]))


def add_unit(a, i):
    b = list(a)
    b[i] += 1
    return tuple(b)


def sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mi_fact(a):
    return math.prod(math.factorial(v) for v in a)


def rising(r, n):
    p = Fraction(1)
    for l in range(n):
        p *= r + l
    return p


def g_factorial(theta, r):
    return lambda a: rising(r, sum(a)) * Fraction(theta) ** sum(a) / mi_fact(a)


def g_exponential(theta):
    return lambda a: Fraction(theta) ** sum(a) / mi_fact(a)


def ahat_table(g, d, amax, kmax):
    @lru_cache(maxsize=None)
    def A(a, k):
        if k == 0:
            return g(a)
        total = Fraction(0)
        for b in below(a):
            c = sub(a, b)
            for i in range(d):
                w = (1 + c[i]) * (1 + b[i])
                for l1 in range(k):
                    total += w * A(add_unit(c, i), l1) * A(add_unit(b, i), k - 1 - l1)
        return total / k

    return {(a, k): A(a, k) for a in mi_up_to(d, amax) for k in range(kmax + 1)}


def preset_a_table(theta, r, d, amax, kmax, delta1=1, delta2=1):
    """Weighted-progeny recursion with the factorial preset, written out directly."""
    delta1, delta2 = Fraction(delta1), Fraction(delta2)
    kappa = max(Fraction(1), delta2)
    g = g_factorial(theta, r)

    def box(a):
        return math.prod(1 + v for v in a)

    def sb(a):  # κ σ_∂(α, j) for j >= 0
        return kappa * delta1 * g(a) / kappa

    def s0(a):
        return (d + 1) * delta2 * box(a)

    def si(a, i):
        return Fraction(d + 1) * delta2 / 12 * (2 + a[i]) * (3 + a[i]) * box(a)

    def q0(a):
        return Fraction(1, (d + 1) * box(a))

    def qi(a, b, i):
        return Fraction(6 * (1 + b[i]) * (1 + a[i] - b[i]), (d + 1) * (2 + a[i]) * (3 + a[i]) * box(a))

    @lru_cache(maxsize=None)
    def A(a, k):
        if k == 0:
            return sb(a)
        total = Fraction(0)
        for b in below(a):
            c = sub(a, b)
            for l1 in range(k):
                l2 = k - 1 - l1
                total += s0(a) * q0(a) * A(c, l1) * A(b, l2)
                for i in range(d):
                    total += si(a, i) * qi(a, b, i) * A(add_unit(c, i), l1) * A(add_unit(b, i), l2)
        return total / k

    return A


def frac(v):
    return [str(v.numerator), str(v.denominator)]


def main():
    out = {}
    out["stirling2"] = stirling_table(8)

    xs = [Fraction(1, 2), Fraction(13, 10), Fraction(2), Fraction(-3, 4), Fraction(5, 3), Fraction(1, 7), Fraction(9, 4)]
    out["bell_complete"] = {"x": [float(v) for v in xs],
                            "values": {str(m): float(bell_complete_brute(m, xs)) for m in range(1, 8)}}

    out["polylog_neg_half"] = {str(m): str(int(mpmath.nint(mpmath.polylog(-m, mpmath.mpf(1) / 2))))
                               for m in range(1, 16)}

    out["fuss_catalan"] = [
        {"k": k, "p": p, "r": r,
         "value": float(mpmath.mpf(r) / k * mpmath.binomial(k * p + r - 1, k - 1))}
        for (k, p, r) in [(3, 2, 1), (2, 3, 1), (4, 3, 2), (5, 2.5, 1.5), (6, 4, 3)]]

    # dominating recursion, exact, both regimes, d = 1, 2
    ahat = {}
    for d in (1, 2):
        for name, g in (("factorial", g_factorial(1, 1)), ("exponential", g_exponential(1))):
            t = ahat_table(g, d, 4, 6)
            ahat[f"{name}_d{d}"] = [{"alpha": list(a), "k": k, "value": frac(v)} for (a, k), v in t.items()]
    out["ahat"] = ahat

    # weighted-progeny recursion with the factorial preset theta = 2, r = 1
    pa = []
    for d in (1, 2):
        A = preset_a_table(2, 1, d, 3, 4)
        for a in mi_up_to(d, 3):
            for k in range(5):
                pa.append({"d": d, "alpha": list(a), "k": k, "value": frac(A(a, k))})
    out["preset_a"] = pa

    # expected weighted progeny, factorial preset theta = r = delta = 1, alpha = (1,), lambda = 1, h = 0.05
    A = preset_a_table(1, 1, 1, 1, 60)
    lam, h = mpmath.mpf(1), mpmath.mpf("0.05")
    x = 1 - mpmath.e ** (-lam * h)
    val = mpmath.e ** (-lam * h) * mpmath.fsum(x ** k * mpmath.mpf(A((1,), k).numerator) / A((1,), k).denominator
                                                for k in range(61))
    out["expected_progeny_factorial_11"] = float(val)

    # offspring law for alpha = (2,1), j = 0, d = 2 in canonical order
    a, d = (2, 1), 2
    entries = []
    box = math.prod(1 + v for v in a)
    for b in below(a):
        entries.append({"kind": 0, "beta": list(b), "weight": frac(Fraction(1)),
                        "prob": frac(Fraction(1, (d + 1) * box))})
    for i in range(d):
        for b in below(a):
            entries.append({"kind": i + 1, "beta": list(b),
                            "weight": frac(Fraction(-(1 + b[i]) * (1 + a[i] - b[i]), 2)),
                            "prob": frac(Fraction(6 * (1 + b[i]) * (1 + a[i] - b[i]),
                                                  (d + 1) * (2 + a[i]) * (3 + a[i]) * box))})
    out["offspring_21_j0"] = entries

    # b2 closed form and derivatives
    def phi(x):
        return 2 * mpmath.log((2 + mpmath.e ** x) / (1 + mpmath.e ** x))

    T = mpmath.mpf("0.1")
    out["b2_exact_T01"] = {str(x0): float(phi(mpmath.mpf(x0) - T)) for x0 in (-1, 0, 1)}
    out["b2_phi_taylor"] = {str(x0): [float(mpmath.diff(phi, mpmath.mpf(x0), m) / mpmath.factorial(m))
                                      for m in range(0, 7)] for x0 in ("0", "0.7", "-1.5")}

    def f(u):
        return 4 * mpmath.e ** (-u) - 10 * mpmath.e ** (-u / 2) + mpmath.e ** (u / 2) - mpmath.e ** u + 6

    def fj(j):
        return lambda u: mpmath.diff(f, u, j)

    out["b2_f_phi_taylor"] = {
        str(j): [float(mpmath.diff(lambda s: fj(j)(phi(s)), mpmath.mpf("0.3"), m) / mpmath.factorial(m))
                 for m in range(0, 5)] for j in range(0, 3)}

    zeta = lambda x: 1 / (1 + mpmath.e ** x)
    out["zeta_derivative"] = {str(x0): [float(mpmath.diff(zeta, mpmath.mpf(x0), m)) for m in range(1, 11)]
                              for x0 in (-2, 0, 2)}

    # radii and horizons
    out["radius_factorial_111"] = 2.0 / 27.0
    out["radius_exponential_11"] = float(1 / (2 * mpmath.e))
    out["t_max_111"] = float(mpmath.log(mpmath.mpf(1) / 2 + mpmath.sqrt(mpmath.mpf(1) / 4 + mpmath.mpf(2) / 27 / 8)))

    nodes, weights = np.polynomial.hermite.hermgauss(20)
    out["gauss_hermite_20"] = {"nodes": nodes.tolist(), "weights": weights.tolist()}

    Path(__file__).with_name("frozen.json").write_text(json.dumps(out, indent=1) + "\n")


if __name__ == "__main__":
    main()
