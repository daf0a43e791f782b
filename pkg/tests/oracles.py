"""Independent reference computations used only by the tests."""
import math

import numpy as np
from sympy.functions.combinatorial.numbers import kronecker_symbol
from sympy.solvers.diophantine.diophantine import diop_DN


def fundamental_unit(d):
    """(log eps, norm) of the fundamental unit of discriminant d, via x^2 - d y^2 = -4 or 4."""
    for norm in (-1, 1):
        sols = [(x, y) for x, y in diop_DN(d, 4 * norm) if x > 0 and y > 0]
        if sols:
            x, y = min(sols, key=lambda s: s[0] + s[1] * math.sqrt(d))
            return math.log((x + y * math.sqrt(d)) / 2), norm
    raise AssertionError(f"no unit found for {d}")


def analytic_class_number(d):
    """Wide class number h(d) of Q(sqrt d) from the analytic class number formula."""
    a = np.arange(1, d)
    chi = np.array([kronecker_symbol(d, int(k)) for k in a], dtype=float)
    log_eps, _ = fundamental_unit(d)
    val = -np.sum(chi * np.log(np.sin(np.pi * a / d))) / (2 * log_eps)
    h = round(val)
    assert abs(val - h) < 1e-6, (d, val)
    return h


def narrow_class_number(d):
    _, norm = fundamental_unit(d)
    return analytic_class_number(d) * (1 if norm == -1 else 2)


def prime_divisors(m):
    out, k = [], 2
    while k * k <= m:
        if m % k == 0:
            out.append(k)
            while m % k == 0:
                m //= k
        k += 1
    if m > 1:
        out.append(m)
    return out


def reduced_forms_bruteforce(d):
    """Reduced indefinite forms by direct search with floating sqrt."""
    r = math.sqrt(d)
    out = set()
    for a in range(-int(r) - 1, int(r) + 2):
        if a == 0:
            continue
        for b in range(1, int(r) + 1):
            if (b * b - d) % (4 * a):
                continue
            if r - 2 * abs(a) < b < r and b > 2 * abs(a) - r:
                out.add((a, b, (b * b - d) // (4 * a)))
    return out
