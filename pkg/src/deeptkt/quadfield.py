"""Class groups of real quadratic fields from indefinite binary quadratic forms.

We compute the narrow (form) class group Cl^+(d) of primitive forms of
discriminant d: classes are the cycles of reduced forms under the reduction
operator rho, multiplied by Dirichlet composition.  The kernel of
Cl^+(d) -> Cl(d) has order at most 2, so the odd part, in particular the
3-Sylow subgroup, agrees with that of the ideal class group of Q(sqrt d).
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import DomainError
from .finite import AbelianInvariants

D_MAX = 10**8
INT128 = 2**127

Form = tuple[int, int, int]


def is_squarefree(m: int) -> bool:
    if m < 1:
        return False
    k = 2
    while k * k <= m:
        if m % (k * k) == 0:
            return False
        if m % k == 0:
            m //= k
        k += 1
    return True


def is_fundamental(d: int) -> bool:
    if d <= 1:
        return False
    if d % 4 == 1:
        return is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def _check_d(d: int) -> int:
    if not 1 < d < D_MAX:
        raise DomainError(f"d={d} outside 1 < d < 10^8")
    if not is_fundamental(d):
        raise DomainError(f"d={d} is not a fundamental discriminant")
    return d


# -- reduction ------------------------------------------------------------------

def is_reduced(f: Form, d: int) -> bool:
    """|sqrt(d) - 2|a|| < b < sqrt(d), in exact integer arithmetic."""
    a, b, _ = f
    a = abs(a)
    if b <= 0 or b * b >= d:
        return False
    if (b + 2 * a) ** 2 <= d:
        return False
    return 2 * a <= b or (2 * a - b) ** 2 < d


def _normal_b(b: int, c: int, d: int) -> int:
    """Representative r = b (mod 2|c|) in (sqrt(d)-2|c|, sqrt(d)) or (-|c|, |c|]."""
    m = 2 * abs(c)
    s = math.isqrt(d)
    if abs(c) * abs(c) < d:
        return s - ((s - b) % m)
    r = b % m
    return r - m if r > abs(c) else r


def rho(f: Form, d: int) -> Form:
    """(a,b,c) -> (c, r, (r^2-d)/4c) with r = -b normalized mod 2c."""
    _, b, c = f
    r = _normal_b(-b, c, d)
    return (c, r, (r * r - d) // (4 * c))


def reduce_form(f: Form, d: int) -> Form:
    for _ in range(10_000):
        if is_reduced(f, d):
            return f
        f = rho(f, d)
    raise RuntimeError(f"reduction of {f} did not terminate")


def reduced_forms(d: int, block_cells: int = 1 << 21) -> list[Form]:
    """All reduced forms of discriminant d, sorted."""
    s = math.isqrt(d)
    bs = np.arange(d % 2 or 2, s + 1, 2, dtype=np.int64)
    rest = d - bs * bs
    rows = max(1, block_cells // max(len(bs), 1))
    out = []
    for a0 in range(1, s + 1, rows):
        A = np.arange(a0, min(a0 + rows, s + 1), dtype=np.int64)
        # b > |sqrt(d) - 2a|; start the block's columns at its smallest bound
        lo = int(np.maximum(s - 2 * A, 2 * A - s - 1).min())
        i0 = int(np.searchsorted(bs, max(lo, 0), side="left"))
        B, R = bs[None, i0:], rest[None, i0:]
        A2 = 2 * A[:, None]
        ok = (R % (2 * A2) == 0) & ((B + A2) ** 2 > d) & ((A2 <= B) | ((A2 - B) ** 2 < d))
        ia, ib = np.nonzero(ok)
        for a, b, rr in zip(A[ia].tolist(), B[0, ib].tolist(), R[0, ib].tolist()):
            c = -(rr // (4 * a))
            out.append((a, b, c))
            out.append((-a, b, -c))
    return sorted(out)


# -- composition ----------------------------------------------------------------

def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def compose(f: Form, g: Form, d: int) -> Form:
    """Dirichlet composition of two primitive forms of discriminant d (not reduced)."""
    a1, b1, _ = f
    a2, b2, _ = g
    beta = (b1 + b2) // 2
    e0, u0, v0 = _egcd(a1, a2)
    e, x, w = _egcd(e0, beta)
    u, v = x * u0, x * v0
    A = a1 * a2 // (e * e)
    B = (u * a1 * b2 + v * a2 * b1 + w * (b1 * b2 + d) // 2) // e
    m = 2 * abs(A)
    B %= m
    if B > abs(A):
        B -= m
    C = (B * B - d) // (4 * A)
    assert max(abs(A), abs(B), abs(C)) < INT128, "composition overflowed 128 bits"
    assert B * B - 4 * A * C == d, "composite has the wrong discriminant"
    return (A, B, C)


def principal_form(d: int) -> Form:
    s = math.isqrt(d)
    b = s if (s - d) % 2 == 0 else s - 1
    return (1, b, (b * b - d) // 4)


# -- class group ----------------------------------------------------------------

def _p_part(orders: np.ndarray, p: int) -> np.ndarray:
    out = np.ones_like(orders)
    o = orders.copy()
    while np.any(o % p == 0):
        m = o % p == 0
        out[m] *= p
        o[m] //= p
    return out


def _primes(m: int) -> list[int]:
    ps, k = [], 2
    while k * k <= m:
        if m % k == 0:
            ps.append(k)
            while m % k == 0:
                m //= k
        k += 1
    if m > 1:
        ps.append(m)
    return ps


@dataclass
class FormClassGroup:
    d: int
    cycles: list[tuple[Form, ...]]
    table: np.ndarray
    identity: int
    index: dict[Form, int] = field(repr=False, default_factory=dict)

    @property
    def h(self) -> int:
        return len(self.cycles)

    def class_of(self, f: Form) -> int:
        return self.index[reduce_form(f, self.d)]

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def inverse(self, i: int) -> int:
        return int(np.flatnonzero(self.table[i] == self.identity)[0])

    @cached_property
    def orders(self) -> np.ndarray:
        out = np.zeros(self.h, dtype=np.int64)
        for i in range(self.h):
            k, cur = 1, i
            while cur != self.identity:
                cur = self.mul(cur, i)
                k += 1
            out[i] = k
        return out

    def primary(self, p: int) -> AbelianInvariants:
        """Invariants of the p-Sylow subgroup, from the number of elements killed by p^k."""
        pp = _p_part(self.orders, p)
        top = round(math.log(int(pp.max()), p))
        counts = [int(np.sum(pp <= p**k)) for k in range(top + 1)]
        # counts[k] = |A_p'| * |A_p[p^k]|
        return AbelianInvariants.from_omega_counts(p, [c // counts[0] for c in counts])

    @cached_property
    def invariants(self) -> AbelianInvariants:
        parts = [self.primary(p).factors for p in _primes(self.h)]
        width = max((len(x) for x in parts), default=0)
        factors = []
        for i in range(width):
            f = 1
            for x in parts:
                f *= x[i] if i < len(x) else 1
            factors.append(f)
        return AbelianInvariants(tuple(factors))

    @property
    def sylow3(self) -> AbelianInvariants:
        return self.primary(3)


def form_cycles(d: int) -> tuple[list[tuple[Form, ...]], dict[Form, int]]:
    forms = reduced_forms(d)
    index: dict[Form, int] = {}
    cycles = []
    for f in forms:
        if f in index:
            continue
        cyc, g = [], f
        while g not in index:
            index[g] = len(cycles)
            cyc.append(g)
            g = rho(g, d)
        if g != f:
            raise RuntimeError(f"rho orbit of {f} is not a cycle")
        cycles.append(tuple(cyc))
    return cycles, index


def class_number(d: int) -> int:
    """Narrow class number: the number of cycles of reduced forms."""
    _check_d(d)
    return len(form_cycles(d)[0])


def class_group(d: int, cycles=None) -> FormClassGroup:
    _check_d(d)
    cycles, index = cycles or form_cycles(d)
    # principal cycle first
    pid = index[reduce_form(principal_form(d), d)]
    order = [pid] + [i for i in range(len(cycles)) if i != pid]
    remap = {old: new for new, old in enumerate(order)}
    cycles = [cycles[i] for i in order]
    index = {f: remap[i] for f, i in index.items()}
    h = len(cycles)
    table = np.zeros((h, h), dtype=np.int64)
    for i in range(h):
        for j in range(i, h):
            k = index[reduce_form(compose(cycles[i][0], cycles[j][0], d), d)]
            table[i, j] = table[j, i] = k
    return FormClassGroup(d, cycles, table, 0, index)


def sylow3(d: int) -> AbelianInvariants:
    return class_group(d).sylow3


# -- scanning -------------------------------------------------------------------

def _scan_chunk(args: tuple[int, int, int]) -> list[tuple[int, AbelianInvariants]]:
    lo, hi, min_rank = args
    out = []
    for d in range(lo, hi + 1):
        if not is_fundamental(d):
            continue
        cyc = form_cycles(d)
        # 3-rank r forces 3^r | h; skip the composition table otherwise
        if len(cyc[0]) % 3**min_rank:
            continue
        s3 = class_group(d, cyc).sylow3
        if s3.rank >= min_rank:
            out.append((d, s3))
    return out


def scan(d_min: int, d_max: int, min_rank: int = 2, workers: int = 1,
         chunk: int = 2000) -> list[tuple[int, AbelianInvariants]]:
    """Fundamental d in [d_min, d_max] whose 3-class group has rank >= min_rank."""
    if not 1 < d_min <= d_max <= D_MAX:
        raise DomainError("need 1 < d_min <= d_max <= 10^8")
    jobs = [(lo, min(lo + chunk - 1, d_max), min_rank) for lo in range(d_min, d_max + 1, chunk)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            parts = list(ex.map(_scan_chunk, jobs))
    else:
        parts = [_scan_chunk(j) for j in jobs]
    return [item for part in parts for item in part]
