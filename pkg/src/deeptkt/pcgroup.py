"""The 3-groups of maximal class G_a^n(z,w) from their power-commutator presentation.

Pc-generators are ordered ``(x, y, s_2, ..., s_{n-1})``; the element with exponent
vector ``e`` has code ``sum(e[j] * 3**j)`` (x is the least significant digit).

Relations (commutators are ``[g,h] = g^-1 h^-1 g h``)::

    s_2 = [y,x],  s_i = [s_{i-1},x] (3 <= i <= n),  s_n = 1,
    [y,s_2] = s_{n-1}^a,  [y,s_i] = 1 (3 <= i <= n-1),
    x^3 = s_{n-1}^w,  y^3 s_2^3 s_3 = s_{n-1}^z,
    s_i^3 s_{i+1}^3 s_{i+2} = 1 (2 <= i <= n-3),  s_{n-2}^3 = s_{n-1}^3 = 1.
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError, ParameterError, StructureError
from .finite import (FiniteGroup, Subgroup, center, derived_subgroup, generating_set,
                     lower_central_series, subgroup_closure)

P = 3
DEFAULT_ENUM_BOUND = 9


def enum_bound() -> int:
    return int(os.environ.get("PCT_ENUM_BOUND", DEFAULT_ENUM_BOUND))


@dataclass(frozen=True, order=True)
class GroupParams:
    a: int
    n: int
    w: int
    z: int

    def __str__(self) -> str:
        return f"G_{self.a}^{self.n}({self.z},{self.w})"

    @property
    def mainline(self) -> bool:
        return self.a == 0 and self.z == 0 and self.w == 0

    def validate(self) -> "GroupParams":
        a, n, w, z = self.a, self.n, self.w, self.z
        if a not in (0, 1):
            raise ParameterError(f"{self}: a must be 0 or 1")
        if w not in (-1, 0, 1) or z not in (-1, 0, 1):
            raise ParameterError(f"{self}: w and z must lie in {{-1,0,1}}")
        if n < 2:
            raise ParameterError(f"{self}: n must be at least 2")
        if a == 1:
            if n < 5:
                raise ParameterError(f"{self}: a=1 requires n >= 5")
            if z != 0:
                raise ParameterError(f"{self}: a=1 requires z=0")
            return self
        if n == 2 and (z, w) != (0, 0):
            raise ParameterError(f"{self}: n=2 admits only w=z=0 (abelian root)")
        if n == 3 and (z != 0 or w not in (0, 1)):
            raise ParameterError(f"{self}: n=3 admits only z=0, w in {{0,1}}")
        if n >= 4:
            if (z, w) == (-1, 0):
                if n % 2:
                    raise ParameterError(f"{self}: z=-1 requires even n")
            elif (z, w) not in ((0, 0), (0, 1), (1, 0)):
                raise ParameterError(f"{self}: a=0, n>=4 admits (z,w) in (0,0),(0,1),(1,0),(-1,0)")
        return self


# fixed per-level order: a=0 with (z,w) then a=1 with (z,w)
LEVEL_ORDER = [(0, 0, 0), (0, 0, 1), (0, 1, 0), (0, -1, 0), (1, 0, -1), (1, 0, 0), (1, 0, 1)]


def admissible_params(n_max: int, n_min: int = 2) -> list[GroupParams]:
    out = []
    for n in range(n_min, n_max + 1):
        for a, z, w in LEVEL_ORDER:
            p = GroupParams(a=a, n=n, w=w, z=z)
            try:
                out.append(p.validate())
            except ParameterError:
                pass
    return out


def _digits(codes: np.ndarray, n: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    return (codes[..., None] // (P ** np.arange(n))) % P


class PcGroup(FiniteGroup):
    """A consistent pc-group G_a^n(z,w) with collected multiplication tables."""

    def __init__(self, params: GroupParams, right, power_rules, conjugation_rules):
        n = params.n
        self.params = params
        self.n = n
        self.power_rules = power_rules            # i -> code of g_i^3
        self.conjugation_rules = conjugation_rules  # (j, i) -> code of g_j^{g_i}, j > i
        names = ["x", "y"] + [f"s{k}" for k in range(2, n)]
        words = _digits(np.arange(P**n), n)
        named = {nm: P**k for k, nm in enumerate(names)}
        super().__init__(right, words, names, named)

    # -- element API on exponent vectors -----------------------------------
    def encode(self, exps: Sequence[int]) -> int:
        if len(exps) != self.n:
            raise StructureError(f"exponent vector of length {len(exps)}; expected {self.n}")
        if any(not (0 <= e < P) for e in exps):
            raise StructureError(f"exponents must lie in 0..2: {tuple(exps)}")
        return int(sum(int(e) * P**j for j, e in enumerate(exps)))

    def decode(self, code: int) -> tuple[int, ...]:
        return tuple(int(d) for d in _digits(code, self.n))

    @property
    def identity(self) -> tuple[int, ...]:
        return (0,) * self.n

    def multiply(self, g: Sequence[int], h: Sequence[int]) -> tuple[int, ...]:
        return self.decode(self.mul(self.encode(g), self.encode(h)))

    def inverse(self, g: Sequence[int]) -> tuple[int, ...]:
        return self.decode(self.inv(self.encode(g)))

    def power(self, g: Sequence[int], k: int) -> tuple[int, ...]:
        return self.decode(self.pow(self.encode(g), k))

    def commutator(self, g: Sequence[int], h: Sequence[int]) -> tuple[int, ...]:
        return self.decode(self.comm(self.encode(g), self.encode(h)))

    def s(self, k: int) -> int:
        """Code of s_k (x, y for k = 0, 1); identity for k >= n."""
        return P**k if k < self.n else 0

    @property
    def x(self) -> int:
        return 1

    @property
    def y(self) -> int:
        return P

    def element(self, expr: str) -> int:
        """Code of a word such as ``"x*y^2"`` or ``"s3^-1*s5"``; ``"1"`` is the identity."""
        return word_element(self, expr)

    def enumerate(self) -> np.ndarray:
        if self.n > enum_bound():
            raise CapacityError(f"n={self.n} exceeds enumeration bound {enum_bound()}")
        return np.arange(self.order)

    # -- structure ------------------------------------------------------------
    @cached_property
    def derived(self) -> Subgroup:
        return derived_subgroup(self)

    @cached_property
    def lcs(self) -> list[Subgroup]:
        return lower_central_series(self)

    @cached_property
    def centre(self) -> Subgroup:
        return center(self)

    def gamma(self, i: int) -> Subgroup:
        """gamma_i(G), 1-based; trivial beyond the end of the series."""
        return self.lcs[i - 1] if i <= len(self.lcs) else self.trivial

    @property
    def nilpotency_class(self) -> int:
        return len(self.lcs) - 1

    @property
    def coclass(self) -> int:
        return self.n - self.nilpotency_class


_TOKEN = re.compile(r"^\s*([a-z]+\d*)\s*(?:\^\s*(-?\d+))?\s*$")


def word_element(G: FiniteGroup, expr: str) -> int:
    acc = 0
    for factor in expr.split("*"):
        if factor.strip() == "1":
            continue
        m = _TOKEN.match(factor)
        if not m:
            raise StructureError(f"cannot parse word factor {factor!r}")
        name, k = m.group(1), int(m.group(2) or 1)
        if name in G.named:
            g = G.named[name]
        elif re.fullmatch(r"s\d+", name):
            g = 0  # s_k with k >= n
        else:
            raise StructureError(f"unknown generator {name!r}")
        acc = G.mul(acc, G.pow(g, k))
    return int(acc)


# -- construction -------------------------------------------------------------

class _Builder:
    """Bootstraps normal-form rules and right-multiplication tables, top generator first."""

    def __init__(self, params: GroupParams):
        self.p = params
        self.n = params.n
        N = P**self.n
        self.right = np.zeros((self.n, N), dtype=np.int64)
        self.right_inv = np.zeros((self.n, N), dtype=np.int64)
        self.power = {}
        self.conj = {}

    def mul(self, u, v, lo: int):
        """u * v where v involves only generators >= lo (tables built)."""
        u = np.array(u, dtype=np.int64, copy=True)
        v = np.asarray(v, dtype=np.int64)
        u, v = np.broadcast_arrays(u, v)
        u = u.copy()
        d = _digits(v, self.n)
        for j in range(lo, self.n):
            for r in (1, 2):
                m = d[..., j] >= r
                if m.any():
                    u[m] = self.right[j][u[m]]
        return u if u.ndim else int(u)

    def inv(self, v, lo: int) -> int:
        d = _digits(v, self.n)
        out = 0
        for j in reversed(range(lo, self.n)):
            for _ in range(int(d[j])):
                out = int(self.right_inv[j][out])
        return out

    def s(self, k: int) -> int:
        return P**k if 2 <= k < self.n else 0

    def s_pow(self, k: int, e: int) -> int:
        return self.s(k) * (e % P) if self.s(k) else 0

    def conj_rule(self, j: int, i: int) -> int:
        """Code of g_j^{g_i} for j > i."""
        a, n = self.p.a, self.n
        if i == 0:
            if j == 1:
                return P + self.s(2)          # y^x = y s_2
            return P**j + self.s(j + 1)       # s_j^x = s_j s_{j+1}
        if i == 1 and j == 2:
            return P**2 + self.s_pow(n - 1, -a)  # s_2^y = s_2 s_{n-1}^{-a}
        return P**j

    def power_rule(self, i: int) -> int:
        """Code of g_i^3, over generators > i (tables for those exist)."""
        n, p = self.n, self.p
        if i == 0:
            return self.s_pow(n - 1, p.w) if n >= 3 else 0
        if i == 1:
            if n == 2:
                return 0
            # y^3 = s_2^-3 s_3^-1 s_{n-1}^z
            acc = self.inv(self.power[2], 2)
            acc = self.mul(acc, self.inv(self.s(3), 2), 2)
            return self.mul(acc, self.s_pow(n - 1, p.z), 2)
        if i >= n - 2:
            return 0
        # s_i^3 = s_{i+1}^-3 s_{i+2}^-1
        acc = self.inv(self.power[i + 1], i + 1)
        return self.mul(acc, self.inv(self.s(i + 2), i + 1), i + 1)

    def build(self) -> None:
        n = self.n
        for i in reversed(range(n)):
            self.power[i] = self.power_rule(i)
            for j in range(i + 1, n):
                self.conj[(j, i)] = self.conj_rule(j, i)
            ntail = P ** (n - i - 1)
            step = P ** (i + 1)
            tails = np.arange(ntail, dtype=np.int64) * step
            # B^{g_i} for every tail B over generators > i
            td = _digits(tails, n)
            conjtail = np.zeros(ntail, dtype=np.int64)
            for j in range(i + 1, n):
                for r in (1, 2):
                    m = td[:, j] >= r
                    if m.any():
                        conjtail[m] = self.mul(conjtail[m], self.conj[(j, i)], i + 1)
            overflow = self.mul(self.power[i], conjtail, i + 1)
            g = np.empty((ntail, P), dtype=np.int64)
            g[:, 0] = P**i + conjtail
            g[:, 1] = 2 * P**i + conjtail
            g[:, 2] = overflow
            lower = np.arange(P**i, dtype=np.int64)
            self.right[i] = (g[:, :, None] + lower[None, None, :]).ravel()
            self.right_inv[i, self.right[i]] = np.arange(P**n)


def build_group(params: GroupParams, bound: int | None = None) -> PcGroup:
    """Build G_a^n(z,w); raises ParameterError / CapacityError."""
    params.validate()
    bound = enum_bound() if bound is None else bound
    if params.n > bound:
        raise CapacityError(f"n={params.n} exceeds enumeration bound {bound}")
    b = _Builder(params)
    b.build()
    return PcGroup(params, b.right, b.power, b.conj)


# -- independent word collector --------------------------------------------------

def collect(G: PcGroup, letters: Iterable[int]) -> tuple[int, ...]:
    """Collect a positive word (list of generator indices) to normal form.

    Collection from the left on an exponent vector, using only the stored
    power and conjugation rules; no multiplication tables are consulted.
    """
    n = G.n
    exps = [0] * n
    rule_letters = lambda code: [j for j, e in enumerate(G.decode(code)) for _ in range(e)]
    power = {i: rule_letters(c) for i, c in G.power_rules.items()}
    conj = {k: rule_letters(c) for k, c in G.conjugation_rules.items()}
    stack = list(reversed(list(letters)))
    while stack:
        i = stack.pop()
        if any(exps[j] for j in range(i + 1, n)):
            pending = [i]
            for j in range(i + 1, n):
                pending += conj[(j, i)] * exps[j]
                exps[j] = 0
            stack.extend(reversed(pending))
            continue
        exps[i] += 1
        if exps[i] == P:
            exps[i] = 0
            stack.extend(reversed(power[i]))
    return tuple(exps)


def letters_of(exps: Sequence[int]) -> list[int]:
    return [j for j, e in enumerate(exps) for _ in range(e)]


# -- relations, maximal subgroups, two-step centralizer ----------------------

def relation_actions(G: PcGroup) -> dict[str, bool]:
    """Evaluate every defining relation as a right-regular permutation.

    If all relations act trivially on all 3^n codes, the permutation group
    generated by the tables is a quotient of the presented group acting
    regularly on 3^n points, so the presentation is consistent of order 3^n.
    """
    n, a, w, z = G.n, G.params.a, G.params.w, G.params.z
    pts = np.arange(G.order)

    def act(word):
        u = pts
        for g, k in word:
            if g >= n:
                continue  # s_k with k >= n is trivial
            table = G.right[g] if k > 0 else G.right_inv[g]
            for _ in range(abs(k)):
                u = table[u]
        return u

    def comm_word(g, h):
        return [(g, -1), (h, -1), (g, 1), (h, 1)]

    x, y, s = 0, 1, (lambda k: k)
    out = {}
    out["s2=[y,x]"] = np.array_equal(act(comm_word(y, x)), act([(s(2), 1)]))
    for i in range(3, n + 1):
        out[f"s{i}=[s{i-1},x]"] = np.array_equal(act(comm_word(s(i - 1), x)), act([(s(i), 1)]))
    if n >= 3:
        out["[y,s2]=s_{n-1}^a"] = np.array_equal(act(comm_word(y, s(2))), act([(s(n - 1), a)]))
    for i in range(3, n):
        out[f"[y,s{i}]=1"] = np.array_equal(act(comm_word(y, s(i))), pts)
    out["x^3=s_{n-1}^w"] = np.array_equal(act([(x, 3)]), act([(s(n - 1), w)] if n >= 3 else []))
    out["y^3 s2^3 s3=s_{n-1}^z"] = np.array_equal(
        act([(y, 3), (s(2), 3), (s(3), 1)]), act([(s(n - 1), z)] if n >= 3 else []))
    for i in range(2, n - 2):
        out[f"s{i}^3 s{i+1}^3 s{i+2}=1"] = np.array_equal(
            act([(s(i), 3), (s(i + 1), 3), (s(i + 2), 1)]), pts)
    for k in (n - 2, n - 1):
        if k >= 2:
            out[f"s{k}^3=1"] = np.array_equal(act([(s(k), 3)]), pts)
    return out


def maximal_subgroups(G: FiniteGroup, derived: Subgroup | None = None) -> list[Subgroup]:
    """[H_1, H_2, H_3, H_4] = <y,G'>, <x,G'>, <xy,G'>, <xy^2,G'>."""
    Gp = derived if derived is not None else derived_subgroup(G)
    x, y = G.named["x"], G.named["y"]
    tops = [y, x, G.mul(x, y), G.mul(x, G.mul(y, y))]
    return [subgroup_closure(G, [t] + Gp.generators) for t in tops]


def two_step_centralizer(G: PcGroup, literal: bool | None = None) -> Subgroup:
    """chi_2(G) = {g : [g,h] in gamma_4(G) for all h in G'}.

    ``literal`` quantifies over every h in G'; otherwise over generators of G',
    which is equivalent since h -> [g,h] gamma_4 is a homomorphism on G'.
    Default: literal while |G|*|G'| <= 3^12.
    """
    Gp = G.derived
    g4 = G.gamma(4)
    if literal is None:
        literal = G.order * Gp.order <= P**12
    hs = Gp.elements if literal else Gp.generators
    allc = np.arange(G.order)
    mask = np.ones(G.order, bool)
    for h in hs:
        mask &= g4.mask[G.comm(allc, h)]
    return Subgroup(G, mask, generating_set(G, mask))


def power_identity_checks(G: PcGroup) -> dict[str, bool]:
    """Power identities for xy and xy^2, general and specialized forms."""
    mul, pw, cm = G.mul, G.pow, G.comm
    x, y, s, a, n = G.x, G.y, G.s, G.params.a, G.n
    prod = G.product
    top = pw(s(n - 1), -a) if n >= 3 else 0
    top2 = pw(s(n - 1), -2 * a) if n >= 3 else 0
    xy, xy2 = mul(x, y), mul(x, pw(y, 2))
    # in-group commutators of the general identity
    s2 = cm(y, x)
    t3 = cm(s2, y)
    s3 = cm(s2, x)
    t4 = cm(t3, y)
    u4 = cm(s3, y)
    u5 = cm(u4, y)
    out = {}
    out["(xy)^2 = x^2 y^2 s2 t3"] = pw(xy, 2) == prod([pw(x, 2), pw(y, 2), s2, t3])
    inner = prod([s2, pw(t3, 2), t4])
    out["(xy)^3 = x^3 y^3 (s2 t3^2 t4)^2 s3 u4^2 u5 s2 t3"] = pw(xy, 3) == prod(
        [pw(x, 3), pw(y, 3), pw(inner, 2), s3, pw(u4, 2), u5, s2, t3])
    out["t4 = u4 = u5 = 1"] = t4 == u4 == u5 == 0
    out["t3 = s_{n-1}^-a"] = t3 == top
    out["(xy)^2 = x^2 y^2 s2 s_{n-1}^-a"] = pw(xy, 2) == prod([pw(x, 2), pw(y, 2), s(2), top])
    out["(xy)^3 = x^3 y^3 s2^3 s3 s_{n-1}^-2a"] = pw(xy, 3) == prod(
        [pw(x, 3), pw(y, 3), pw(s(2), 3), s(3), top2])
    out["(xy^2)^2 = x^2 y^4 s2^2 s_{n-1}^-2a"] = pw(xy2, 2) == prod(
        [pw(x, 2), pw(y, 4), pw(s(2), 2), top2])
    out["(xy^2)^3 = x^3 y^6 s2^6 s3^2 s_{n-1}^-2a"] = pw(xy2, 3) == prod(
        [pw(x, 3), pw(y, 6), pw(s(2), 6), pw(s(3), 2), top2])
    return out


def power_identities_by_collection(G: PcGroup) -> dict[str, bool]:
    """Specialized power identities for xy and xy^2, both sides collected as words."""
    n, a = G.n, G.params.a

    def word(*parts):
        out = []
        for k, e in parts:
            if k < n and (k != n - 1 or n >= 3):
                out += [k] * e
        return out

    top = (n - 1, (-2 * a) % P)
    return {
        "(xy)^3 = x^3 y^3 s2^3 s3 s_{n-1}^-2a":
            collect(G, [0, 1] * 3) == collect(G, word((0, 3), (1, 3), (2, 3), (3, 1), top)),
        "(xy^2)^3 = x^3 y^6 s2^6 s3^2 s_{n-1}^-2a":
            collect(G, [0, 1, 1] * 3) == collect(G, word((0, 3), (1, 6), (2, 6), (3, 2), top)),
    }
