"""Finite groups given by right-multiplication tables on integer element codes.

Every element is an integer code in ``range(order)``; code 0 is the identity.
A group stores, for each generator ``g_i``, the permutation ``u -> u * g_i``
together with a normal word (exponent vector over the generators) for every
element.  Products ``u * v`` are evaluated by walking the word of ``v`` through
the tables, which vectorizes over numpy arrays of codes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import ConsistencyError, ContractError


@dataclass(frozen=True, order=True)
class AbelianInvariants:
    """Invariant factors of a finite abelian 3-group, largest first."""

    factors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(sorted(self.factors, reverse=True)))

    @property
    def order(self) -> int:
        return int(np.prod(self.factors, dtype=object)) if self.factors else 1

    @property
    def rank(self) -> int:
        return len(self.factors)

    def log(self, p: int = 3) -> tuple[int, ...]:
        out = []
        for f in self.factors:
            k = 0
            while f > 1:
                f //= p
                k += 1
            out.append(k)
        return tuple(out)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "(" + ",".join(map(str, self.factors)) + ")"

    @classmethod
    def from_omega_counts(cls, p: int, counts: Sequence[int]) -> "AbelianInvariants":
        """Invariants from ``counts[k] = #{a : a^(p^k) = 1}``, k = 0, 1, ...

        The number of cyclic factors of order at least ``p^k`` is
        ``log_p(counts[k] / counts[k-1])``.
        """
        logs = []
        for c in counts:
            k, m = 0, int(c)
            while m % p == 0:
                m //= p
                k += 1
            if m != 1:
                raise ConsistencyError(f"subgroup count {c} is not a power of {p}")
            logs.append(k)
        ge = [logs[k] - logs[k - 1] for k in range(1, len(logs))]
        if any(ge[k] < ge[k + 1] for k in range(len(ge) - 1)):
            raise ConsistencyError(f"omega counts {counts} are not those of an abelian group")
        factors = []
        for k, r in enumerate(ge, start=1):
            nxt = ge[k] if k < len(ge) else 0
            factors += [p**k] * (r - nxt)
        return cls(tuple(factors))


class FiniteGroup:
    """A finite group on codes ``0..order-1`` with generator tables.

    ``right[i]`` is the permutation ``u -> u * g_i``; ``words[u]`` gives
    exponents ``e`` with ``u = g_0^e_0 * g_1^e_1 * ...``.
    """

    def __init__(self, right: np.ndarray, words: np.ndarray, gen_names: Sequence[str],
                 named: dict[str, int] | None = None):
        self.right = np.ascontiguousarray(right, dtype=np.int64)
        self.words = np.ascontiguousarray(words, dtype=np.int64)
        self.gen_names = list(gen_names)
        self.order = self.right.shape[1]
        self.ngens = self.right.shape[0]
        self.right_inv = np.empty_like(self.right)
        idx = np.arange(self.order)
        for i in range(self.ngens):
            self.right_inv[i, self.right[i]] = idx
        self.named = dict(named or {})
        self._max_exp = self.words.max(axis=0) if self.order > 1 else np.zeros(self.ngens, int)

    # -- element arithmetic -------------------------------------------------
    def mul(self, u, v):
        """Elementwise product of codes (scalars or broadcastable arrays)."""
        u = np.array(u, dtype=np.int64, copy=True)
        v = np.asarray(v, dtype=np.int64)
        u, v = np.broadcast_arrays(u, v)
        u = u.copy()
        w = self.words[v]
        for i in range(self.ngens):
            for r in range(int(self._max_exp[i])):
                m = w[..., i] > r
                if m.any():
                    u[m] = self.right[i][u[m]]
        return u if u.ndim else int(u)

    def inv(self, u):
        u = np.asarray(u, dtype=np.int64)
        out = np.zeros_like(u)
        w = self.words[u]
        for i in reversed(range(self.ngens)):
            for r in range(int(self._max_exp[i])):
                m = w[..., i] > r
                if m.any():
                    out[m] = self.right_inv[i][out[m]]
        return out if out.ndim else int(out)

    def pow(self, u, k: int):
        u = np.asarray(u, dtype=np.int64)
        if k < 0:
            u, k = self.inv(u), -k
        result = np.zeros_like(u)
        base = u
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        result = np.asarray(result)
        return result if result.ndim else int(result)

    def comm(self, u, v):
        """Commutator ``[u, v] = u^-1 v^-1 u v``."""
        return self.mul(self.mul(self.inv(u), self.inv(v)), self.mul(u, v))

    def conj(self, u, v):
        """``u^v = v^-1 u v``."""
        return self.mul(self.mul(self.inv(v), u), v)

    def product(self, codes: Iterable[int]) -> int:
        acc = 0
        for c in codes:
            acc = self.mul(acc, c)
        return acc

    def generator(self, i: int) -> int:
        return int(self.right[i][0])

    @cached_property
    def generators(self) -> list[int]:
        return [self.generator(i) for i in range(self.ngens)]

    @cached_property
    def all(self) -> "Subgroup":
        return Subgroup(self, np.ones(self.order, bool), list(self.generators))

    @cached_property
    def trivial(self) -> "Subgroup":
        m = np.zeros(self.order, bool)
        m[0] = True
        return Subgroup(self, m, [])


@dataclass(eq=False)
class Subgroup:
    """Element set of a subgroup (boolean mask over the ambient codes)."""

    group: FiniteGroup
    mask: np.ndarray
    generators: list[int] = field(default_factory=list)

    @cached_property
    def elements(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    @property
    def order(self) -> int:
        return int(self.mask.sum())

    @property
    def parent_order(self) -> int:
        return self.group.order

    def __contains__(self, u) -> bool:
        return bool(self.mask[int(u)])

    def contains(self, codes) -> np.ndarray:
        return self.mask[np.asarray(codes, dtype=np.int64)]

    def __le__(self, other: "Subgroup") -> bool:
        return not np.any(self.mask & ~other.mask)

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and np.array_equal(self.mask, other.mask)

    def __hash__(self):
        return hash(self.elements.tobytes())

    def is_abelian(self) -> bool:
        g = self.group
        gens = self.generators
        return all(g.comm(a, b) == 0 for i, a in enumerate(gens) for b in gens[i + 1:])

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, gens={self.generators})"


def subgroup_closure(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``gens`` (orbit of 1 under right multiplication)."""
    gens = [int(g) for g in gens if int(g) != 0]
    mask = np.zeros(G.order, bool)
    mask[0] = True
    frontier = np.array([0], dtype=np.int64)
    while frontier.size:
        new = []
        for g in gens:
            prod = G.mul(frontier, g)
            prod = prod[~mask[prod]]
            if prod.size:
                prod = np.unique(prod)
                mask[prod] = True
                new.append(prod)
        frontier = np.concatenate(new) if new else np.empty(0, np.int64)
    return Subgroup(G, mask, gens)


def generating_set(G: FiniteGroup, mask: np.ndarray) -> list[int]:
    """Greedy generators for the subgroup with element mask ``mask``."""
    gens: list[int] = []
    H = G.trivial
    for c in np.flatnonzero(mask):
        if not H.mask[c]:
            gens.append(int(c))
            H = subgroup_closure(G, gens)
            if H.order == int(mask.sum()):
                break
    return gens


def normal_closure(G: FiniteGroup, gens: Iterable[int], within: Subgroup | None = None) -> Subgroup:
    """Smallest subgroup containing ``gens`` normalized by ``within`` (default: G)."""
    conj_by = (within or G.all).generators
    gens = list(dict.fromkeys(int(g) for g in gens if int(g) != 0))
    while True:
        H = subgroup_closure(G, gens)
        extra = []
        for h in gens:
            for s in conj_by:
                c = G.conj(h, s)
                if not H.mask[c] and c not in extra:
                    extra.append(c)
        if not extra:
            return H
        gens += extra


def commutator_subgroup(G: FiniteGroup, A: Subgroup, B: Subgroup) -> Subgroup:
    """``[A, B]`` for A, B normalized by B (normal closure of generator commutators)."""
    comms = {G.comm(a, b) for a in A.generators for b in B.generators}
    within = B if B.order >= A.order else A
    return normal_closure(G, sorted(comms), within=within)


def derived_subgroup(G: FiniteGroup, S: Subgroup | None = None) -> Subgroup:
    S = S or G.all
    gens = S.generators
    comms = sorted({G.comm(a, b) for i, a in enumerate(gens) for b in gens[i + 1:]})
    return normal_closure(G, comms, within=S)


def lower_central_series(G: FiniteGroup) -> list[Subgroup]:
    """``[gamma_1, gamma_2, ...]`` ending with the first trivial term."""
    series = [G.all]
    while series[-1].order > 1:
        nxt = commutator_subgroup(G, series[-1], G.all)
        if nxt.order == series[-1].order:
            break  # not nilpotent; cannot happen for p-groups
        series.append(nxt)
    return series


def center(G: FiniteGroup) -> Subgroup:
    allc = np.arange(G.order)
    mask = np.ones(G.order, bool)
    for g in G.generators:
        mask &= G.mul(allc, g) == G.mul(g, allc)
    elems = np.flatnonzero(mask)
    return Subgroup(G, mask, [int(e) for e in elems if e])


def right_coset_labels(G: FiniteGroup, S: Subgroup, T: Subgroup,
                       transversal: Sequence[int]) -> np.ndarray:
    """Label ``k`` on each element of ``T * transversal[k]``; -1 elsewhere."""
    lab = np.full(G.order, -1, dtype=np.int64)
    for k, r in enumerate(transversal):
        coset = G.mul(T.elements, r)
        if np.any(lab[coset] >= 0):
            raise ContractError("transversal elements lie in a common right coset")
        lab[coset] = k
    if np.any(lab[S.elements] < 0) or np.any(lab[~S.mask] >= 0):
        raise ContractError("transversal does not cover S")
    return lab


@dataclass
class CosetSpace:
    """Cosets ``s N`` of a normal subgroup N of S, with canonical (minimal) reps."""

    group: FiniteGroup
    S: Subgroup
    N: Subgroup
    label: np.ndarray  # element code -> coset index, -1 outside S
    reps: np.ndarray   # coset index -> minimal element code

    def __len__(self) -> int:
        return len(self.reps)

    def canon(self, codes):
        """Canonical representative of the coset of each code."""
        return self.reps[self.label[np.asarray(codes, dtype=np.int64)]]


def coset_space(G: FiniteGroup, S: Subgroup, N: Subgroup) -> CosetSpace:
    if not N <= S:
        raise ContractError("N is not contained in S")
    ncos = S.order // N.order
    Se = S.elements
    if N.order <= ncos:
        # canonical rep = min over the coset, computed by sweeping N
        best = Se.copy()
        for h in N.elements[1:]:
            best = np.minimum(best, G.mul(Se, h))
        reps, inv = np.unique(best, return_inverse=True)
        label = np.full(G.order, -1, dtype=np.int64)
        label[Se] = inv
    else:
        label = np.full(G.order, -1, dtype=np.int64)
        reps = []
        for s in Se:
            if label[s] >= 0:
                continue
            coset = G.mul(s, N.elements)
            label[coset] = len(reps)
            reps.append(int(coset.min()))
        reps = np.array(reps, dtype=np.int64)
        order = np.argsort(reps)
        rank = np.empty_like(order)
        rank[order] = np.arange(len(order))
        label[Se] = rank[label[Se]]
        reps = reps[order]
    if len(reps) != ncos:
        raise ContractError("N is not normal in S (coset sizes disagree)")
    return CosetSpace(G, S, N, label, reps)


def is_normal(G: FiniteGroup, N: Subgroup, S: Subgroup) -> bool:
    return all(N.mask[G.conj(n, s)] for n in N.generators for s in S.generators)


def abelian_quotient_invariants(G: FiniteGroup, S: Subgroup, N: Subgroup) -> AbelianInvariants:
    """Invariant factors of the abelian quotient S/N (a 3-group here)."""
    if not N <= S:
        raise ContractError("N is not a subgroup of S")
    if not is_normal(G, N, S):
        raise ContractError("N is not normal in S")
    gens = S.generators
    if any(not N.mask[G.comm(a, b)] for i, a in enumerate(gens) for b in gens[i + 1:]):
        raise ContractError("S/N is not abelian")
    cs = coset_space(G, S, N)
    return quotient_invariants(G, cs)


def quotient_invariants(G: FiniteGroup, cs: CosetSpace, p: int = 3) -> AbelianInvariants:
    """Invariants of an abelian coset space via counts of p^k-torsion."""
    reps = cs.reps
    # log_p of the order of each coset
    cur = reps.copy()
    logord = np.zeros(len(reps), dtype=np.int64)
    alive = ~cs.N.mask[cur]
    while alive.any():
        logord[alive] += 1
        cur[alive] = G.pow(cur[alive], p)
        alive = ~cs.N.mask[cur]
    counts = [int(np.sum(logord <= k)) for k in range(int(logord.max()) + 1)]
    return AbelianInvariants.from_omega_counts(p, counts)


def quotient_group(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, CosetSpace]:
    """The factor group G/N on coset indices, with generators the images of G's."""
    cs = coset_space(G, G.all, N)
    right = cs.label[G.right[:, cs.reps]]
    words = G.words[cs.reps]
    named = {k: int(cs.label[v]) for k, v in G.named.items()}
    return FiniteGroup(right, words, G.gen_names, named), cs
