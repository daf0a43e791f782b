"""Artin transfers evaluated from coset transversals, and their kernel types.

The transfer of ``g`` from S to T (index 3) is the product of the elements
``r g r'^-1`` over a right transversal, with ``T r' = T r g``, read modulo T'.
Nothing here uses the closed-form formulas of ``symbolic``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ConsistencyError, ContractError
from .finite import (AbelianInvariants, CosetSpace, FiniteGroup, Subgroup, coset_space,
                     derived_subgroup, quotient_invariants, right_coset_labels,
                     subgroup_closure)
from .pcgroup import GroupParams, PcGroup, admissible_params, build_group, maximal_subgroups
from .symbolic import ArtinPattern, symbolic_pattern


@dataclass
class TransferMap:
    source: Subgroup
    target: Subgroup
    transversal: list[int]
    derived_of_source: Subgroup
    derived_of_target: Subgroup
    source_cosets: CosetSpace
    target_cosets: CosetSpace
    images: np.ndarray  # canonical T/T' rep of the image of each S/S' rep

    @property
    def mapping(self) -> dict[int, int]:
        return dict(zip(self.source_cosets.reps.tolist(), self.images.tolist()))

    def __call__(self, codes):
        return transfer_values(self.source.group, self, codes)

    def kernel(self) -> Subgroup:
        G = self.source.group
        ids = np.flatnonzero(self.images == 0)
        mask = np.isin(self.source_cosets.label, ids) & self.source.mask
        gens = self.derived_of_source.generators + [int(r) for r in self.source_cosets.reps[ids] if r]
        return Subgroup(G, mask, gens)


def default_transversal(G: FiniteGroup, S: Subgroup, T: Subgroup) -> list[int]:
    """{1, t, t^2} with t the first generator of S outside T."""
    t = next((g for g in S.generators if not T.mask[g]), None)
    if t is None:
        raise ContractError("T is not a proper subgroup of S")
    return [0, t, G.mul(t, t)]


def transfer_values(G: FiniteGroup, tm: TransferMap, codes) -> np.ndarray:
    """Canonical T/T' representatives of the transfer of each code in S."""
    codes = np.asarray(codes, dtype=np.int64)
    R = tm.transversal
    lab = right_coset_labels(G, tm.source, tm.target, R)
    Rinv = np.array([G.inv(r) for r in R], dtype=np.int64)
    acc = np.zeros_like(codes)
    for r in R:
        rg = G.mul(r, codes)
        j = lab[rg]
        acc = G.mul(acc, G.mul(rg, Rinv[j]))
    return tm.target_cosets.canon(acc)


def artin_transfer(G: FiniteGroup, S: Subgroup, T: Subgroup, transversal: Sequence[int] | None = None,
                   S_derived: Subgroup | None = None, T_derived: Subgroup | None = None) -> TransferMap:
    if not T <= S:
        raise ContractError("target is not contained in source")
    if S.order != 3 * T.order:
        raise ContractError(f"index (S:T) = {S.order / T.order:g}, expected 3")
    R = list(default_transversal(G, S, T) if transversal is None else transversal)
    if len(R) != 3:
        raise ContractError("transversal needs three elements")
    S_derived = S_derived if S_derived is not None else derived_subgroup(G, S)
    T_derived = T_derived if T_derived is not None else derived_subgroup(G, T)
    src = coset_space(G, S, S_derived)
    tgt = coset_space(G, T, T_derived)
    tm = TransferMap(S, T, R, S_derived, T_derived, src, tgt, np.empty(0, np.int64))
    tm.images = transfer_values(G, tm, src.reps)
    return tm


def random_transversal(G: FiniteGroup, S: Subgroup, T: Subgroup, rng: np.random.Generator) -> list[int]:
    base = default_transversal(G, S, T)
    return [G.mul(int(rng.choice(T.elements)), r) for r in base]


def is_homomorphism(tm: TransferMap) -> bool:
    """Exhaustive check T(g1 g2) = T(g1) T(g2) over S/S' x S/S'."""
    G = tm.source.group
    reps = tm.source_cosets.reps
    img = dict(zip(reps.tolist(), tm.images.tolist()))
    g1, g2 = np.meshgrid(reps, reps, indexing="ij")
    prod = tm.source_cosets.canon(G.mul(g1.ravel(), g2.ravel()))
    lhs = np.array([img[int(c)] for c in prod]) if prod.size else prod
    i1, i2 = np.meshgrid(tm.images, tm.images, indexing="ij")
    rhs = tm.target_cosets.canon(G.mul(i1.ravel(), i2.ravel()))
    return bool(np.array_equal(lhs, rhs))


# -- kernel types -----------------------------------------------------------------

@dataclass
class KernelReport:
    order: int
    invariants: AbelianInvariants
    shallow_label: int | None = None
    subgroup: Subgroup | None = field(default=None, repr=False)


@dataclass
class GroupData:
    """Subgroups shared by the shallow and deep computations."""

    G: FiniteGroup
    derived: Subgroup
    maximal: list[Subgroup]
    maximal_derived: list[Subgroup]

    @classmethod
    def of(cls, G: FiniteGroup) -> "GroupData":
        Gp = derived_subgroup(G)
        H = maximal_subgroups(G, Gp)
        return cls(G, Gp, H, [derived_subgroup(G, h) for h in H])


def _kernel_report(G: FiniteGroup, tm: TransferMap) -> KernelReport:
    K = tm.kernel()
    cs = coset_space(G, K, tm.derived_of_source)
    inv = quotient_invariants(G, cs)
    if inv.order != len(cs):
        raise ConsistencyError("kernel invariants do not multiply to the kernel order")
    return KernelReport(len(cs), inv, None, K)


def shallow_tkt(G: FiniteGroup, data: GroupData | None = None) -> tuple[tuple[int, ...], list[KernelReport]]:
    d = data or GroupData.of(G)
    candidates = [G.all] + d.maximal
    kappa, reports = [], []
    for H, Hd in zip(d.maximal, d.maximal_derived):
        tm = artin_transfer(G, G.all, H, S_derived=d.derived, T_derived=Hd)
        rep = _kernel_report(G, tm)
        label = next((j for j, c in enumerate(candidates) if c == rep.subgroup), None)
        if label is None:
            raise ConsistencyError("shallow kernel equals none of G/G', H_j/G'")
        rep.shallow_label = label
        kappa.append(label)
        reports.append(rep)
    return tuple(kappa), reports


def deep_transfers(G: FiniteGroup, data: GroupData | None = None) -> list[TransferMap]:
    d = data or GroupData.of(G)
    Gpp = derived_subgroup(G, d.derived)
    return [artin_transfer(G, H, d.derived, S_derived=Hd, T_derived=Gpp)
            for H, Hd in zip(d.maximal, d.maximal_derived)]


def deep_tkt(G: FiniteGroup, data: GroupData | None = None):
    """(orders, structures, reports) of the four deep transfer kernels."""
    reports = [_kernel_report(G, tm) for tm in deep_transfers(G, data)]
    return (tuple(r.order for r in reports), tuple(r.invariants for r in reports), reports)


def transfer_targets(G: FiniteGroup, data: GroupData | None = None) -> tuple[AbelianInvariants, ...]:
    d = data or GroupData.of(G)
    return tuple(quotient_invariants(G, coset_space(G, H, Hd))
                 for H, Hd in zip(d.maximal, d.maximal_derived))


def artin_pattern(G: FiniteGroup, data: GroupData | None = None) -> ArtinPattern:
    d = data or GroupData.of(G)
    ks, _ = shallow_tkt(G, d)
    kd, kstruct, _ = deep_tkt(G, d)
    return ArtinPattern(transfer_targets(G, d), ks, kd, kstruct)


# -- verification against the case analysis ----------------------------------------

@dataclass
class VerificationRow:
    params: GroupParams
    computed: ArtinPattern
    predicted: ArtinPattern
    kernel_membership: bool

    @property
    def match(self) -> bool:
        c, p = self.computed, self.predicted
        return (c.kappa_s == p.kappa_s and c.kappa_d_orders == p.kappa_d_orders
                and c.kappa_d_structures == p.kappa_d_structures and self.kernel_membership)

    def as_dict(self) -> dict:
        c = self.computed.as_dict()
        pr = self.predicted.as_dict()
        return {
            "params": params_dict(self.params),
            "kappa_s": c["kappa_s"],
            "kappa_d_orders": c["kappa_d_orders"],
            "kappa_d_structures": c["kappa_d_structures"],
            "tau": c["tau"],
            "predicted": {k: pr[k] for k in ("kappa_s", "kappa_d_orders", "kappa_d_structures", "tau")},
            "kernel_membership": self.kernel_membership,
            "match": self.match,
        }


@dataclass
class VerificationReport:
    rows: list[VerificationRow]

    @property
    def mismatches(self) -> list[VerificationRow]:
        return [r for r in self.rows if not r.match]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def as_dict(self) -> dict:
        return {"rows": [r.as_dict() for r in self.rows], "mismatches": len(self.mismatches)}


def params_dict(p: GroupParams) -> dict:
    return {"a": p.a, "n": p.n, "w": p.w, "z": p.z}


def verify_group(G: PcGroup) -> VerificationRow:
    d = GroupData.of(G)
    computed = artin_pattern(G, d)
    pred = symbolic_pattern(G.params)
    _, _, reports = deep_tkt(G, d)
    membership = True
    for rep, words, Hd in zip(reports, pred.deep_kernel_words, d.maximal_derived):
        expect = subgroup_closure(G, [G.element(wd) for wd in words] + Hd.generators)
        membership &= expect == rep.subgroup
    return VerificationRow(G.params, computed, pred, bool(membership))


def verify_kernel_types(n_max: int) -> VerificationReport:
    return VerificationReport([verify_group(build_group(p)) for p in admissible_params(n_max)])


# alias matching the `verify theorem1` subcommand
verify_theorem1 = verify_kernel_types
