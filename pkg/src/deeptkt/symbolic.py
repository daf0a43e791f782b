"""Closed-form Artin pattern of G_a^n(z,w) by case analysis (no group computation).

Kernel orders and sTKT come from the classification by (a, n, w, z); kernel
structures and kernel generators follow the per-subgroup case analyses of the
deep transfers T_i : H_i/H_i' -> G'.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .errors import IdentificationError, ParameterError
from .finite import AbelianInvariants
from .pcgroup import GroupParams


@dataclass(frozen=True)
class ArtinPattern:
    tau: tuple[AbelianInvariants, ...]
    kappa_s: tuple[int, ...]
    kappa_d_orders: tuple[int, ...]
    kappa_d_structures: tuple[AbelianInvariants, ...]

    def as_dict(self) -> dict:
        return {
            "tau": [list(t.factors) for t in self.tau],
            "kappa_s": list(self.kappa_s),
            "kappa_d_orders": list(self.kappa_d_orders),
            "kappa_d_structures": [list(k.factors) for k in self.kappa_d_structures],
        }


@dataclass(frozen=True)
class PredictedPattern(ArtinPattern):
    params: GroupParams | None = None
    type_label: str = ""
    # generators (besides H_i') of each predicted deep kernel, as words
    deep_kernel_words: tuple[tuple[str, ...], ...] = ()


def kernel_type_row(p: GroupParams) -> tuple[str, tuple[int, ...], tuple[int, ...]]:
    """(type, kappa_s, kappa_d orders) for admissible parameters."""
    p.validate()
    a, n, w, z = p.a, p.n, p.w, p.z
    if a == 0 and (z, w) == (0, 0):
        return "a.1*", (0, 0, 0, 0), (3, 3, 3, 3) if n == 2 else (9, 9, 9, 9)
    if a == 1:
        return "a.1", (0, 0, 0, 0), {0: (3, 9, 3, 3), -1: (3, 3, 9, 9), 1: (3, 3, 3, 3)}[w]
    if (z, w) == (0, 1):
        if n == 3:
            return "A.1", (1, 1, 1, 1), (9, 3, 3, 3)
        return "a.2", (1, 0, 0, 0), (9, 3, 3, 3)
    if (z, w) == (1, 0) and n == 4:
        return "a.3*", (2, 0, 0, 0), (27, 9, 3, 3)
    if (z, w) in ((1, 0), (-1, 0)):
        return "a.3", (2, 0, 0, 0), (9, 9, 3, 3)
    raise ParameterError(f"{p} is covered by no kernel-type case")


def _cyc(*logs: int) -> AbelianInvariants:
    return AbelianInvariants(tuple(3**k for k in logs if k > 0))


def predicted_tau(p: GroupParams) -> tuple[AbelianInvariants, ...]:
    a, n, w, z = p.a, p.n, p.w, p.z
    if n == 2:
        return (_cyc(1),) * 4
    if a == 0 and n == 4 and z == 1:
        first = _cyc(1, 1, 1)
    else:
        m = n - 1 - a  # log order of H_1/H_1'
        first = _cyc((m + 1) // 2, m // 2)
    if n == 3 and w != 0:
        # x^3, (xy)^3, (xy^2)^3 equal s_2^w, s_2^(w+z), s_2^(w+2z): cyclic of order 9
        return (first, _cyc(2), _cyc(2), _cyc(2))
    return (first,) + (_cyc(1, 1),) * 3


def deep_kernels(p: GroupParams) -> tuple[tuple[AbelianInvariants, tuple[str, ...]], ...]:
    """Structure and generating words of ker(T_{H_i,G'}) for i = 1..4."""
    a, n, w, z = p.a, p.n, p.w, p.z
    derived = tuple(f"s{k}" for k in range(2, n))
    if n == 2:
        return tuple((_cyc(1), (t,)) for t in ("y", "x", "x*y", "x*y^2"))
    # T_1 on H_1 = <y, G'>
    if n == 3:
        k1 = (_cyc(1, 1), ("y",) + derived)
    elif n == 4 and z == 1:
        k1 = (_cyc(1, 1, 1), ("y",) + derived)
    elif a == 0:
        k1 = (_cyc(1, 1), (f"s{n-2}", f"s{n-1}"))
    else:
        k1 = (_cyc(1), (f"s{n-2}", f"s{n-1}"))
    # T_2 on H_2 = <x, G'>
    k2 = (_cyc(1, 1), ("x",) + derived) if w == 0 else (_cyc(1), derived)
    # T_3, T_4 on <xy, G'>, <xy^2, G'>
    full = (a == 0 and w == 0 and z == 0) or (a == 1 and w == -1)
    k3 = (_cyc(1, 1), ("x*y",) + derived) if full else (_cyc(1), derived)
    k4 = (_cyc(1, 1), ("x*y^2",) + derived) if full else (_cyc(1), derived)
    return (k1, k2, k3, k4)


def symbolic_pattern(p: GroupParams) -> PredictedPattern:
    label, ks, kd = kernel_type_row(p)
    kernels = deep_kernels(p)
    return PredictedPattern(
        tau=predicted_tau(p),
        kappa_s=ks,
        kappa_d_orders=kd,
        kappa_d_structures=tuple(k for k, _ in kernels),
        params=p,
        type_label=label,
        deep_kernel_words=tuple(wds for _, wds in kernels),
    )


# -- tower-group identification ---------------------------------------------------

_TOWER_PATTERNS = {(3, 9, 3, 3): 0, (3, 3, 9, 9): -1, (3, 3, 3, 3): 1}


def identify_tower_group(e: int, kappa_d: Sequence[int], comparison: str = "multiset") -> GroupParams:
    """Tower group G_1^{2(e+1)}(0,w) of an a.1 field in state e from its deep TKT.

    ``comparison="multiset"`` matches kappa_d up to permutation; ``"ordered"``
    requires the fixed H_1..H_4 order.
    """
    if e < 2:
        raise IdentificationError(f"state e={e} must be at least 2")
    kd = tuple(int(k) for k in kappa_d)
    if len(kd) != 4:
        raise IdentificationError("kappa_d needs four entries")
    if comparison == "ordered":
        w = _TOWER_PATTERNS.get(kd)
    elif comparison == "multiset":
        w = next((w for pat, w in _TOWER_PATTERNS.items() if Counter(pat) == Counter(kd)), None)
    else:
        raise ValueError(f"unknown comparison mode {comparison!r}")
    if w is None:
        raise IdentificationError(f"kappa_d={kd} matches none of (3,9,3,3), (3,3,9,9), (3,3,3,3)")
    return GroupParams(a=1, n=2 * (e + 1), w=w, z=0)
