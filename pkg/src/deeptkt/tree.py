"""The coclass-1 tree rooted at <9,2> = C_3 x C_3 with its vertex annotations."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .errors import ParameterError
from .finite import quotient_group
from .pcgroup import GroupParams, admissible_params, build_group
from .symbolic import symbolic_pattern
from .transfer import artin_pattern


@lru_cache(maxsize=None)
def _label_data() -> dict:
    with resources.files("deeptkt.data").joinpath("tree_labels.json").open() as fh:
        return json.load(fh)


def _key(d: dict) -> GroupParams:
    return GroupParams(a=d["a"], n=d["n"], w=d["w"], z=d["z"])


def smallgroups_label(p: GroupParams) -> tuple[int, int] | None:
    for row in _label_data()["smallgroups"]:
        if _key(row) == p:
            return row["order"], row["index"]
    return None


def minimal_discriminant(p: GroupParams) -> int | None:
    for row in _label_data()["minimal_discriminants"]:
        if _key(row) == p:
            return row["md"]
    return None


def parent(p: GroupParams) -> GroupParams:
    """Last lower central quotient G/gamma_{n-1}(G): always the mainline vertex one level up."""
    p.validate()
    if p.n < 3:
        raise ParameterError(f"{p} is the root and has no parent")
    return GroupParams(a=0, n=p.n - 1, w=0, z=0)


def quotient_pattern(p: GroupParams):
    """Artin pattern of G/gamma_{n-1}(G), computed on the enumerated quotient."""
    G = build_group(p)
    Q, _ = quotient_group(G, G.gamma(G.n - 1))
    return artin_pattern(Q)


def parenthood_holds(p: GroupParams) -> bool:
    return quotient_pattern(p) == artin_pattern(build_group(parent(p)))


@dataclass
class TreeVertex:
    params: GroupParams
    type_label: str
    kappa_s: tuple[int, ...]
    kappa_d: tuple[int, ...]
    smallgroups_id: tuple[int, int] | None = None
    minimal_discriminant: int | None = None

    @property
    def order_log(self) -> int:
        return self.params.n

    @property
    def mainline(self) -> bool:
        return self.params.mainline

    @property
    def abelian_maximal_subgroup(self) -> bool:
        return self.params.a == 0

    def as_dict(self) -> dict:
        return {
            "id": str(self.params),
            "a": self.params.a, "n": self.params.n, "w": self.params.w, "z": self.params.z,
            "type": self.type_label,
            "kappa_s": list(self.kappa_s),
            "kappa_d": list(self.kappa_d),
            "smallgroups": list(self.smallgroups_id) if self.smallgroups_id else None,
            "minimal_discriminant": self.minimal_discriminant,
            "mainline": self.mainline,
        }


@dataclass
class CoclassTree:
    root: TreeVertex
    levels: dict[int, list[TreeVertex]] = field(default_factory=dict)
    edges: list[tuple[GroupParams, GroupParams]] = field(default_factory=list)

    @property
    def vertices(self) -> list[TreeVertex]:
        return [v for n in sorted(self.levels) for v in self.levels[n]]

    def vertex(self, p: GroupParams) -> TreeVertex:
        return next(v for v in self.levels.get(p.n, []) if v.params == p)

    def parent_of(self, p: GroupParams) -> GroupParams | None:
        return next((par for ch, par in self.edges if ch == p), None)

    def to_json(self) -> str:
        doc = {
            "annotations": _label_data()["annotations"],
            "vertices": [v.as_dict() for v in self.vertices],
            "edges": [{"child": str(c), "parent": str(p)} for c, p in self.edges],
        }
        return json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=False)

    def to_dot(self) -> str:
        lines = ["digraph coclass_tree {", "  rankdir=TB;", "  node [shape=box];"]
        for v in self.vertices:
            kd = ",".join(map(str, v.kappa_d))
            label = f"{v.params}\\n{v.type_label}\\n({kd})"
            if v.smallgroups_id:
                label += f"\\n<{v.smallgroups_id[0]},{v.smallgroups_id[1]}>"
            if v.minimal_discriminant:
                label += f"\\nMD {v.minimal_discriminant}"
            style = ', style=bold' if v.mainline else ""
            lines.append(f'  "{v.params}" [label="{label}"{style}];')
        for c, p in self.edges:
            lines.append(f'  "{c}" -> "{p}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _vertex(p: GroupParams) -> TreeVertex:
    sp = symbolic_pattern(p)
    return TreeVertex(p, sp.type_label, sp.kappa_s, sp.kappa_d_orders,
                      smallgroups_label(p), minimal_discriminant(p))


def build_tree(n_max: int) -> CoclassTree:
    if n_max < 2:
        raise ParameterError("n_max must be at least 2")
    params = admissible_params(n_max)
    tree = CoclassTree(root=_vertex(params[0]))
    for p in params:
        tree.levels.setdefault(p.n, []).append(_vertex(p))
        if p.n >= 3:
            tree.edges.append((p, parent(p)))
    return tree
