"""Graphviz DOT output.  Edge order follows element indices, so output is stable."""

from __future__ import annotations

import json

import numpy as np

from .consistency import ConsistencyStructure
from .poset import Poset


def _q(label) -> str:
    return json.dumps(str(label))


def hasse_dot(p: Poset, name: str = "hasse") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    lines += [f"  {_q(e)};" for e in p.elements]
    for i, j in p.hasse_edges():
        lines.append(f"  {_q(p.elements[i])} -> {_q(p.elements[j])} [style=solid];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def consistency_dot(cs: ConsistencyStructure, name: str = "consistency",
                    include_bounds: bool = False) -> str:
    """Lower pairs as solid arrows, upper pairs dashed; derived pairs carry their rule."""
    e = cs.carrier.elements
    rule = {}
    for d in cs.log:
        if d.kind in ("lower", "upper"):
            rule.setdefault((d.kind, d.conclusion), d.rule)
    skip = {cs.carrier.bottom, cs.carrier.top}
    lines = [f"digraph {name} {{", "  node [shape=plaintext];"]
    lines += [f"  {_q(x)};" for i, x in enumerate(e) if include_bounds or i not in skip]
    for kind, R, style in (("lower", cs.L, "solid"), ("upper", cs.U, "dashed")):
        for i, j in np.argwhere(R):
            if not include_bounds and (i in skip or j in skip):
                continue
            attrs = [f"style={style}"]
            r = rule.get((kind, (e[i], e[j])))
            if r is not None:
                attrs.append(f"label={_q(r)}")
            lines.append(f"  {_q(e[i])} -> {_q(e[j])} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
