"""DOT export: objects as nodes, morphisms as labelled edges, identities dashed."""

from __future__ import annotations

from .structures import Groupoid, Semigroupoid, local_identities


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: Groupoid | Semigroupoid, name: str = "G") -> str:
    """Nodes and edges in sorted order so that output is byte-stable."""
    if isinstance(g, Groupoid):
        s, idents = g.base, set(g.ident.values())
    else:
        s, idents = g, set(local_identities(g).values())
    out = [f"digraph {_quote(name)} {{"]
    out.extend(f"  {_quote(x)};" for x in s.objects)
    for f in s.morphisms:
        style = ", style=dashed" if f in idents else ""
        out.append(f"  {_quote(s.src[f])} -> {_quote(s.tgt[f])} [label={_quote(f)}{style}];")
    out.append("}")
    return "\n".join(out) + "\n"
