"""Graphviz DOT output for algebras, dual spaces and congruence lattices.

Nodes are emitted in index order and only Hasse (cover) edges are drawn,
so equal inputs give byte-identical text.
"""

from .algebra import LMnAlgebra
from .congruence import CongruenceLattice
from .duality import LnPSpace


def _quote(s):
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _graph(title, nodes, edges, extra=(), shape="circle"):
    lines = [f"digraph {_quote(title)} {{", "  rankdir=BT;", f"  node [shape={shape}];"]
    for k, label in enumerate(nodes):
        lines.append(f"  n{k} [label={_quote(label)}];")
    for x, y in edges:
        lines.append(f"  n{x} -> n{y} [arrowhead=none];")
    lines.extend(extra)
    lines.append("}")
    return "\n".join(lines) + "\n"


def algebra_dot(A):
    return _graph(A.name or "algebra", A.names, A.poset.covers)


def space_dot(X):
    """Order as solid Hasse edges; each ``f_i`` as dashed edges labelled ``f<i>``.

    Fixed points of ``f_i`` are omitted to keep the drawing readable.
    """
    extra = []
    for i in X.indices:
        for x in range(X.size):
            y = X.f(i, x)
            if y != x:
                extra.append(f'  n{x} -> n{y} [style=dashed, constraint=false, label="f{i}"];')
    return _graph(X.name or "space", X.names, X.poset.covers, extra)


def congruence_lattice_dot(lattice):
    A = lattice.algebra
    title = f"Con{'_theta' if lattice.mode == 'theta' else ''}({A.name or 'A'})"
    labels = [c.describe() for c in lattice]
    return _graph(title, labels, lattice.hasse(), shape="box")


def emit_dot(obj):
    """DOT text for an algebra, a dual space or a congruence lattice."""
    if isinstance(obj, LMnAlgebra):
        return algebra_dot(obj)
    if isinstance(obj, LnPSpace):
        return space_dot(obj)
    if isinstance(obj, CongruenceLattice):
        return congruence_lattice_dot(obj)
    raise TypeError(f"cannot render {type(obj).__name__} as DOT")
