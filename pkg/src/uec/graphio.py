"""Plain-text graph documents.

Format::

    graph <name> nodes=<n>
    a -> b        # one directed edge per line
    c -- d        # one undirected edge per line

Node tokens are arbitrary non-whitespace labels, mapped to dense ids in
first-appearance order; nodes beyond the labeled ones are anonymous isolated
nodes implied by the header count.  ``#`` starts a comment line.  Canonical
emission sorts directed lines by (tail, head) label and undirected lines by
(min, max) label, so parse followed by emit is byte-identical on canonical
documents.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GraphParseError, InputError
from .graphs import ChainGraph, Dag, UndirectedGraph


@dataclass(frozen=True)
class GraphDocument:
    """A parsed or constructed graph file: labels plus id-space edges."""

    name: str
    node_count: int
    labels: tuple[str, ...]
    directed: tuple[tuple[int, int], ...]
    undirected: tuple[tuple[int, int], ...]

    def label_of(self, v: int) -> str:
        if v < len(self.labels):
            return self.labels[v]
        return str(v)

    def id_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InputError(f"unknown node label {label!r}") from None

    def to_dag(self) -> Dag:
        if self.undirected:
            raise InputError("document contains undirected edges; expected a DAG")
        return Dag(self.node_count, self.directed)

    def to_undirected(self) -> UndirectedGraph:
        if self.directed:
            raise InputError("document contains directed edges; expected an undirected graph")
        return UndirectedGraph(self.node_count, self.undirected)

    def to_chain_graph(self) -> ChainGraph:
        return ChainGraph(self.node_count, self.directed, self.undirected)


def parse_document(text: str) -> GraphDocument:
    """Parse one graph document; raises :class:`GraphParseError` with the
    offending line number."""
    name = None
    node_count = 0
    labels: list[str] = []
    index: dict[str, int] = {}
    directed: list[tuple[int, int]] = []
    undirected: list[tuple[int, int]] = []
    seen_pairs: set[frozenset[int]] = set()

    def resolve(token: str, lineno: int) -> int:
        if token not in index:
            if len(labels) >= node_count:
                raise GraphParseError(
                    f"label {token!r} exceeds the declared {node_count} node(s)", lineno
                )
            index[token] = len(labels)
            labels.append(token)
        return index[token]

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if name is None:
            if len(parts) != 3 or parts[0] != "graph" or not parts[2].startswith("nodes="):

                raise GraphParseError("expected header 'graph <name> nodes=<n>'", lineno)
            name = parts[1]
            try:
                node_count = int(parts[2][len("nodes=") :])
            except ValueError:
                raise GraphParseError("node count is not an integer", lineno) from None
            if node_count < 1:
                raise GraphParseError("node count must be positive", lineno)
            continue
        if len(parts) != 3 or parts[1] not in ("->", "--"):
            raise GraphParseError("expected '<node> -> <node>' or '<node> -- <node>'", lineno)
        a, marker, b = parts
        if a == b:
            raise GraphParseError(f"self-loop on {a!r}", lineno)
        va, vb = resolve(a, lineno), resolve(b, lineno)
        pair = frozenset((va, vb))
        if pair in seen_pairs:
            raise GraphParseError(f"pair {a!r}, {b!r} already declared", lineno)
        seen_pairs.add(pair)
        if marker == "->":
            directed.append((va, vb))
        else:
            undirected.append((min(va, vb), max(va, vb)))
    if name is None:
        raise GraphParseError("empty document; expected 'graph <name> nodes=<n>'", 1)
    return GraphDocument(name, node_count, tuple(labels), tuple(directed), tuple(undirected))


def emit_document(doc: GraphDocument) -> str:
    """Serialize canonically: header, then directed edges sorted by
    (tail, head) label, then undirected edges by (min, max) label."""
    lines = [f"graph {doc.name} nodes={doc.node_count}"]
    directed = sorted(
        ((doc.label_of(v), doc.label_of(w)) for v, w in doc.directed),
    )
    undirected = sorted(
        tuple(sorted((doc.label_of(v), doc.label_of(w)))) for v, w in doc.undirected
    )
    lines.extend(f"{a} -> {b}" for a, b in directed)
    lines.extend(f"{a} -- {b}" for a, b in undirected)
    return "".join(line + "\n" for line in lines)


def _default_labels(n: int, labels=None) -> tuple[str, ...]:
    if labels is None:
        return tuple(str(i) for i in range(n))
    labels = tuple(labels)
    if len(labels) != n or len(set(labels)) != n:
        raise InputError("labels must be distinct and cover every node")
    return labels


def from_dag(g: Dag, name: str = "g", labels=None) -> GraphDocument:
    return GraphDocument(
        name, g.node_count, _default_labels(g.node_count, labels), tuple(sorted(g.edges)), ()
    )


def from_undirected(u: UndirectedGraph, name: str = "g", labels=None) -> GraphDocument:
    return GraphDocument(
        name, u.node_count, _default_labels(u.node_count, labels), (), tuple(sorted(u.edges))
    )


def from_chain_graph(g: ChainGraph, name: str = "g", labels=None) -> GraphDocument:
    return GraphDocument(
        name,
        g.node_count,
        _default_labels(g.node_count, labels),
        tuple(sorted(g.directed_edges)),
        tuple(sorted(g.undirected_edges)),
    )


def emit_dot(doc: GraphDocument) -> str:
    """Render as DOT for external tools; output-only, never parsed back."""
    out = [f'digraph "{doc.name}" {{']
    mentioned = set()
    for v, w in sorted(doc.directed):
        out.append(f'  "{doc.label_of(v)}" -> "{doc.label_of(w)}";')
        mentioned.update((v, w))
    for v, w in sorted(doc.undirected):
        out.append(f'  "{doc.label_of(v)}" -> "{doc.label_of(w)}" [dir=none];')
        mentioned.update((v, w))
    for v in range(doc.node_count):
        if v not in mentioned:
            out.append(f'  "{doc.label_of(v)}";')
    out.append("}")
    return "".join(line + "\n" for line in out)
