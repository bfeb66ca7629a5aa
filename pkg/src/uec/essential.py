"""Essential graphs (CPDAGs) and unconditional-equivalence-preserving edge
removal.

A CPDAG represents a Markov equivalence class: chain graph, chordal chain
components, no induced p -> v -- w, and every directed edge strongly
protected.  Removing an edge from a CPDAG leaves a PDAG that may complete
into several CPDAGs; the width-1 completions are exactly those whose classes
contain an unconditional-equivalence-preserving deletion of the original
edge.  This module decides removability through minimal anteriors, counts
width-1 completions in closed form, and materializes them by placing the
admissible v-structures and closing the resulting patterns.  The count and
the materialized list are bookkept against each other: a mismatch raises
instead of returning.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    BudgetError,
    InputError,
    InvalidCpdagError,
    PreconditionError,
    VerificationError,
)
from .graphs import ChainGraph, Dag, NodeSet, UndirectedGraph, _iter_bits


def is_strongly_protected(g: ChainGraph, x: int, y: int) -> bool:
    """Whether the directed edge x -> y occurs in a protecting configuration:
    a parent of x nonadjacent to y, a v-structure at y, a directed two-step
    x -> z -> y, or two nonadjacent undirected neighbors of x pointing at y.
    """
    if not g.has_directed(x, y):
        raise InputError(f"edge {x} -> {y} is absent or undirected")
    adj_x = g.adjacency_mask(x) | 1 << x
    adj_y = g.adjacency_mask(y) | 1 << y
    if g.parent_mask(x) & ~adj_y:
        return True
    if g.parent_mask(y) & ~(1 << x) & ~adj_x:
        return True
    if g.child_mask(x) & g.parent_mask(y):
        return True
    cand = g.undirected_mask(x) & g.parent_mask(y)
    for c in _iter_bits(cand):
        if cand & ~(g.adjacency_mask(c) | 1 << c):
            return True
    return False


class Cpdag(ChainGraph):
    """A chain graph validated as an essential graph.

    Construction checks, in order: chordality of the undirected part, absence
    of induced p -> v -- w, and strong protection of every directed edge.
    Violations raise :class:`InvalidCpdagError` naming the invariant.
    """

    def __init__(self, node_count, directed=(), undirected=()):
        super().__init__(node_count, directed, undirected)
        if not self.undirected_part().is_chordal():
            raise InvalidCpdagError("a chain component induces a non-chordal graph")
        for p, v in self.directed_edges:
            bad = self.undirected_mask(v) & ~(self.adjacency_mask(p) | 1 << p)
            if bad:
                w = next(_iter_bits(bad))
                raise InvalidCpdagError(
                    f"induced subgraph {p} -> {v} -- {w} (flag-free invariant)"
                )
        for x, y in self.directed_edges:
            if not is_strongly_protected(self, x, y):
                raise InvalidCpdagError(f"directed edge {x} -> {y} is not strongly protected")

    @classmethod
    def from_chain_graph(cls, g: ChainGraph) -> "Cpdag":
        if isinstance(g, cls):
            return g
        return cls(g.node_count, g.directed_edges, g.undirected_edges)


def _vstructures(g) -> frozenset[tuple[int, int, int]]:
    """V-structure triples (x, z, y), x < y, of a Dag or ChainGraph; only
    directed arms count."""
    out = set()
    for z in range(g.node_count):
        parents = list(_iter_bits(g.parent_mask(z)))
        for i, x in enumerate(parents):
            for y in parents[i + 1 :]:
                if not g.adjacent(x, y):
                    out.add((x, z, y))
    return frozenset(out)


def _close_pattern(
    node_count: int,
    skeleton: frozenset[tuple[int, int]],
    vstructs: frozenset[tuple[int, int, int]],
) -> ChainGraph:
    """Maximally orient a pattern: direct the v-structure arms, then close
    under the three orientation rules (directed-undirected chains with
    nonadjacent tails, directed two-step paths, and the kite)."""
    adj = [0] * node_count
    for v, w in skeleton:
        adj[v] |= 1 << w
        adj[w] |= 1 << v
    directed: set[tuple[int, int]] = set()
    pa = [0] * node_count
    ch = [0] * node_count

    def orient(x: int, y: int) -> None:
        if (y, x) in directed:
            raise VerificationError(
                f"pattern closure tried to orient {x} -> {y} both ways"
            )
        if (x, y) not in directed:
            directed.add((x, y))
            ch[x] |= 1 << y
            pa[y] |= 1 << x

    for x, z, y in vstructs:
        orient(x, z)
        orient(y, z)
    changed = True
    while changed:
        changed = False
        for a, b in list(directed):
            for c in _iter_bits(adj[b] & ~pa[b] & ~ch[b] & ~(adj[a] | 1 << a)):
                orient(b, c)
                changed = True
        for a in range(node_count):
            for b in _iter_bits(adj[a] & ~pa[a] & ~ch[a]):
                if ch[a] & pa[b]:
                    orient(a, b)
                    changed = True
                    continue
                cand = adj[a] & ~pa[a] & ~ch[a] & pa[b]
                for c1 in _iter_bits(cand):
                    if cand & ~(adj[c1] | 1 << c1):
                        orient(a, b)
                        changed = True
                        break
    undirected = [
        (v, w) for v, w in skeleton if (v, w) not in directed and (w, v) not in directed
    ]
    return ChainGraph(node_count, directed, undirected)


def cpdag_of(g: Dag) -> Cpdag:
    """Essential graph of the Markov equivalence class of ``g``:
    the skeleton with the v-structure arms directed and the orientation rules
    closed.  Two DAGs map to equal results exactly when they share skeleton
    and v-structures."""
    skeleton = frozenset((min(v, w), max(v, w)) for v, w in g.edges)
    closed = _close_pattern(g.node_count, skeleton, _vstructures(g))
    return Cpdag(closed.node_count, closed.directed_edges, closed.undirected_edges)


def _component_orientations(g: ChainGraph, comp: int, budget: int) -> list[frozenset[tuple[int, int]]]:
    """All v-structure-free acyclic orientations of one chain component,
    enumerated as max-cardinality-search visit orders with every tie branch
    explored, deduplicated by arc set."""
    nodes = list(_iter_bits(comp))
    if len(nodes) == 1:
        return [frozenset()]
    results: set[frozenset[tuple[int, int]]] = set()
    und = {v: g.undirected_mask(v) & comp for v in nodes}

    def visit(order: list[int], visited: int, weights: dict[int, int]) -> None:
        if len(order) == len(nodes):
            pos = {v: i for i, v in enumerate(order)}
            arcs = frozenset(
                (v, w) if pos[v] < pos[w] else (w, v)
                for v, w in g.undirected_edges
                if comp >> v & 1 and comp >> w & 1
            )
            results.add(arcs)
            if len(results) > budget:
                raise BudgetError("chain-component orientation count exceeds budget")
            return
        best = max(weights[v] for v in nodes if not visited >> v & 1)
        for v in nodes:
            if visited >> v & 1 or weights[v] != best:
                continue
            nxt = dict(weights)
            for u in _iter_bits(und[v] & ~visited & ~(1 << v)):
                nxt[u] += 1
            order.append(v)
            visit(order, visited | 1 << v, nxt)
            order.pop()

    visit([], 0, {v: 0 for v in nodes})
    return sorted(results, key=sorted)


def mec_members(g: ChainGraph, max_members: int = 100_000) -> tuple[Dag, ...]:
    """All DAGs in the Markov equivalence class of the essential graph ``g``.

    Each chordal chain component is oriented along every max-cardinality
    search order (all tie branches), the distinct component orientations are
    combined, and the fixed directed edges are added.  Members are returned
    in a deterministic order.
    """
    g = Cpdag.from_chain_graph(g)
    per_component = [
        _component_orientations(g, comp.mask, max_members)
        for comp in g.chain_components()
    ]
    total = 1
    for options in per_component:
        total *= len(options)
        if total > max_members:
            raise BudgetError(
                f"equivalence class holds more than {max_members} DAGs"
            )
    members = []
    for choice in itertools.product(*per_component):
        arcs = set(g.directed_edges)
        for arcset in choice:
            arcs |= arcset
        members.append(Dag(g.node_count, arcs))
    members.sort(key=lambda d: sorted(d.edges))
    return tuple(members)


def is_removable(g: ChainGraph, v: int, w: int) -> bool:
    """Whether deleting v (arrow or line) w from the essential graph ``g``
    corresponds, in some class member, to a deletion that preserves the
    unconditional dependence graph.

    Decided through minimal anteriors of the edge-deleted graph: removable
    iff mt(v) is contained in mt(w) there.
    """
    g = Cpdag.from_chain_graph(g)
    if not (g.has_directed(v, w) or g.has_undirected(v, w)):
        raise InputError(f"no edge {v} -> {w} or {v} -- {w} present")
    h = g.remove_edge(v, w)
    return h.minimal_anterior_mask(v) & ~h.minimal_anterior_mask(w) == 0


@dataclass(frozen=True)
class ProtectorMatch:
    """One induced-subgraph occurrence of a protecting configuration.

    ``config`` is the configuration number (1-4) and ``protected`` the set of
    arrows that occurrence strongly protects.
    """

    config: int
    protected: frozenset[tuple[int, int]]


def protectors(g: ChainGraph, v: int, w: int) -> tuple[ProtectorMatch, ...]:
    """All protector configurations the directed edge v -> w occurs in.

    Configurations, matched as induced subgraphs: (1) v -> w -> a with v, a
    nonadjacent protects w -> a; (2) v -> w <- b with v, b nonadjacent
    protects b -> w; (3) c -> v -> w with c -> w protects c -> w; (4)
    v -- d1 -- d2 with d1 -> w, d2 -> w and v, d2 nonadjacent protects both
    of those arrows.
    """
    if not g.has_directed(v, w):
        raise InputError(f"edge {v} -> {w} is absent or undirected")
    matches = []
    adj_v = g.adjacency_mask(v) | 1 << v
    for a in _iter_bits(g.child_mask(w) & ~adj_v):
        matches.append(ProtectorMatch(1, frozenset({(w, a)})))
    for b in _iter_bits(g.parent_mask(w) & ~(1 << v) & ~adj_v):
        matches.append(ProtectorMatch(2, frozenset({(b, w)})))
    for c in _iter_bits(g.parent_mask(v) & g.parent_mask(w)):
        matches.append(ProtectorMatch(3, frozenset({(c, w)})))
    for d1 in _iter_bits(g.undirected_mask(v) & g.parent_mask(w)):
        for d2 in _iter_bits(g.undirected_mask(d1) & g.parent_mask(w) & ~adj_v):
            matches.append(ProtectorMatch(4, frozenset({(d1, w), (d2, w)})))
    matches.sort(key=lambda m: (m.config, sorted(m.protected)))
    return tuple(matches)


def is_sole_protector(g: ChainGraph, v: int, w: int) -> bool:
    """True iff some arrow protected by v -> w has no other protector."""
    mine: set[tuple[int, int]] = set()
    for match in protectors(g, v, w):
        mine |= match.protected
    for edge in sorted(mine):
        for x, y in g.directed_edges:
            if (x, y) == (v, w):
                continue
            if any(edge in m.protected for m in protectors(g, x, y)):
                break
        else:
            return True
    return False


def leading_treks_only(g: ChainGraph, v: int, w: int) -> bool:
    """Whether ``g`` has partially directed treks from ``v`` to ``w`` and all
    of them are leading (first edge directed forward, the rest undirected).

    A partially directed trek is a simple mixed path whose directed edges
    read, along the path, as any number pointing backward followed by any
    number pointing forward, with at least one directed edge in total.
    """
    if v == w:
        raise InputError("trek endpoints must be distinct")
    found = False

    def walk(cur: int, visited: int, descended: bool, directed: int, first_fwd: bool) -> bool:
        """Return True once a non-leading trek is found."""
        nonlocal found
        if cur == w:
            if directed >= 1:
                found = True
                if not (first_fwd and directed == 1):
                    return True
            return False
        first = visited == 1 << v
        for u in _iter_bits(g.undirected_mask(cur) & ~visited):
            if walk(u, visited | 1 << u, descended, directed, False if first else first_fwd):
                return True
        for u in _iter_bits(g.child_mask(cur) & ~visited):
            if walk(u, visited | 1 << u, True, directed + 1, True if first else first_fwd):
                return True
        if not descended:
            for u in _iter_bits(g.parent_mask(cur) & ~visited):
                if walk(u, visited | 1 << u, False, directed + 1, False if first else first_fwd):
                    return True
        return False

    nonleading = walk(v, 1 << v, False, 0, False)
    return found and not nonleading


@dataclass(frozen=True)
class CompletionReport:
    """Outcome of a width-1 completion query.

    When ``is_already_complete`` the deleted graph is itself an essential
    graph and is returned as the single completion.  Otherwise
    ``completions`` holds every width-1 completion and its length equals
    ``predicted_count``, the closed-form count.  ``clique_term`` carries the
    sum over maximal cliques of the common-neighbor subgraph (directed-edge
    case only).
    """

    is_already_complete: bool
    completions: tuple[Cpdag, ...]
    predicted_count: int
    clique_term: int | None


def _completion_for(
    g: ChainGraph,
    v: int,
    w: int,
    placement: int,
    base: frozenset[tuple[int, int, int]],
) -> Cpdag:
    skeleton = frozenset(
        {(min(a, b), max(a, b)) for a, b in g.directed_edges}
        | set(g.undirected_edges)
    ) - {(min(v, w), max(v, w))}
    vstructs = set(base)
    for t in _iter_bits(placement):
        vstructs.add((min(v, w), t, max(v, w)))
    closed = _close_pattern(g.node_count, skeleton, frozenset(vstructs))
    return Cpdag(closed.node_count, closed.directed_edges, closed.undirected_edges)


def width1_completions(g: ChainGraph, v: int, w: int) -> CompletionReport:
    """Count and materialize the width-1 completions left by deleting the
    removable edge v (arrow or line) w from the essential graph ``g``.

    Directed case: the deleted graph is already complete iff the common
    neighborhood T (neighbors of v that are undirected neighbors of w) is
    empty and v -> w is not a sole protector; otherwise the count is the sum
    of 2^|K| - 1 over maximal cliques K of the subgraph induced on T, plus
    one unless all partially directed treks from v to w in the deleted graph
    are leading.  Undirected case: already complete iff |T| <= 1, otherwise
    |T| completions plus one when v has directed in-degree > 0.

    Completions are built by placing v-structures at the admissible subsets
    of T and closing each pattern.  The materialized list must match the
    predicted count exactly; any divergence raises
    :class:`VerificationError`.
    """
    g = Cpdag.from_chain_graph(g)
    directed_case = g.has_directed(v, w)
    if not directed_case and not g.has_undirected(v, w):
        raise InputError(f"no edge {v} -> {w} or {v} -- {w} present")
    if not is_removable(g, v, w):
        raise PreconditionError(f"edge between {v} and {w} is not removable")
    h = g.remove_edge(v, w)
    t_mask = g.adjacency_mask(v) & g.undirected_mask(w)
    base = _vstructures(g)
    base = frozenset(
        trip
        for trip in base
        if not (trip[1] == w and v in (trip[0], trip[2]))
    )
    fixed = g.child_mask(v) & g.child_mask(w)
    base |= frozenset((min(v, w), z, max(v, w)) for z in _iter_bits(fixed))

    clique_term: int | None = None
    placements: set[int] = set()
    if directed_case:
        cliques = g.undirected_part().maximal_cliques(within=t_mask) if t_mask else ()
        clique_term = sum(2 ** len(k) - 1 for k in cliques)
        if t_mask == 0 and not is_sole_protector(g, v, w):
            return CompletionReport(True, (Cpdag.from_chain_graph(h),), 1, clique_term)
        only_leading = leading_treks_only(h, v, w)
        for k in cliques:
            for size in range(1, len(k) + 1):
                for sub in itertools.combinations(tuple(k), size):
                    s_mask = 0
                    for t in sub:
                        s_mask |= 1 << t
                    placements.add(t_mask & ~s_mask)
        if not only_leading:
            placements.add(t_mask)
        predicted = clique_term + (0 if only_leading else 1)
    else:
        size = t_mask.bit_count()
        if size <= 1:
            return CompletionReport(True, (Cpdag.from_chain_graph(h),), 1, None)
        for t in _iter_bits(t_mask):
            placements.add(t_mask & ~(1 << t))
        if g.in_degree(v) > 0:
            placements.add(t_mask)
        predicted = size + (1 if g.in_degree(v) > 0 else 0)

    completions = []
    seen = set()
    for placement in sorted(placements):
        comp = _completion_for(g, v, w, placement, base)
        if comp in seen:
            raise VerificationError(
                "two v-structure placements produced the same completion; "
                "count bookkeeping is inconsistent"
            )
        seen.add(comp)
        completions.append(comp)
    if len(completions) != predicted:
        raise VerificationError(
            f"materialized {len(completions)} completions but the closed form "
            f"predicts {predicted}"
        )
    completions.sort(key=lambda c: (sorted(c.directed_edges), sorted(c.undirected_edges)))
    return CompletionReport(False, tuple(completions), predicted, clique_term)
