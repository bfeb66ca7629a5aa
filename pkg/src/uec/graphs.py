"""Core graph types on dense integer node ids.

Three immutable graph values (:class:`Dag`, :class:`UndirectedGraph`,
:class:`ChainGraph`) plus :class:`NodeSet`, a set of node ids backed by an
integer bitmask.  Adjacency and reachability closures are stored as per-node
bitmasks, so set queries (ancestors, anteriors, components) are a handful of
bitwise operations; the exhaustive verification oracle issues millions of
them.  Graphs never mutate: edit helpers return new values, which keeps the
cached closures trivially safe to share across threads or processes.

Node ids run from 0 to node_count - 1.  External string labels, when present,
are resolved to dense ids before any algorithm runs (see :mod:`uec.graphio`).
Masks are plain Python ints, so there is no hard node limit, but the closure
tables are Theta(n^2) bits and the package is tuned for graphs that fit in a
machine word (about 31 nodes; see README).
"""

from __future__ import annotations

import heapq
from typing import Iterable, Iterator

from .errors import InputError

NodesLike = "int | NodeSet | Iterable[int]"


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class NodeSet:
    """Immutable set of node ids; iterates in ascending order.

    Supports the usual set algebra (``&``, ``|``, ``-``, ``^``), containment
    tests (``<=``, ``<``), membership and iteration.  ``mask`` exposes the
    underlying bitmask for callers that want to stay in integer land.
    """

    __slots__ = ("_mask",)

    def __init__(self, nodes: Iterable[int] = ()):
        mask = 0
        for v in nodes:
            if v < 0:
                raise InputError(f"node id must be non-negative, got {v}")
            mask |= 1 << v
        object.__setattr__(self, "_mask", mask)

    @classmethod
    def from_mask(cls, mask: int) -> "NodeSet":
        ns = cls.__new__(cls)
        object.__setattr__(ns, "_mask", mask)
        return ns

    @property
    def mask(self) -> int:
        return self._mask

    def __setattr__(self, name, value):
        raise AttributeError("NodeSet is immutable")

    def __contains__(self, v: int) -> bool:
        return v >= 0 and self._mask >> v & 1 == 1

    def __iter__(self) -> Iterator[int]:
        return _iter_bits(self._mask)

    def __len__(self) -> int:
        return self._mask.bit_count()

    def __bool__(self) -> bool:
        return self._mask != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, NodeSet):
            return self._mask == other._mask
        if isinstance(other, (set, frozenset)):
            return set(self) == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("NodeSet", self._mask))

    def __and__(self, other: "NodeSet") -> "NodeSet":
        return NodeSet.from_mask(self._mask & other._mask)

    def __or__(self, other: "NodeSet") -> "NodeSet":
        return NodeSet.from_mask(self._mask | other._mask)

    def __sub__(self, other: "NodeSet") -> "NodeSet":
        return NodeSet.from_mask(self._mask & ~other._mask)

    def __xor__(self, other: "NodeSet") -> "NodeSet":
        return NodeSet.from_mask(self._mask ^ other._mask)

    def __le__(self, other: "NodeSet") -> bool:
        return self._mask & ~other._mask == 0

    def __lt__(self, other: "NodeSet") -> bool:
        return self <= other and self._mask != other._mask

    def __ge__(self, other: "NodeSet") -> bool:
        return other <= self

    def __repr__(self) -> str:
        return f"NodeSet({{{', '.join(map(str, self))}}})"


def _as_mask(nodes, node_count: int) -> int:
    if isinstance(nodes, NodeSet):
        mask = nodes.mask
    elif isinstance(nodes, int):
        mask = 1 << nodes if nodes >= 0 else -1
    else:
        mask = 0
        for v in nodes:
            if not 0 <= v < node_count:
                raise InputError(f"node id {v} out of range 0..{node_count - 1}")
            mask |= 1 << v
        return mask
    if mask < 0 or mask >> node_count:
        raise InputError(f"node id out of range 0..{node_count - 1}")
    return mask


def _check_node(v: int, node_count: int) -> None:
    if not 0 <= v < node_count:
        raise InputError(f"node id {v} out of range 0..{node_count - 1}")


def _check_pair(v: int, w: int, node_count: int) -> None:
    _check_node(v, node_count)
    _check_node(w, node_count)
    if v == w:
        raise InputError(f"nodes must be distinct, got {v} twice")


class Dag:
    """Labeled directed acyclic graph.

    Edges are ordered (tail, head) pairs.  Construction validates the type
    invariants: no self-loops, at most one orientation per pair, and
    acyclicity (a deterministic topological order is computed up front).
    """

    __slots__ = ("node_count", "edges", "_pa", "_ch", "_topo", "_anc", "_desc")

    def __init__(self, node_count: int, edges: Iterable[tuple[int, int]] = ()):
        if node_count < 1:
            raise InputError("node_count must be a positive integer")
        pa = [0] * node_count
        ch = [0] * node_count
        edge_set = set()
        for v, w in edges:
            _check_pair(v, w, node_count)
            if (w, v) in edge_set:
                raise InputError(f"both orientations of {{{v}, {w}}} present")
            if (v, w) not in edge_set:
                edge_set.add((v, w))
                ch[v] |= 1 << w
                pa[w] |= 1 << v
        object.__setattr__(self, "node_count", node_count)
        object.__setattr__(self, "edges", frozenset(edge_set))
        object.__setattr__(self, "_pa", tuple(pa))
        object.__setattr__(self, "_ch", tuple(ch))
        object.__setattr__(self, "_topo", self._kahn())
        object.__setattr__(self, "_anc", None)
        object.__setattr__(self, "_desc", None)

    def __setattr__(self, name, value):
        raise AttributeError("Dag is immutable")

    def _kahn(self) -> tuple[int, ...]:
        indeg = [self._pa[v].bit_count() for v in range(self.node_count)]
        heap = [v for v in range(self.node_count) if indeg[v] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            v = heapq.heappop(heap)
            order.append(v)
            for w in _iter_bits(self._ch[v]):
                indeg[w] -= 1
                if indeg[w] == 0:
                    heapq.heappush(heap, w)
        if len(order) != self.node_count:
            raise InputError("edge set contains a directed cycle")
        return tuple(order)

    # -- reachability closures ------------------------------------------

    def _anc_masks(self) -> tuple[int, ...]:
        if self._anc is None:
            anc = [0] * self.node_count
            for v in self._topo:
                m = 1 << v
                for p in _iter_bits(self._pa[v]):
                    m |= anc[p]
                anc[v] = m
            object.__setattr__(self, "_anc", tuple(anc))
        return self._anc

    def _desc_masks(self) -> tuple[int, ...]:
        if self._desc is None:
            desc = [0] * self.node_count
            for v in reversed(self._topo):
                m = 1 << v
                for c in _iter_bits(self._ch[v]):
                    m |= desc[c]
                desc[v] = m
            object.__setattr__(self, "_desc", tuple(desc))
        return self._desc

    def ancestor_mask(self, v: int) -> int:
        _check_node(v, self.node_count)
        return self._anc_masks()[v]

    def descendant_mask(self, v: int) -> int:
        _check_node(v, self.node_count)
        return self._desc_masks()[v]

    def parent_mask(self, v: int) -> int:
        _check_node(v, self.node_count)
        return self._pa[v]

    def child_mask(self, v: int) -> int:
        _check_node(v, self.node_count)
        return self._ch[v]

    @property
    def source_mask(self) -> int:
        mask = 0
        for v in range(self.node_count):
            if self._pa[v] == 0:
                mask |= 1 << v
        return mask

    def ancestors_mask_of(self, mask: int) -> int:
        anc = self._anc_masks()
        out = 0
        for v in _iter_bits(mask):
            out |= anc[v]
        return out

    def descendants_mask_of(self, mask: int) -> int:
        desc = self._desc_masks()
        out = 0
        for v in _iter_bits(mask):
            out |= desc[v]
        return out

    # -- set-valued queries ----------------------------------------------

    def ancestors(self, nodes) -> NodeSet:
        """an(A): reflexive closure under parent-taking."""
        return NodeSet.from_mask(self.ancestors_mask_of(_as_mask(nodes, self.node_count)))

    def descendants(self, nodes) -> NodeSet:
        """de(A): reflexive closure under child-taking."""
        return NodeSet.from_mask(self.descendants_mask_of(_as_mask(nodes, self.node_count)))

    def parents(self, nodes) -> NodeSet:
        """pa(A): union of the members' direct parents (not reflexive)."""
        mask = _as_mask(nodes, self.node_count)
        out = 0
        for v in _iter_bits(mask):
            out |= self._pa[v]
        return NodeSet.from_mask(out)

    def children(self, nodes) -> NodeSet:
        mask = _as_mask(nodes, self.node_count)
        out = 0
        for v in _iter_bits(mask):
            out |= self._ch[v]
        return NodeSet.from_mask(out)

    def maximal_ancestors(self, nodes) -> NodeSet:
        """ma(A): the parent-free nodes among an(A); always source nodes."""
        mask = self.ancestors_mask_of(_as_mask(nodes, self.node_count))
        return NodeSet.from_mask(mask & self.source_mask)

    def sources(self) -> NodeSet:
        return NodeSet.from_mask(self.source_mask)

    def trek_reachable(self, v: int, w: int) -> bool:
        """True iff a collider-free simple path joins the distinct nodes v, w.

        Computed as an(v) & an(w) != 0, which coincides with the path-based
        definition; the explicit path search lives in
        :func:`has_collider_free_path` and is cross-checked in tests.
        """
        _check_pair(v, w, self.node_count)
        anc = self._anc_masks()
        return anc[v] & anc[w] != 0

    def topological_order(self) -> tuple[int, ...]:
        """Deterministic topological order; ties broken by ascending id."""
        return self._topo

    # -- structure -------------------------------------------------------

    def has_edge(self, v: int, w: int) -> bool:
        _check_pair(v, w, self.node_count)
        return self._ch[v] >> w & 1 == 1

    def adjacent(self, v: int, w: int) -> bool:
        _check_pair(v, w, self.node_count)
        return (self._ch[v] | self._pa[v]) >> w & 1 == 1

    def skeleton(self) -> "UndirectedGraph":
        return UndirectedGraph(self.node_count, self.edges)

    def add_edge(self, v: int, w: int) -> "Dag":
        if self.adjacent(v, w):
            raise InputError(f"nodes {v} and {w} are already adjacent")
        return Dag(self.node_count, self.edges | {(v, w)})

    def remove_edge(self, v: int, w: int) -> "Dag":
        if not self.has_edge(v, w):
            raise InputError(f"edge {v} -> {w} is absent")
        return Dag(self.node_count, self.edges - {(v, w)})

    def reverse_edge(self, v: int, w: int) -> "Dag":
        if not self.has_edge(v, w):
            raise InputError(f"edge {v} -> {w} is absent")
        return Dag(self.node_count, (self.edges - {(v, w)}) | {(w, v)})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dag):
            return NotImplemented
        return self.node_count == other.node_count and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.node_count, self.edges))

    def __repr__(self) -> str:
        edges = ", ".join(f"{v}->{w}" for v, w in sorted(self.edges))
        return f"Dag({self.node_count}, [{edges}])"

    def __getstate__(self):
        return (self.node_count, sorted(self.edges))

    def __setstate__(self, state):
        self.__init__(*state)


def has_collider_free_path(g: Dag, v: int, w: int) -> bool:
    """Search for a trek from v to w: a simple path with no head-to-head node.

    Runs the two-phase walk directly on the adjacency masks (climb to parents,
    then descend to children) without touching the cached ancestor closures.
    Any such walk between distinct endpoints contains a simple collider-free
    path over a subset of its nodes, so frontier reachability is enough.
    """
    _check_pair(v, w, g.node_count)
    up = 1 << v
    frontier = up
    while frontier:
        step = 0
        for x in _iter_bits(frontier):
            step |= g.parent_mask(x)
        frontier = step & ~up
        up |= step
    down = up
    frontier = up
    while frontier:
        step = 0
        for x in _iter_bits(frontier):
            step |= g.child_mask(x)
        frontier = step & ~down
        down |= step
    return down >> w & 1 == 1


class UndirectedGraph:
    """Simple undirected graph; edges stored as (min, max) pairs."""

    __slots__ = ("node_count", "edges", "_nbr")

    def __init__(self, node_count: int, edges: Iterable[Iterable[int]] = ()):
        if node_count < 1:
            raise InputError("node_count must be a positive integer")
        nbr = [0] * node_count
        edge_set = set()
        for e in edges:
            v, w = e
            _check_pair(v, w, node_count)
            edge_set.add((min(v, w), max(v, w)))
            nbr[v] |= 1 << w
            nbr[w] |= 1 << v
        object.__setattr__(self, "node_count", node_count)
        object.__setattr__(self, "edges", frozenset(edge_set))
        object.__setattr__(self, "_nbr", tuple(nbr))

    def __setattr__(self, name, value):
        raise AttributeError("UndirectedGraph is immutable")

    def neighbor_mask(self, v: int) -> int:
        _check_node(v, self.node_count)
        return self._nbr[v]

    def neighbors(self, v: int) -> NodeSet:
        return NodeSet.from_mask(self.neighbor_mask(v))

    def has_edge(self, v: int, w: int) -> bool:
        _check_pair(v, w, self.node_count)
        return self._nbr[v] >> w & 1 == 1

    def degree(self, v: int) -> int:
        return self.neighbor_mask(v).bit_count()

    def connected_components(self) -> tuple[NodeSet, ...]:
        """Components as NodeSets, ordered by their smallest member."""
        seen = 0
        out = []
        for v in range(self.node_count):
            if seen >> v & 1:
                continue
            comp = 1 << v
            frontier = comp
            while frontier:
                step = 0
                for x in _iter_bits(frontier):
                    step |= self._nbr[x]
                frontier = step & ~comp
                comp |= step
            seen |= comp
            out.append(NodeSet.from_mask(comp))
        return tuple(out)

    def is_complete_on(self, mask: int) -> bool:
        for v in _iter_bits(mask):
            if mask & ~self._nbr[v] & ~(1 << v):
                return False
        return True

    def is_chordal(self) -> bool:
        """Max cardinality search followed by the perfect-ordering check."""
        n = self.node_count
        weight = [0] * n
        order: list[int] = []
        pos = [-1] * n
        unvisited = (1 << n) - 1
        for i in range(n):
            v = max(_iter_bits(unvisited), key=lambda x: (weight[x], -x))
            pos[v] = i
            order.append(v)
            unvisited &= ~(1 << v)
            for u in _iter_bits(self._nbr[v] & unvisited):
                weight[u] += 1
        for i, v in enumerate(order):
            earlier = 0
            for u in _iter_bits(self._nbr[v]):
                if pos[u] < i:
                    earlier |= 1 << u
            if earlier:
                u = max(_iter_bits(earlier), key=lambda x: pos[x])
                if earlier & ~(1 << u) & ~self._nbr[u]:
                    return False
        return True

    def maximal_cliques(self, within: int | None = None) -> tuple[NodeSet, ...]:
        """Bron-Kerbosch with pivoting, optionally restricted to a node mask.

        Returns the maximal cliques of the induced subgraph, sorted by their
        member tuples for deterministic output.
        """
        universe = (1 << self.node_count) - 1 if within is None else within
        nbr = [self._nbr[v] & universe for v in range(self.node_count)]
        cliques: list[int] = []

        def expand(r: int, p: int, x: int) -> None:
            if p == 0 and x == 0:
                cliques.append(r)
                return
            pivot = max(_iter_bits(p | x), key=lambda u: (nbr[u] & p).bit_count())
            for v in _iter_bits(p & ~nbr[pivot]):
                expand(r | 1 << v, p & nbr[v], x & nbr[v])
                p &= ~(1 << v)
                x |= 1 << v

        if universe:
            expand(0, universe, 0)
        cliques.sort(key=lambda m: tuple(_iter_bits(m)))
        return tuple(NodeSet.from_mask(m) for m in cliques)

    def add_edge(self, v: int, w: int) -> "UndirectedGraph":
        return UndirectedGraph(self.node_count, list(self.edges) + [(v, w)])

    def remove_edge(self, v: int, w: int) -> "UndirectedGraph":
        if not self.has_edge(v, w):
            raise InputError(f"edge {{{v}, {w}}} is absent")
        return UndirectedGraph(self.node_count, self.edges - {(min(v, w), max(v, w))})

    def __eq__(self, other) -> bool:
        if not isinstance(other, UndirectedGraph):
            return NotImplemented
        return self.node_count == other.node_count and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.node_count, self.edges))

    def __repr__(self) -> str:
        edges = ", ".join(f"{v}--{w}" for v, w in sorted(self.edges))
        return f"UndirectedGraph({self.node_count}, [{edges}])"

    def __getstate__(self):
        return (self.node_count, sorted(self.edges))

    def __setstate__(self, state):
        self.__init__(*state)


class ChainGraph:
    """Mixed graph with directed and undirected edges, no partially directed
    cycle.

    Equivalently: no directed edge joins two nodes of the same undirected
    component, and the component quotient of the directed edges is acyclic.
    PDAGs and CPDAGs are represented this way.
    """

    __slots__ = (
        "node_count",
        "directed_edges",
        "undirected_edges",
        "_pa",
        "_ch",
        "_und",
        "_comp",
        "_ant",
    )

    def __init__(
        self,
        node_count: int,
        directed: Iterable[tuple[int, int]] = (),
        undirected: Iterable[Iterable[int]] = (),
    ):
        if node_count < 1:
            raise InputError("node_count must be a positive integer")
        pa = [0] * node_count
        ch = [0] * node_count
        und = [0] * node_count
        dset = set()
        for v, w in directed:
            _check_pair(v, w, node_count)
            if (w, v) in dset:
                raise InputError(f"both orientations of {{{v}, {w}}} present")
            dset.add((v, w))
            ch[v] |= 1 << w
            pa[w] |= 1 << v
        uset = set()
        for e in undirected:
            v, w = e
            _check_pair(v, w, node_count)
            if (v, w) in dset or (w, v) in dset:
                raise InputError(f"pair {{{v}, {w}}} appears both directed and undirected")
            uset.add((min(v, w), max(v, w)))
            und[v] |= 1 << w
            und[w] |= 1 << v
        object.__setattr__(self, "node_count", node_count)
        object.__setattr__(self, "directed_edges", frozenset(dset))
        object.__setattr__(self, "undirected_edges", frozenset(uset))
        object.__setattr__(self, "_pa", tuple(pa))
        object.__setattr__(self, "_ch", tuple(ch))
        object.__setattr__(self, "_und", tuple(und))
        object.__setattr__(self, "_comp", self._components())
        self._check_no_partially_directed_cycle()
        object.__setattr__(self, "_ant", None)

    def __setattr__(self, name, value):
        raise AttributeError("ChainGraph is immutable")

    def _components(self):
        comp_of = [-1] * self.node_count
        masks = []
        for v in range(self.node_count):
            if comp_of[v] >= 0:
                continue
            comp = 1 << v
            frontier = comp
            while frontier:
                step = 0
                for x in _iter_bits(frontier):
                    step |= self._und[x]
                frontier = step & ~comp
                comp |= step
            for x in _iter_bits(comp):
                comp_of[x] = len(masks)
            masks.append(comp)
        return (tuple(comp_of), tuple(masks))

    def _check_no_partially_directed_cycle(self) -> None:
        comp_of, masks = self._comp
        succ = [set() for _ in masks]
        for v, w in self.directed_edges:
            if comp_of[v] == comp_of[w]:
                raise InputError(
                    f"partially directed cycle: edge {v} -> {w} joins one chain component"
                )
            succ[comp_of[v]].add(comp_of[w])
        indeg = [0] * len(masks)
        for cs in succ:
            for c in cs:
                indeg[c] += 1
        stack = [c for c in range(len(masks)) if indeg[c] == 0]
        seen = 0
        while stack:
            c = stack.pop()
            seen += 1
            for d in succ[c]:
                indeg[d] -= 1
                if indeg[d] == 0:
                    stack.append(d)
        if seen != len(masks):
            raise InputError("partially directed cycle through chain components")

    # -- adjacency -------------------------------------------------------

    def parent_mask(self, v: int) -> int:
        _check_node(v, self.node_count)
        return self._pa[v]

    def child_mask(self, v: int) -> int:
        _check_node(v, self.node_count)
        return self._ch[v]

    def undirected_mask(self, v: int) -> int:
        _check_node(v, self.node_count)
        return self._und[v]

    def adjacency_mask(self, v: int) -> int:
        _check_node(v, self.node_count)
        return self._pa[v] | self._ch[v] | self._und[v]

    def directed_parents(self, v: int) -> NodeSet:
        return NodeSet.from_mask(self.parent_mask(v))

    def directed_children(self, v: int) -> NodeSet:
        return NodeSet.from_mask(self.child_mask(v))

    def undirected_neighbors(self, v: int) -> NodeSet:
        return NodeSet.from_mask(self.undirected_mask(v))

    def neighbors(self, v: int) -> NodeSet:
        return NodeSet.from_mask(self.adjacency_mask(v))

    def in_degree(self, v: int) -> int:
        return self.parent_mask(v).bit_count()

    def has_directed(self, v: int, w: int) -> bool:
        _check_pair(v, w, self.node_count)
        return self._ch[v] >> w & 1 == 1

    def has_undirected(self, v: int, w: int) -> bool:
        _check_pair(v, w, self.node_count)
        return self._und[v] >> w & 1 == 1

    def adjacent(self, v: int, w: int) -> bool:
        return self.adjacency_mask(v) >> w & 1 == 1

    # -- components and anteriors -----------------------------------------

    def chain_components(self) -> tuple[NodeSet, ...]:
        """Chain components, ordered by their smallest member.

        These are the classes of mutual reachability under the chain-graph
        preorder, which coincide with the connected components of the
        undirected-edge subgraph.
        """
        return tuple(NodeSet.from_mask(m) for m in self._comp[1])

    def component_mask(self, v: int) -> int:
        _check_node(v, self.node_count)
        comp_of, masks = self._comp
        return masks[comp_of[v]]

    def component_of(self, v: int) -> NodeSet:
        return NodeSet.from_mask(self.component_mask(v))

    def _anterior_masks(self) -> tuple[int, ...]:
        if self._ant is None:
            ant = []
            for v in range(self.node_count):
                at = 1 << v
                frontier = at
                while frontier:
                    step = 0
                    for x in _iter_bits(frontier):
                        step |= self._pa[x] | self._und[x]
                    frontier = step & ~at
                    at |= step
                ant.append(at)
            object.__setattr__(self, "_ant", tuple(ant))
        return self._ant

    def anterior_mask(self, v: int) -> int:
        _check_node(v, self.node_count)
        return self._anterior_masks()[v]

    def anterior(self, v: int) -> NodeSet:
        """at(v): nodes with an undirected or forward-directed path to v."""
        return NodeSet.from_mask(self.anterior_mask(v))

    def minimal_anterior_mask(self, v: int) -> int:
        ant = self._anterior_masks()
        comp_of, masks = self._comp
        out = 0
        for w in _iter_bits(ant[v]):
            if ant[w] == masks[comp_of[w]]:
                out |= 1 << w
        return out

    def minimal_anterior(self, v: int) -> NodeSet:
        """mt(v): the anteriors whose own anterior is just their component."""
        _check_node(v, self.node_count)
        return NodeSet.from_mask(self.minimal_anterior_mask(v))

    # -- edits and views ---------------------------------------------------

    def remove_edge(self, v: int, w: int) -> "ChainGraph":
        """Remove v -> w or v -- w, whichever is present."""
        if self.has_directed(v, w):
            return ChainGraph(
                self.node_count, self.directed_edges - {(v, w)}, self.undirected_edges
            )
        if self.has_undirected(v, w):
            return ChainGraph(
                self.node_count,
                self.directed_edges,
                self.undirected_edges - {(min(v, w), max(v, w))},
            )
        raise InputError(f"no edge {v} -> {w} or {v} -- {w} present")

    def skeleton(self) -> UndirectedGraph:
        pairs = [(v, w) for v, w in self.directed_edges]
        pairs.extend(self.undirected_edges)
        return UndirectedGraph(self.node_count, pairs)

    def undirected_part(self) -> UndirectedGraph:
        return UndirectedGraph(self.node_count, self.undirected_edges)

    def to_dag(self) -> Dag:
        if self.undirected_edges:
            raise InputError("chain graph has undirected edges; not a DAG")
        return Dag(self.node_count, self.directed_edges)

    @classmethod
    def from_dag(cls, g: Dag) -> "ChainGraph":
        return cls(g.node_count, g.edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainGraph):
            return NotImplemented
        return (
            self.node_count == other.node_count
            and self.directed_edges == other.directed_edges
            and self.undirected_edges == other.undirected_edges
        )

    def __hash__(self) -> int:
        return hash((self.node_count, self.directed_edges, self.undirected_edges))

    def __repr__(self) -> str:
        d = ", ".join(f"{v}->{w}" for v, w in sorted(self.directed_edges))
        u = ", ".join(f"{v}--{w}" for v, w in sorted(self.undirected_edges))
        return f"ChainGraph({self.node_count}, [{d}], [{u}])"

    def __getstate__(self):
        return (self.node_count, sorted(self.directed_edges), sorted(self.undirected_edges))

    def __setstate__(self, state):
        self.__init__(*state)
