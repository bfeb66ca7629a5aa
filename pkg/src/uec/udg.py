"""Unconditional dependence graphs (UDGs) and their clique structure.

The UDG of a DAG joins exactly the pairs of nodes that are dependent at the
empty conditioning set; it is the canonical representative of the DAG's
unconditional equivalence class (UEC).  Three constructions are provided and
must agree: an explicit trek search, the common-ancestor test, and the union
of per-source descendant cliques.  The descendant cliques also form the
minimal edge clique cover shared by every member of the UEC.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetError, InputError, VerificationError
from .graphs import Dag, NodeSet, UndirectedGraph, _iter_bits, has_collider_free_path

UDG_METHODS = ("cliques", "common-ancestors", "treks")


def udg_of(g: Dag, method: str = "cliques") -> UndirectedGraph:
    """Unconditional dependence graph of ``g``.

    ``method`` selects the construction: ``"cliques"`` (default) takes the
    union of complete graphs on each source's descendant set;
    ``"common-ancestors"`` joins pairs with intersecting ancestor sets;
    ``"treks"`` runs the explicit collider-free path search.  All three are
    interchangeable; verification exercises the agreement exhaustively.
    """
    n = g.node_count
    if method == "cliques":
        edges = set()
        for m in _iter_bits(g.source_mask):
            clique = g.descendant_mask(m)
            members = list(_iter_bits(clique))
            for i, v in enumerate(members):
                for w in members[i + 1 :]:
                    edges.add((v, w))
        return UndirectedGraph(n, edges)
    if method == "common-ancestors":
        edges = [
            (v, w)
            for v in range(n)
            for w in range(v + 1, n)
            if g.ancestor_mask(v) & g.ancestor_mask(w)
        ]
        return UndirectedGraph(n, edges)
    if method == "treks":
        edges = [
            (v, w)
            for v in range(n)
            for w in range(v + 1, n)
            if has_collider_free_path(g, v, w)
        ]
        return UndirectedGraph(n, edges)
    raise InputError(f"unknown UDG construction {method!r}; expected one of {UDG_METHODS}")


@dataclass(frozen=True)
class CliqueCover:
    """Minimal edge clique cover of a UDG, one clique per source node.

    ``cliques`` holds (source, members) pairs where members is the source's
    descendant set; the list is sorted by smallest clique member.  Two covers
    from different members of one UEC carry different source keys but the
    same clique sets, so comparisons for that purpose go through
    :meth:`clique_sets`.
    """

    cliques: tuple[tuple[int, NodeSet], ...]

    def __len__(self) -> int:
        return len(self.cliques)

    def sources(self) -> NodeSet:
        mask = 0
        for s, _ in self.cliques:
            mask |= 1 << s
        return NodeSet.from_mask(mask)

    def clique_sets(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(members) for _, members in self.cliques)

    def check_against(self, udg: UndirectedGraph) -> None:
        """Raise VerificationError unless every cover invariant holds."""
        covered = set()
        node_cover = 0
        for source, members in self.cliques:
            mlist = list(members)
            if source not in members:
                raise VerificationError(f"clique keyed by {source} does not contain it")
            node_cover |= members.mask
            for i, v in enumerate(mlist):
                for w in mlist[i + 1 :]:
                    if not udg.has_edge(v, w):
                        raise VerificationError(
                            f"clique of source {source} is not complete in the UDG: "
                            f"{v} and {w} are nonadjacent"
                        )
                    covered.add((v, w))
        if frozenset(covered) != udg.edges:
            raise VerificationError("cover does not cover the UDG edge set exactly")
        if node_cover != (1 << udg.node_count) - 1:
            raise VerificationError("cover leaves some node uncovered")
        src = list(self.sources())
        for i, v in enumerate(src):
            for w in src[i + 1 :]:
                if udg.has_edge(v, w):
                    raise VerificationError(f"sources {v}, {w} adjacent in the UDG")
        for skip in range(len(self.cliques)):
            edges = set()
            nodes = 0
            for j, (_, members) in enumerate(self.cliques):
                if j == skip:
                    continue
                mlist = list(members)
                nodes |= members.mask
                edges.update(
                    (v, w) for i, v in enumerate(mlist) for w in mlist[i + 1 :]
                )
            if frozenset(edges) == udg.edges and nodes == node_cover:
                raise VerificationError(
                    f"clique of source {self.cliques[skip][0]} is redundant"
                )


def clique_cover(g: Dag) -> CliqueCover:
    """The per-source descendant cliques of ``g``, sorted canonically."""
    cliques = [
        (m, NodeSet.from_mask(g.descendant_mask(m))) for m in _iter_bits(g.source_mask)
    ]
    cliques.sort(key=lambda item: tuple(item[1]))
    return CliqueCover(tuple(cliques))


@dataclass(frozen=True)
class UecCertificate:
    """A UDG together with the clique cover that generates it."""

    udg: UndirectedGraph
    cover: CliqueCover


def uec_certificate(g: Dag) -> UecCertificate:
    udg = udg_of(g)
    cover = clique_cover(g)
    cover.check_against(udg)
    return UecCertificate(udg, cover)


def same_uec(a: Dag, b: Dag) -> bool:
    """True iff ``a`` and ``b`` induce the same unconditional dependencies."""
    if a.node_count != b.node_count:
        raise InputError(
            f"node counts differ: {a.node_count} vs {b.node_count}"
        )
    return udg_of(a) == udg_of(b)


def is_maximal_in_uec(g: Dag) -> bool:
    """True iff no single-edge addition stays in the UEC of ``g``.

    Equivalent, by the legality characterization of insertions, to no
    nonadjacent ordered pair being partially weakly covered or implied by
    transitivity.
    """
    from .moves import classify_pair

    for v in range(g.node_count):
        for w in range(g.node_count):
            if v == w or g.adjacent(v, w):
                continue
            if classify_pair(g, v, w).insertable:
                return False
    return True


def max_independent_set_size(u: UndirectedGraph, node_budget: int = 20) -> int:
    """Exact maximum independent set size by branch and bound.

    The search is exponential; graphs beyond ``node_budget`` nodes are
    rejected rather than silently ground through.
    """
    if u.node_count > node_budget:
        raise BudgetError(
            f"independent-set search limited to {node_budget} nodes, got {u.node_count}"
        )
    best = 0

    def grow(candidates: int, size: int) -> None:
        nonlocal best
        if size + candidates.bit_count() <= best:
            return
        if candidates == 0:
            best = max(best, size)
            return
        v = max(_iter_bits(candidates), key=lambda x: (u.neighbor_mask(x) & candidates).bit_count())
        grow(candidates & ~(1 << v), size)
        grow(candidates & ~(u.neighbor_mask(v) | 1 << v), size + 1)

    grow((1 << u.node_count) - 1, 0)
    return best
