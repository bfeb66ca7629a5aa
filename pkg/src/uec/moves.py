"""Single-edge moves between unconditionally equivalent DAGs.

An edge insertion keeps the UEC exactly when the ordered pair is partially
weakly covered or implied by transitivity; a reversal keeps it exactly when
the edge is weakly covered.  On top of those two legality predicates this
module builds the reference graph (the class member whose skeleton is the
union of two members' skeletons), the weakly-covered-edge selector for
same-skeleton pairs, and the full insert/reverse/delete sequence carrying one
member of a UEC onto another.  Replays validate every step and abort with the
violated rule named, so a completed replay certifies that each intermediate
graph was a DAG in the same UEC.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import IllegalMoveError, InputError, PreconditionError, VerificationError
from .graphs import Dag, _iter_bits
from .udg import same_uec


class PairClass(enum.Enum):
    """Classification of an ordered node pair (v, w) of a DAG.

    Exactly one variant applies.  ``PARTIALLY_WEAKLY_COVERED`` means
    ma(v) = ma(w) with no ancestry either way and pa(v) nonempty; the
    ``STRICTLY_`` variant is the same with ma(v) a proper subset of ma(w).
    """

    ADJACENT = "adjacent"
    IMPLIED_BY_TRANSITIVITY = "implied-by-transitivity"
    PARTIALLY_WEAKLY_COVERED = "partially-weakly-covered"
    STRICTLY_PARTIALLY_WEAKLY_COVERED = "strictly-partially-weakly-covered"
    NEITHER = "neither"

    @property
    def partially_weakly_covered(self) -> bool:
        return self in (
            PairClass.PARTIALLY_WEAKLY_COVERED,
            PairClass.STRICTLY_PARTIALLY_WEAKLY_COVERED,
        )

    @property
    def insertable(self) -> bool:
        """Whether inserting v -> w yields a DAG in the same UEC."""
        return self is PairClass.IMPLIED_BY_TRANSITIVITY or self.partially_weakly_covered


def classify_pair(g: Dag, v: int, w: int) -> PairClass:
    """Classify the ordered pair (v, w); the nodes must be distinct."""
    if v == w:
        raise InputError("pair classification requires distinct nodes")
    if g.adjacent(v, w):
        return PairClass.ADJACENT
    anc_v = g.ancestor_mask(v)
    anc_w = g.ancestor_mask(w)
    if anc_w >> v & 1:
        return PairClass.IMPLIED_BY_TRANSITIVITY
    if anc_v >> w & 1:
        return PairClass.NEITHER
    if g.parent_mask(v) == 0:
        return PairClass.NEITHER
    ma_v = anc_v & g.source_mask
    ma_w = anc_w & g.source_mask
    if ma_v & ~ma_w:
        return PairClass.NEITHER
    if ma_v == ma_w:
        return PairClass.PARTIALLY_WEAKLY_COVERED
    return PairClass.STRICTLY_PARTIALLY_WEAKLY_COVERED


def is_weakly_covered(g: Dag, v: int, w: int) -> bool:
    """True iff the edge v -> w satisfies ma(pa(v)) = ma(pa(w) \\ {v}) and
    v is no ancestor of pa(w) \\ {v}."""
    if not g.has_edge(v, w):
        raise InputError(f"edge {v} -> {w} is absent")
    src = g.source_mask
    pa_v = g.parent_mask(v)
    pa_w = g.parent_mask(w) & ~(1 << v)
    anc_pa_w = g.ancestors_mask_of(pa_w)
    if anc_pa_w >> v & 1:
        return False
    return g.ancestors_mask_of(pa_v) & src == anc_pa_w & src


def can_insert(g: Dag, v: int, w: int) -> bool:
    """True iff adding v -> w yields a DAG in the same UEC."""
    if v != w and g.adjacent(v, w):
        raise InputError(f"nodes {v} and {w} are already adjacent")
    return classify_pair(g, v, w).insertable


def can_reverse(g: Dag, v: int, w: int) -> bool:
    """True iff reversing v -> w yields a DAG in the same UEC."""
    return is_weakly_covered(g, v, w)


def delta(a: Dag, b: Dag) -> frozenset[tuple[int, int]]:
    """Arcs of ``a`` that appear with the opposite orientation in ``b``."""
    if a.node_count != b.node_count:
        raise InputError("node counts differ")
    return frozenset((v, w) for v, w in a.edges if (w, v) in b.edges)


def gamma(a: Dag, b: Dag) -> frozenset[tuple[int, int]]:
    """Arcs of ``b`` between nodes that are nonadjacent in ``a``."""
    if a.node_count != b.node_count:
        raise InputError("node counts differ")
    return frozenset(
        (v, w) for v, w in b.edges if (v, w) not in a.edges and (w, v) not in a.edges
    )


def saturate(g: Dag) -> Dag:
    """Close ``g`` under all legal insertions; the result is the maximal DAG
    of the UEC.

    Pairs are scanned in ascending (tail, head) order and passes repeat until
    none inserts.  The skeleton of the result does not depend on the order;
    the scan order pins the arrow directions for determinism.
    """
    cur = g
    inserted = True
    while inserted:
        inserted = False
        for v in range(cur.node_count):
            for w in range(cur.node_count):
                if v == w or cur.adjacent(v, w):
                    continue
                if classify_pair(cur, v, w).insertable:
                    cur = cur.add_edge(v, w)
                    inserted = True
    return cur


def reference_order(g: Dag) -> tuple[int, ...]:
    """Total node order used by the reference-graph and find-edge algorithms.

    Realized as the deterministic topological order of the saturated maximal
    DAG, which extends both the ancestral order of ``g`` and strict partial
    weak coverage.
    """
    return saturate(g).topological_order()


def _reference_insertions(a: Dag, b: Dag) -> list[tuple[int, int]]:
    pos = [0] * a.node_count
    for i, v in enumerate(reference_order(a)):
        pos[v] = i
    todo = []
    for v, w in b.edges:
        if not a.adjacent(v, w):
            todo.append((v, w) if pos[v] < pos[w] else (w, v))
    todo.sort()
    return todo


def find_reference(a: Dag, b: Dag) -> Dag:
    """A DAG in the common UEC whose skeleton is the union of both skeletons.

    Every pair adjacent in ``b`` but not ``a`` is inserted into ``a``,
    oriented by :func:`reference_order`.  Each insertion is checked legal at
    application time.
    """
    if not same_uec(a, b):
        raise PreconditionError("graphs are not unconditionally equivalent")
    cur = a
    for v, w in _reference_insertions(a, b):
        if not classify_pair(cur, v, w).insertable:
            raise VerificationError(
                f"reference-graph insertion {v} -> {w} is not legal; "
                "the insertion-legality guarantee failed"
            )
        cur = cur.add_edge(v, w)
    return cur


def find_edge(a: Dag, b: Dag) -> tuple[int, int]:
    """Pick a weakly covered edge of ``a`` oriented oppositely in ``b``.

    Preconditions: same UEC, identical skeletons, and at least one
    differently oriented edge.  The head is minimal and the tail maximal with
    respect to :func:`reference_order` of ``a``.
    """
    if not same_uec(a, b):
        raise PreconditionError("graphs are not unconditionally equivalent")
    if a.skeleton() != b.skeleton():
        raise PreconditionError("graphs do not share a skeleton")
    diff = delta(a, b)
    if not diff:
        raise PreconditionError("graphs have no differently oriented edge")
    pos = [0] * a.node_count
    for i, v in enumerate(reference_order(a)):
        pos[v] = i
    w = min((h for _, h in diff), key=lambda x: pos[x])
    v = max((t for t, h in diff if h == w), key=lambda x: pos[x])
    return (v, w)


class MoveKind(enum.Enum):
    INSERT = "insert"
    REVERSE = "reverse"
    DELETE = "delete"


_PHASE = {MoveKind.INSERT: 0, MoveKind.REVERSE: 1, MoveKind.DELETE: 2}


@dataclass(frozen=True)
class EdgeMove:
    """One transformation step on a directed edge."""

    kind: MoveKind
    tail: int
    head: int

    def __str__(self) -> str:
        return f"{self.kind.value} {self.tail} {self.head}"


def apply_move(g: Dag, move: EdgeMove) -> Dag:
    """Apply ``move`` to ``g``, validating the legality rule it relies on.

    Raises :class:`IllegalMoveError` naming the violated rule: insertions and
    deletions must leave the ordered pair partially weakly covered or implied
    by transitivity in the smaller graph, reversals must act on a weakly
    covered edge.  A successful replay therefore certifies that every
    intermediate graph is a DAG in the same UEC.
    """
    v, w = move.tail, move.head
    if move.kind is MoveKind.INSERT:
        if g.adjacent(v, w):
            raise InputError(f"cannot insert {v} -> {w}: nodes already adjacent")
        cls = classify_pair(g, v, w)
        if not cls.insertable:
            raise IllegalMoveError(
                f"insert {v} -> {w}: pair is {cls.value}, violating the "
                "insertion-legality rule (partially weakly covered or implied "
                "by transitivity)"
            )
        return g.add_edge(v, w)
    if move.kind is MoveKind.REVERSE:
        if not g.has_edge(v, w):
            raise InputError(f"cannot reverse {v} -> {w}: edge absent")
        if not is_weakly_covered(g, v, w):
            raise IllegalMoveError(
                f"reverse {v} -> {w}: edge is not weakly covered, violating "
                "the reversal-legality rule"
            )
        return g.reverse_edge(v, w)
    if not g.has_edge(v, w):
        raise InputError(f"cannot delete {v} -> {w}: edge absent")
    smaller = g.remove_edge(v, w)
    cls = classify_pair(smaller, v, w)
    if not cls.insertable:
        raise IllegalMoveError(
            f"delete {v} -> {w}: removed arc is {cls.value} afterwards, "
            "violating the deletion-legality rule (partially weakly covered "
            "or implied by transitivity)"
        )
    return smaller


@dataclass(frozen=True)
class MoveSequence:
    """Ordered move list in phase order: inserts, then reversals, then
    deletions."""

    moves: tuple[EdgeMove, ...]

    def __post_init__(self):
        phases = [_PHASE[m.kind] for m in self.moves]
        if phases != sorted(phases):
            raise InputError("moves out of phase order (insert, reverse, delete)")

    @property
    def insert_count(self) -> int:
        return sum(1 for m in self.moves if m.kind is MoveKind.INSERT)

    @property
    def reverse_count(self) -> int:
        return sum(1 for m in self.moves if m.kind is MoveKind.REVERSE)

    @property
    def delete_count(self) -> int:
        return sum(1 for m in self.moves if m.kind is MoveKind.DELETE)

    @property
    def phase_counts(self) -> tuple[int, int, int]:
        return (self.insert_count, self.reverse_count, self.delete_count)

    def __len__(self) -> int:
        return len(self.moves)

    def __iter__(self):
        return iter(self.moves)

    def replay(self, g: Dag) -> Dag:
        """Apply the sequence to ``g`` with per-move validation."""
        for move in self.moves:
            g = apply_move(g, move)
        return g

    def prefixes(self, g: Dag):
        """Yield every intermediate graph of a validated replay, ``g`` first."""
        yield g
        for move in self.moves:
            g = apply_move(g, move)
            yield g


def transformation_sequence(a: Dag, b: Dag) -> MoveSequence:
    """Moves carrying ``a`` onto ``b`` through their common UEC.

    Insertions build the reference graph of (a, b); reversals repeatedly fix
    the edge chosen by :func:`find_edge` against the reference graph of
    (b, a); deletions replay the insertions of that second reference graph in
    reverse.  Phase counts are, in order: pairs adjacent only in ``b``, the
    number of oppositely oriented edges between the two reference graphs, and
    pairs adjacent only in ``a``.
    """
    if not same_uec(a, b):
        raise PreconditionError("graphs are not unconditionally equivalent")
    moves: list[EdgeMove] = []
    cur = a
    for v, w in _reference_insertions(a, b):
        move = EdgeMove(MoveKind.INSERT, v, w)
        cur = apply_move(cur, move)
        moves.append(move)
    ins_ba = _reference_insertions(b, a)
    target = b
    for v, w in ins_ba:
        target = apply_move(target, EdgeMove(MoveKind.INSERT, v, w))
    if cur.skeleton() != target.skeleton():
        raise VerificationError(
            "reference graphs of (a, b) and (b, a) have different skeletons"
        )
    remaining = len(delta(cur, target))
    while remaining:
        v, w = find_edge(cur, target)
        move = EdgeMove(MoveKind.REVERSE, v, w)
        cur = apply_move(cur, move)
        moves.append(move)
        now = len(delta(cur, target))
        if now != remaining - 1:
            raise VerificationError(
                f"reversal of {v} -> {w} changed the orientation difference "
                f"by {remaining - now}, expected exactly 1"
            )
        remaining = now
    if cur != target:
        raise VerificationError("reversal phase did not reach the reference graph")
    for v, w in reversed(ins_ba):
        move = EdgeMove(MoveKind.DELETE, v, w)
        cur = apply_move(cur, move)
        moves.append(move)
    if cur != b:
        raise VerificationError("transformation replay did not reach the target")
    return MoveSequence(tuple(moves))


def format_moves(seq: MoveSequence, labels: Sequence[str] | None = None) -> str:
    """Serialize a move sequence, one ``<verb> <tail> <head>`` line each."""
    lines = []
    for m in seq.moves:
        t = labels[m.tail] if labels is not None else str(m.tail)
        h = labels[m.head] if labels is not None else str(m.head)
        lines.append(f"{m.kind.value} {t} {h}")
    return "".join(line + "\n" for line in lines)


def parse_moves(text: str, labels: Sequence[str] | None = None) -> MoveSequence:
    """Parse the serialization produced by :func:`format_moves`.

    ``#`` lines and blank lines are ignored.  With ``labels`` given, node
    tokens are resolved through it; otherwise they must be decimal ids.
    """
    index = {lab: i for i, lab in enumerate(labels)} if labels is not None else None
    moves = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise InputError(f"line {lineno}: expected '<verb> <tail> <head>'")
        verb, t, h = parts
        try:
            kind = MoveKind(verb)
        except ValueError:
            raise InputError(f"line {lineno}: unknown move verb {verb!r}") from None
        try:
            tail = index[t] if index is not None else int(t)
            head = index[h] if index is not None else int(h)
        except (KeyError, ValueError):
            raise InputError(f"line {lineno}: unknown node token") from None
        moves.append(EdgeMove(kind, tail, head))
    return MoveSequence(tuple(moves))
