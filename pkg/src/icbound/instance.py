"""Index coding instances: receivers, closure, lexicographic products.

An instance is a ground set of messages plus receivers (want, knows): the
receiver demands message `want` and already holds the messages in `knows`.
Undirected graphs embed as one receiver per vertex knowing its neighbors.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterable

from .errors import InputError, ResourceCapError
from .groundset import GroundSet, bit_indices, popcount


class ClosureMode(Enum):
    SINGLE_STEP = "single"
    ITERATED = "iterated"


class IndexCodingInstance:
    """Immutable instance; receivers are deduplicated and sorted."""

    __slots__ = ("messages", "receivers")

    def __init__(self, messages: GroundSet, receivers: Iterable[tuple[int, int]]):
        if messages.n == 0:
            raise InputError("an instance needs at least one message")
        clean = set()
        for want, knows in receivers:
            if not 0 <= want < messages.n:
                raise InputError(f"receiver wants unknown message index {want}")
            messages.check_mask(knows)
            if knows & (1 << want):
                raise InputError("a receiver cannot know the message it wants")
            clean.add((want, knows))
        self.messages = messages
        self.receivers = tuple(sorted(clean))

    @classmethod
    def from_receivers(cls, messages: GroundSet,
                       pairs: Iterable[tuple[object, Iterable]]) -> "IndexCodingInstance":
        """Label-level constructor: pairs of (wanted label, known labels)."""
        return cls(messages, ((messages.index(w), messages.mask_of(ks))
                              for w, ks in pairs))

    @property
    def n(self) -> int:
        return self.messages.n

    def closure(self, mask: int, mode: ClosureMode = ClosureMode.SINGLE_STEP) -> int:
        """Messages decodable from the set: mask plus every wanted message
        whose receiver's side information lies inside mask. Single-step adds
        one round; iterated repeats to a fixed point."""
        self.messages.check_mask(mask)
        current = mask
        while True:
            grown = current
            for want, knows in self.receivers:
                if knows & ~current == 0:
                    grown |= 1 << want
            if mode is ClosureMode.SINGLE_STEP or grown == current:
                return grown
            current = grown

    def cst(self, s: int, t: int, mode: ClosureMode = ClosureMode.SINGLE_STEP) -> int:
        """Count of t's messages not decodable from s."""
        return popcount(t & ~self.closure(s, mode))

    def dst(self, s: int, t: int, mode: ClosureMode = ClosureMode.SINGLE_STEP) -> int:
        """Count of t's messages decodable from s without being in s."""
        return popcount(t & self.closure(s, mode) & ~s)

    def is_nondegenerate(self) -> bool:
        """True when every receiver has nonempty side information."""
        return all(knows for _, knows in self.receivers)

    def lex_product(self, other: "IndexCodingInstance") -> "IndexCodingInstance":
        """Lexicographic product: self is the outer factor, other the inner.

        Message (g, f) gets label "g:f"; the receiver for the pair of
        receivers (wg, Sg) and (wf, Sf) wants (wg, wf) and knows all inner
        copies of Sg plus Sf inside wg's own block.
        """
        ng, nf = self.n, other.n
        labels = [f"{g}:{f}" for g in self.messages.labels
                  for f in other.messages.labels]
        gs = GroundSet(labels)
        block = (1 << nf) - 1
        receivers = []
        for wg, sg in self.receivers:
            outer_knows = 0
            for i in bit_indices(sg):
                outer_knows |= block << (i * nf)
            for wf, sf in other.receivers:
                want = wg * nf + wf
                knows = outer_knows | (sf << (wg * nf))
                receivers.append((want, knows))
        return IndexCodingInstance(gs, receivers)

    def independence_number(self, cap: int = 40) -> int:
        """Exact graph independence number by branch and bound.

        Only for instances that are graphs in disguise: one receiver per
        message and a symmetric knows relation (side-information graphs and
        their lexicographic products). Anything else is out of scope here.
        """
        if self.n > cap:
            raise ResourceCapError(
                f"branch and bound capped at {cap} messages, instance has {self.n}")
        adj = [None] * self.n
        for want, knows in self.receivers:
            if adj[want] is not None:
                raise InputError("independence number needs a graph instance "
                                 "(one receiver per message)")
            adj[want] = knows
        for v, mask in enumerate(adj):
            if mask is None:
                raise InputError("independence number needs a graph instance "
                                 "(every message demanded)")
            for u in bit_indices(mask):
                if not adj[u] >> v & 1:
                    raise InputError("independence number needs a graph "
                                     "instance (symmetric side information)")
        # Most-constrained vertices first shrinks the search tree.
        vertices = sorted(range(self.n), key=lambda v: (-popcount(adj[v]), v))
        best = 0

        def grow(chosen: int, count: int, candidates: list[int]):
            nonlocal best
            if count > best:
                best = count
            while candidates:
                if count + len(candidates) <= best:
                    return
                v = candidates[0]
                candidates = candidates[1:]
                if adj[v] & chosen == 0:
                    grow(chosen | (1 << v), count + 1,
                         [u for u in candidates if u != v and not adj[v] >> u & 1])
                # falling through drops v and continues with the remainder

        grow(0, 0, vertices)
        return best


def from_graph(vertices: Iterable, edges: Iterable[tuple]) -> IndexCodingInstance:
    """Instance of an undirected graph: each vertex knows its neighbors."""
    gs = GroundSet(vertices)
    neighbors = [0] * gs.n
    for edge in edges:
        try:
            u, v = edge
        except (TypeError, ValueError):
            raise InputError(f"edge {edge!r} is not a pair")
        ui, vi = gs.index(u), gs.index(v)
        if ui == vi:
            raise InputError(f"self-loop at {u!r}")
        neighbors[ui] |= 1 << vi
        neighbors[vi] |= 1 << ui
    return IndexCodingInstance(gs, ((v, neighbors[v]) for v in range(gs.n)))


def cycle_instance(length: int = 5) -> IndexCodingInstance:
    """The n-cycle with vertices 1..n; the running 5-cycle example."""
    if length < 3:
        raise InputError("a cycle needs at least 3 vertices")
    verts = list(range(1, length + 1))
    edges = [(verts[i], verts[(i + 1) % length]) for i in range(length)]
    return from_graph(verts, edges)
