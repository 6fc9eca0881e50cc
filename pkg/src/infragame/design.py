"""Smallest networks meeting cut requirements.

A requirement asks for edge connectivity in ``[min_lambda, max_lambda]`` and,
optionally, that fewer than ``min_cut`` removals can never leave ``c``
components.  The designer's candidate networks are exactly such minimal
graphs, so their sizes drive the equilibrium utilities.

Sizes are settled in one of two ways.  Either a certified construction
meets a combinatorial lower bound, or (for ``n <= SEARCH_MAX_N``) every
smaller graph is ruled out by a scan of all graphs up to isomorphism.  Otherwise the result
carries an open interval and ``exact`` is false.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import ceil, comb

from networkx.generators.atlas import graph_atlas_g

from .game import EdgeSet
from .topology import (
    NamedTopology,
    degrees,
    edge_connectivity,
    harary,
    has_cut_below,
    least_cut,
    reinforced_ring,
    ring,
    tree,
    with_pendant,
)

SEARCH_MAX_N = 7


@dataclass(frozen=True)
class Requirement:
    """Cut requirement on a network with ``n`` nodes.

    ``c`` above ``n`` (or ``min_cut`` of ``None``) drops the multi-component
    condition.
    """

    n: int
    min_lambda: int
    max_lambda: int | None = None
    c: int = 0
    min_cut: int | None = None

    @property
    def cut_active(self) -> bool:
        return self.min_cut is not None and 2 <= self.c <= self.n and self.min_cut > self.c - 1


@dataclass(frozen=True)
class Design:
    """Outcome of a minimal-size query.

    Attributes:
        lower: Proven lower bound on the minimal size.
        witness: Smallest certified network found, if any.
        exact: True when ``witness`` is known to be minimal, or when
            ``feasible`` is false and that is certain.
        feasible: False when no network on ``n`` nodes qualifies.
    """

    lower: int
    witness: NamedTopology | None
    exact: bool
    feasible: bool = True

    @property
    def size(self) -> int | None:
        return len(self.witness.edges) if self.witness is not None else None


def satisfies(req: Requirement, e: EdgeSet) -> bool:
    n = req.n
    lam = edge_connectivity(n, e)
    if lam < req.min_lambda:
        return False
    if req.max_lambda is not None and lam > req.max_lambda:
        return False
    if req.cut_active and lam >= 1:
        return not has_cut_below(n, e, req.c, req.min_cut)
    return True


def lower_bound(req: Requirement) -> int:
    """Largest of the connectivity, degree, and forest bounds."""
    n, lam = req.n, max(req.min_lambda, 1)
    bound = max(n - 1, ceil(n * lam / 2))
    if req.cut_active:
        c, h = req.c, req.min_cut
        # keeping a spanning forest with c trees costs |E| - n + c removals
        bound = max(bound, h + n - c)
        # isolating the c-1 lowest-degree nodes costs at most their degree sum
        s = max(h, (c - 1) * lam)
        bound = max(bound, ceil((s + (n - c + 1) * ceil(s / (c - 1))) / 2))
    return bound


def _max_cut_complete(n: int, c: int) -> int:
    """Removals needed to split the complete graph into ``c`` components."""
    return comb(n, 2) - comb(n - c + 1, 2)


def _constructions(req: Requirement):
    n = req.n
    if req.max_lambda == 1 or req.min_lambda <= 1:
        yield NamedTopology("Tree", n, tree(n))
    if req.max_lambda == 1:
        if n >= 4:
            yield NamedTopology("Pendant(Ring)", n, with_pendant(ring(n - 1), n))
            for j in range(3, n - 1):
                yield NamedTopology(f"Pendant(Harary({j}))", n, with_pendant(harary(n - 1, j), n))
        return
    if req.min_lambda <= 2 and n >= 4:
        for k in range(1, n // 2 + 1):
            yield NamedTopology(f"ReinforcedRing({k})", n, reinforced_ring(n, k, strict=False))
    for j in range(max(req.min_lambda, 2), n):
        yield NamedTopology(f"Harary({j})", n, harary(n, j))


@lru_cache(maxsize=None)
def partition_masks(n: int) -> dict[int, list[int]]:
    """Crossing-edge bitmasks of every set partition of ``0..n-1``, by part count."""
    index = {e: i for i, e in enumerate(combinations(range(n), 2))}
    result: dict[int, list[int]] = {}

    def grow(v: int, labels: list[int], parts: int) -> None:
        if v == n:
            mask = 0
            for (i, j), bit in index.items():
                if labels[i] != labels[j]:
                    mask |= 1 << bit
            result.setdefault(parts, []).append(mask)
            return
        for p in range(parts + 1):
            labels.append(p)
            grow(v + 1, labels, max(parts, p + 1))
            labels.pop()

    grow(0, [], 0)
    return result


@lru_cache(maxsize=None)
def cut_profiles(n: int) -> list[tuple[EdgeSet, tuple[int, ...]]]:
    """Every graph on ``n <= SEARCH_MAX_N`` nodes up to isomorphism, with cut data.

    Each entry is ``(edges, cuts)`` where ``cuts[c]`` is the fewest removals
    leaving at least ``c`` components (``cuts[0]`` and ``cuts[1]`` are 0).
    Graphs come from the networkx atlas, ordered by link count.
    """
    if n > SEARCH_MAX_N:
        raise ValueError(f"atlas covers n <= {SEARCH_MAX_N}")
    index = {e: i for i, e in enumerate(combinations(range(n), 2))}
    masks = partition_masks(n)
    out = []
    for g in graph_atlas_g():
        if g.number_of_nodes() != n:
            continue
        edges = EdgeSet(g.edges())
        bits = 0
        for e in edges:
            bits |= 1 << index[e]
        cuts = [0, 0] + [min((bits & x).bit_count() for x in masks[c]) for c in range(2, n + 1)]
        # at least c components, not exactly c
        for c in range(n - 1, 1, -1):
            cuts[c] = min(cuts[c], cuts[c + 1])
        out.append((edges, tuple(cuts)))
    out.sort(key=lambda item: len(item[0]))
    return out


def _search(req: Requirement, lo: int, hi: int) -> EdgeSet | None:
    """First atlas graph with ``lo <= |E| < hi`` meeting ``req``."""
    for edges, cuts in cut_profiles(req.n):
        m = len(edges)
        if m < lo:
            continue
        if m >= hi:
            break
        lam = cuts[2]
        if lam < req.min_lambda or (req.max_lambda is not None and lam > req.max_lambda):
            continue
        if req.cut_active and cuts[req.c] < req.min_cut:
            continue
        return edges
    return None


def _greedy(req: Requirement, start: EdgeSet, hi: int) -> EdgeSet | None:
    """Add links one by one, each time the one raising the weakest cut most.

    Links at the last node are never added when a bridge is required, so a
    pendant start node keeps its bridge.  Gives up at ``hi`` links.
    """
    n = req.n
    g = start
    frozen = n - 1 if req.max_lambda == 1 else None
    pool = [e for e in combinations(range(n), 2) if frozen not in e]

    def score(e: EdgeSet) -> int:
        lam = edge_connectivity(n, e)
        if lam < req.min_lambda:
            return lam - req.min_lambda
        if not req.cut_active:
            return 0
        return min(least_cut(n, e, req.c, req.min_cut) - req.min_cut, 0)

    current = score(g)
    while current < 0:
        if len(g) + 1 >= hi:
            return None
        deg = degrees(n, g)
        low = min(deg[v] for v in range(n) if v != frozen)
        # weakest cuts isolate low-degree nodes, so only join those
        near = [e for e in pool if e not in g and max(deg[e[0]], deg[e[1]]) <= low + 1]
        options = [(score(g | EdgeSet([e])), e) for e in near or [e for e in pool if e not in g]]
        if not options:
            return None
        value, edge = max(options, key=lambda item: (item[0], [-x for x in item[1]]))
        g = g | EdgeSet([edge])
        current = value
    return g if satisfies(req, g) else None


@lru_cache(maxsize=None)
def minimal_network(req: Requirement, improve: bool = True, size_cap: int | None = None) -> Design:
    """Smallest network satisfying ``req``, certified where possible.

    With ``improve`` set and ``n`` beyond the atlas, a greedy augmentation
    looks for a witness matching the lower bound, trying only sizes up to
    ``size_cap``.
    """
    n = req.n
    lo = lower_bound(req)
    if req.min_lambda > n - 1:
        return Design(lo, None, exact=True, feasible=False)
    if req.cut_active and req.min_cut > _max_cut_complete(n, req.c):
        return Design(lo, None, exact=True, feasible=False)
    if lo > comb(n, 2):
        return Design(lo, None, exact=True, feasible=False)

    best = None
    for topo in _constructions(req):
        size = len(topo.edges)
        if best is not None and size >= len(best.edges):
            continue
        if size < lo or not satisfies(req, topo.edges):
            continue
        best = topo
        if size == lo:
            return Design(lo, best, exact=True)

    if n <= SEARCH_MAX_N:
        hi = len(best.edges) if best is not None else comb(n, 2) + 1
        found = _search(req, lo, hi)
        if found is not None:
            return Design(lo, NamedTopology("Minimal", n, found), exact=True)
        if best is None:
            return Design(lo, None, exact=True, feasible=False)
        return Design(lo, best, exact=True)
    if not improve:
        return Design(lo, best, exact=False)
    starts = [tree(n)]
    if req.max_lambda == 1 and n >= 4:
        starts.append(with_pendant(ring(n - 1), n))
    elif req.min_lambda >= 2:
        starts = [harary(n, req.min_lambda)]
    for start in starts:
        hi = len(best.edges) if best is not None else comb(n, 2) + 1
        if size_cap is not None:
            hi = min(hi, size_cap + 1)
        found = _greedy(req, start, hi)
        if found is not None:
            best = NamedTopology("Augmented", n, found)
            if len(found) == lo:
                return Design(lo, best, exact=True)
    return Design(lo, best, exact=False)
