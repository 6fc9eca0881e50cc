"""Network constructions and cut analyses.

The constructors return :class:`~infragame.game.EdgeSet` values on nodes
``0..n-1``.  Cut queries either use networkx max-flow (edge connectivity)
or an exact branch-and-bound over vertex partitions (multi-component cuts).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from math import ceil

import networkx as nx

from .errors import ConstructionMismatch, InvalidInput
from .game import EdgeSet, count_components


def _check_n(n: int, minimum: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int):
        raise InvalidInput(f"n must be an integer, got {n!r}")
    if n < minimum:
        raise InvalidInput(f"n must be at least {minimum}, got {n}")


def tree(n: int) -> EdgeSet:
    """Canonical spanning tree: the path ``0 - 1 - ... - n-1``."""
    _check_n(n, 2)
    return EdgeSet((i, i + 1) for i in range(n - 1))


def harary(n: int, k: int) -> EdgeSet:
    """Harary graph H(k, n): ``k``-edge-connected with ``ceil(n*k/2)`` links.

    For ``k == 1`` the classical count ``ceil(n/2)`` cannot give a connected
    graph once ``n >= 4``, so the path is returned instead.
    """
    _check_n(n, 2)
    if isinstance(k, bool) or not isinstance(k, int) or not 1 <= k <= n - 1:
        raise InvalidInput(f"Harary degree k must satisfy 1 <= k <= n-1, got k={k}, n={n}")
    if k == 1:
        return tree(n)
    edges = set()
    for offset in range(1, k // 2 + 1):
        for i in range(n):
            edges.add(frozenset((i, (i + offset) % n)))
    if k % 2 == 1:
        if n % 2 == 0:
            for i in range(n // 2):
                edges.add(frozenset((i, i + n // 2)))
        else:
            half = (n + 1) // 2
            edges.add(frozenset((0, (n - 1) // 2)))
            edges.add(frozenset((0, half)))
            for i in range(1, (n - 1) // 2):
                edges.add(frozenset((i, i + half)))
    return EdgeSet(tuple(e) for e in edges)


def ring(n: int) -> EdgeSet:
    """The n-cycle, i.e. ``harary(n, 2)``."""
    _check_n(n, 3)
    return harary(n, 2)


def reinforced_ring_size(n: int, k: int) -> int:
    """Closed-form link count ``n + floor(n/k) + ceil(floor(n/k)/2)``."""
    m = n // k
    return n + m + (m + 1) // 2


def reinforced_ring(n: int, k: int, *, strict: bool = True) -> EdgeSet:
    """Ring reinforced by chords between consecutive multiples of ``k``.

    Chords join ``j*k`` to ``(j+1)*k mod n``.  If ``floor(n/k)`` is even the
    last multiple is tied back to node 0, otherwise node 0 gets one chord to
    node ``n // 2``.  Self-loops and duplicate links are dropped.

    With ``strict`` set, a link count different from
    :func:`reinforced_ring_size` raises :class:`ConstructionMismatch`.
    """
    _check_n(n, 4)
    if isinstance(k, bool) or not isinstance(k, int) or k < 1 or 2 * k > n:
        raise InvalidInput(f"reinforced ring needs 1 <= k <= n/2, got k={k}, n={n}")
    m = n // k
    edges = set(ring(n))
    chords = [(j * k % n, (j + 1) * k % n) for j in range(1, m)]
    if m % 2 == 0:
        chords.append((m * k % n, 0))
    else:
        chords.append((0, n // 2))
    for i, j in chords:
        if i != j:
            edges.add((min(i, j), max(i, j)))
    result = EdgeSet(edges)
    expected = reinforced_ring_size(n, k)
    if strict and len(result) != expected:
        raise ConstructionMismatch(
            f"reinforced ring ({n}, {k}) has {len(result)} links, "
            f"closed form gives {expected}",
            expected=expected,
            built=len(result),
            edges=result,
        )
    return result


def with_pendant(core: EdgeSet, n: int) -> EdgeSet:
    """Attach node ``n-1`` to node 0 of a graph on nodes ``0..n-2``."""
    return core | EdgeSet([(0, n - 1)])


@dataclass(frozen=True)
class NamedTopology:
    """An edge set tagged with the construction that produced it."""

    kind: str
    n: int
    edges: EdgeSet

    def to_json(self) -> dict:
        return {"kind": self.kind, "n": self.n, "edges": self.edges.to_json()}

    def to_edgelist(self) -> str:
        return "".join(f"{i} {j}\n" for i, j in self.edges)

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def named(kind: str, n: int, k: int | None = None) -> NamedTopology:
    """Build a topology by name: ``tree``, ``ring``, ``harary``, ``reinforced``."""
    kind = kind.lower()
    if kind == "empty":
        _check_n(n, 2)
        return NamedTopology("Empty", n, EdgeSet())
    if kind == "tree":
        return NamedTopology("Tree", n, tree(n))
    if kind == "ring":
        return NamedTopology("Ring", n, ring(n))
    if k is None:
        raise InvalidInput(f"topology {kind!r} needs a k argument")
    if kind == "harary":
        return NamedTopology(f"Harary({k})", n, harary(n, k))
    if kind in ("reinforced", "reinforced_ring", "reinforcedring"):
        return NamedTopology(f"ReinforcedRing({k})", n, reinforced_ring(n, k))
    raise InvalidInput(f"unknown topology kind {kind!r}")


def component_count(n: int, e: EdgeSet) -> int:
    e.check_nodes(n)
    return count_components(n, e)


def degrees(n: int, e: EdgeSet) -> list[int]:
    deg = [0] * n
    for i, j in e:
        deg[i] += 1
        deg[j] += 1
    return deg


def min_degree(n: int, e: EdgeSet) -> int:
    e.check_nodes(n)
    return min(degrees(n, e))


def to_networkx(n: int, e: EdgeSet) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(e)
    return g


def edge_connectivity(n: int, e: EdgeSet, method: str = "flow") -> int:
    """Smallest number of links whose removal disconnects the graph.

    ``method="flow"`` uses networkx max-flow; ``method="enumerate"`` tries
    every removal subset in increasing size and is meant for small graphs.
    """
    _check_n(n, 2)
    e.check_nodes(n)
    if count_components(n, e) > 1:
        return 0
    if method == "flow":
        return nx.edge_connectivity(to_networkx(n, e))
    if method == "enumerate":
        return min_cut_by_removal(n, e, 2)
    raise InvalidInput(f"unknown method {method!r}")


def min_cut_by_removal(n: int, e: EdgeSet, c: int) -> int:
    """Reference implementation of :func:`min_cut_to_components`.

    Enumerates removal subsets by increasing size; exponential in ``|e|``.
    """
    edges = list(e)
    for size in range(len(edges) + 1):
        for removed in combinations(range(len(edges)), size):
            gone = set(removed)
            kept = [edges[i] for i in range(len(edges)) if i not in gone]
            if count_components(n, kept) >= c:
                return size
    raise InvalidInput(f"cannot reach {c} components on {n} nodes")


def _bfs_order(n: int, adj: list[list[int]]) -> list[int]:
    seen = [False] * n
    order = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        queue = [start]
        for v in queue:
            order.append(v)
            for u in sorted(adj[v]):
                if not seen[u]:
                    seen[u] = True
                    queue.append(u)
    return order


def least_cut(n: int, e: EdgeSet, c: int, bound: int) -> int:
    """Least crossing count below ``bound`` over partitions into ``c`` parts.

    Returns ``bound`` when no partition does better.  Parts are assigned in
    restricted-growth order over a BFS ordering so each partition is seen
    once and crossings accumulate early.
    """
    adj: list[list[int]] = [[] for _ in range(n)]
    for i, j in e:
        adj[i].append(j)
        adj[j].append(i)
    order = _bfs_order(n, adj)
    pos = {v: idx for idx, v in enumerate(order)}
    earlier = [[pos[u] for u in adj[v] if pos[u] < pos[v]] for v in order]
    part = [0] * n
    best = bound

    def descend(idx: int, used: int, cost: int) -> None:
        nonlocal best
        if cost >= best:
            return
        if idx == n:
            if used == c:
                best = cost
            return
        if used + (n - idx) < c:
            return
        back = earlier[idx]
        top = min(used, c - 1)
        hits = [0] * (top + 1)
        for q in back:
            hits[part[q]] += 1
        # try the part holding most earlier neighbours first
        for p in sorted(range(top + 1), key=hits.__getitem__, reverse=True):
            part[idx] = p
            descend(idx + 1, used + (p == used), cost + len(back) - hits[p])

    descend(0, 0, 0)
    return best


def _check_cut_args(n: int, e: EdgeSet, c: int) -> None:
    _check_n(n, 2)
    e.check_nodes(n)
    if not 2 <= c <= n:
        raise InvalidInput(f"component target must satisfy 2 <= c <= n, got {c}")
    if count_components(n, e) != 1:
        raise InvalidInput("min_cut_to_components needs a connected graph")


def min_cut_to_components(n: int, e: EdgeSet, c: int) -> int:
    """Fewest link removals that leave at least ``c`` components."""
    _check_cut_args(n, e, c)
    # a spanning forest with c trees is always reachable
    return least_cut(n, e, c, len(e) - n + c + 1)


def has_cut_below(n: int, e: EdgeSet, c: int, limit: int) -> bool:
    """True iff fewer than ``limit`` removals can leave ``c`` components."""
    _check_cut_args(n, e, c)
    if len(e) - n + c < limit:
        return True
    return least_cut(n, e, c, limit) < limit
