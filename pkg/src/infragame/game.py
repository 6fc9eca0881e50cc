"""Game data model: parameters, edge sets, profiles, payoffs and situations.

All quantities are exact :class:`fractions.Fraction` values.  Nodes are the
integers ``0..n-1`` and links are unordered pairs stored as ``(i, j)`` with
``i < j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Union

from .errors import InconsistentSituation, InvalidInput, InvalidProfile

RationalLike = Union[Fraction, int, str]

Edge = tuple[int, int]


def parse_rational(value: RationalLike) -> Fraction:
    """Convert ``value`` to an exact fraction.

    Accepts ints, fractions and strings written as decimals (``"0.125"``) or
    ``"p/q"``.  Floats are refused because their binary expansion is not the
    number the user typed.
    """
    if isinstance(value, bool):
        raise InvalidInput(f"not a rational: {value!r}")
    if isinstance(value, (Fraction, int)):
        return Fraction(value)
    if isinstance(value, float):
        raise InvalidInput(
            f"float {value!r} is not exact; pass a string such as '0.3' or '3/10'"
        )
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"cannot parse rational {value!r}") from exc
    raise InvalidInput(f"not a rational: {value!r}")


@dataclass(frozen=True)
class GameParams:
    """Public parameters of the protection/recovery game.

    Attributes:
        n: Number of nodes (at least 2).
        c_d: Designer cost per created link.
        c_a: Adversary cost per removed link.
        tau: Fraction of the horizon before the attack.
        tau_r: Fraction between the attack and the healing phase.
    """

    n: int
    c_d: Fraction
    c_a: Fraction
    tau: Fraction
    tau_r: Fraction

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or not isinstance(self.n, int):
            raise InvalidInput(f"n must be an integer, got {self.n!r}")
        for name in ("c_d", "c_a", "tau", "tau_r"):
            object.__setattr__(self, name, parse_rational(getattr(self, name)))
        if self.n < 2:
            raise InvalidInput(f"n must be at least 2, got {self.n}")
        if self.c_d <= 0 or self.c_a <= 0:
            raise InvalidInput("link costs c_d and c_a must be positive")
        if self.tau < 0 or self.tau_r < 0:
            raise InvalidInput("tau and tau_r must be nonnegative")
        if self.tau + self.tau_r > 1:
            raise InvalidInput("tau + tau_r must not exceed 1")

    @property
    def heal_window(self) -> Fraction:
        """Fraction of the horizon after healing, ``1 - tau - tau_r``."""
        return 1 - self.tau - self.tau_r

    def replace(self, **changes) -> "GameParams":
        values = {f: getattr(self, f) for f in ("n", "c_d", "c_a", "tau", "tau_r")}
        values.update(changes)
        return GameParams(**values)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "c_d": str(self.c_d),
            "c_a": str(self.c_a),
            "tau": str(self.tau),
            "tau_r": str(self.tau_r),
        }


def _normalize_edge(edge: Iterable[int]) -> Edge:
    try:
        i, j = edge
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"edge must be a pair, got {edge!r}") from exc
    if isinstance(i, bool) or isinstance(j, bool) or not isinstance(i, int) or not isinstance(j, int):
        raise InvalidInput(f"edge endpoints must be integers, got {edge!r}")
    if i == j:
        raise InvalidInput(f"self-loop {edge!r} is not a link")
    if i < 0 or j < 0:
        raise InvalidInput(f"negative endpoint in {edge!r}")
    return (i, j) if i < j else (j, i)


class EdgeSet:
    """Immutable canonical set of undirected links.

    Iteration yields the pairs in lexicographic order; equality and hashing
    are set-based.  Set operators return new ``EdgeSet`` values.
    """

    __slots__ = ("_edges", "_set")

    def __init__(self, edges: Iterable[Iterable[int]] = ()):
        canon = {_normalize_edge(e) for e in edges}
        self._set = frozenset(canon)
        self._edges = tuple(sorted(canon))

    @classmethod
    def _from_canonical(cls, edges: Iterable[Edge]) -> "EdgeSet":
        obj = cls.__new__(cls)
        obj._set = frozenset(edges)
        obj._edges = tuple(sorted(obj._set))
        return obj

    def __iter__(self) -> Iterator[Edge]:
        return iter(self._edges)

    def __len__(self) -> int:
        return len(self._edges)

    def __contains__(self, edge) -> bool:
        try:
            return _normalize_edge(edge) in self._set
        except InvalidInput:
            return False

    def __eq__(self, other) -> bool:
        if isinstance(other, EdgeSet):
            return self._set == other._set
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._set)

    def __repr__(self) -> str:
        return f"EdgeSet({list(self._edges)!r})"

    def __sub__(self, other: "EdgeSet") -> "EdgeSet":
        return EdgeSet._from_canonical(self._set - other._set)

    def __or__(self, other: "EdgeSet") -> "EdgeSet":
        return EdgeSet._from_canonical(self._set | other._set)

    def __and__(self, other: "EdgeSet") -> "EdgeSet":
        return EdgeSet._from_canonical(self._set & other._set)

    def __le__(self, other: "EdgeSet") -> bool:
        return self._set <= other._set

    def isdisjoint(self, other: "EdgeSet") -> bool:
        return self._set.isdisjoint(other._set)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    def max_node(self) -> int:
        return max((j for _, j in self._edges), default=-1)

    def check_nodes(self, n: int) -> None:
        """Raise :class:`InvalidInput` unless every endpoint is below ``n``."""
        top = self.max_node()
        if top >= n:
            raise InvalidInput(f"edge endpoint {top} out of range for n={n}")

    def to_json(self) -> list[list[int]]:
        return [[i, j] for i, j in self._edges]

    @classmethod
    def from_json(cls, data) -> "EdgeSet":
        return cls(tuple(pair) for pair in data)


EMPTY = EdgeSet()


def component_labels(n: int, edges: Iterable[Edge]) -> list[int]:
    """Label each node with the smallest node index of its component."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            if ri < rj:
                parent[rj] = ri
            else:
                parent[ri] = rj
    return [find(v) for v in range(n)]


def count_components(n: int, edges: Iterable[Edge]) -> int:
    return len(set(component_labels(n, edges)))


def reconnect(n: int, e: EdgeSet) -> EdgeSet:
    """Fewest links joining every component of ``e``.

    The lowest node of each component is taken as its representative and
    consecutive representatives are linked, so the result is deterministic.
    """
    reps = sorted(set(component_labels(n, e)))
    return EdgeSet(zip(reps, reps[1:]))


def is_connected(n: int, e: EdgeSet) -> bool:
    """True iff the graph on nodes ``0..n-1`` with links ``e`` is connected."""
    if n < 1:
        raise InvalidInput(f"n must be positive, got {n}")
    e.check_nodes(n)
    return count_components(n, e) == 1


@dataclass(frozen=True)
class StrategyProfile:
    """The triple (initial network, attacked links, healing links)."""

    e1: EdgeSet
    ea: EdgeSet
    e2: EdgeSet

    def validate(self, n: int | None = None) -> None:
        if not self.ea <= self.e1:
            raise InvalidProfile("attacked links must belong to the initial network")
        if not self.e2.isdisjoint(self.e1 - self.ea):
            raise InvalidProfile("healing links must not already be present")
        if n is not None:
            for part in (self.e1, self.ea, self.e2):
                part.check_nodes(n)

    @property
    def after_attack(self) -> EdgeSet:
        return self.e1 - self.ea

    @property
    def after_heal(self) -> EdgeSet:
        return (self.e1 - self.ea) | self.e2

    def to_json(self) -> dict:
        return {"e1": self.e1.to_json(), "ea": self.ea.to_json(), "e2": self.e2.to_json()}


class Situation(NamedTuple):
    """One feasible row of the connectivity-indicator table."""

    label: str
    indicators: tuple[int, int, int]


SITUATIONS: dict[tuple[int, int, int], str] = {
    (1, 1, 1): "S1",
    (1, 0, 1): "S2",
    (1, 0, 0): "S3",
    (0, 0, 1): "S4",
    (0, 0, 0): "S5",
}
INDICATORS = {label: triple for triple, label in SITUATIONS.items()}


def situation_from_indicators(triple: tuple[int, int, int]) -> Situation:
    try:
        return Situation(SITUATIONS[triple], triple)
    except KeyError:
        raise InconsistentSituation(
            f"indicator triple {triple} cannot occur: connectivity is monotone "
            "under link removal and addition"
        ) from None


class Payoffs(NamedTuple):
    u_d: Fraction
    u_a: Fraction


def indicators(n: int, p: StrategyProfile) -> tuple[int, int, int]:
    return (
        int(is_connected(n, p.e1)),
        int(is_connected(n, p.after_attack)),
        int(is_connected(n, p.after_heal)),
    )


def payoffs(params: GameParams, p: StrategyProfile) -> Payoffs:
    """Evaluate designer and adversary utilities for a complete profile."""
    p.validate(params.n)
    before, during, after = indicators(params.n, p)
    w = params.heal_window
    u_d = (
        w * after
        + params.tau * before
        + params.tau_r * during
        - params.c_d * (len(p.e1) + len(p.e2))
    )
    u_a = (
        w * (1 - after)
        + params.tau * (1 - before)
        + params.tau_r * (1 - during)
        - params.c_a * len(p.ea)
    )
    return Payoffs(u_d, u_a)


def classify(n: int, p: StrategyProfile) -> Situation:
    """Map a profile to its row of the situation table."""
    p.validate(n)
    return situation_from_indicators(indicators(n, p))
