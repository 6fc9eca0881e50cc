"""Ground-truth equilibria by exhaustive backward induction.

Every initial network on ``n <= OracleConfig.max_n`` nodes is tried.  The
adversary's reply and the designer's healing are then computed with the
tie-breakers applied literally:

* healing: reconnect only if strictly profitable, using the fewest links;
* adversary: maximise utility, then the number of removals, then take the
  lexicographically smallest edge list;
* designer: maximise utility, then minimise created links, then take the
  lexicographically smallest initial network.

:func:`best_attack` and :func:`best_heal` are straightforward reference
implementations.  :func:`brute_force_spe` uses the same rules through
precomputed cut tables so that whole parameter grids stay cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import lcm

from .design import partition_masks
from .errors import EnumerationCap, InvalidInput
from .game import (
    EMPTY,
    SITUATIONS,
    EdgeSet,
    GameParams,
    StrategyProfile,
    classify,
    count_components,
    payoffs,
    reconnect,
)
from .solver import SpeCandidate, SpeSolution, regime_of, thresholds

ATTACK_ENUMERATION_CAP = 25


@dataclass(frozen=True)
class OracleConfig:
    """Enumeration limits.

    Attributes:
        max_n: Largest node count accepted (at most 6).
        parallelism: Worker processes for grid runs; 1 keeps everything
            in-process.
    """

    max_n: int = 5
    parallelism: int = 1

    def __post_init__(self) -> None:
        if not 2 <= self.max_n <= 6:
            raise InvalidInput("oracle max_n must lie in 2..6")
        if self.parallelism < 1:
            raise InvalidInput("parallelism must be positive")


def best_heal(params: GameParams, e1: EdgeSet, ea: EdgeSet) -> EdgeSet:
    """Designer's stage-3 reply: all-or-nothing reconnection."""
    if not ea <= e1:
        raise InvalidInput("attacked links must belong to the initial network")
    n = params.n
    rest = e1 - ea
    c = count_components(n, rest)
    if c == 1 or params.heal_window <= (c - 1) * params.c_d:
        return EMPTY
    return reconnect(n, rest)


def _attack_utility(params: GameParams, e1: EdgeSet, ea: EdgeSet) -> Fraction:
    e2 = best_heal(params, e1, ea)
    return payoffs(params, StrategyProfile(e1, ea, e2)).u_a


def best_attack(params: GameParams, e1: EdgeSet) -> EdgeSet:
    """Adversary's stage-2 reply to ``e1`` under the designer's healing."""
    e1.check_nodes(params.n)
    if len(e1) > ATTACK_ENUMERATION_CAP:
        raise EnumerationCap(f"{len(e1)} links exceed the attack enumeration cap")
    edges = list(e1)
    # a removal set with |ea| * c_a > 1 is worse than doing nothing
    top = min(len(edges), int(1 / params.c_a))
    best, best_key = EMPTY, (_attack_utility(params, e1, EMPTY), 0)
    for size in range(1, top + 1):
        for chosen in combinations(edges, size):
            ea = EdgeSet(chosen)
            key = (_attack_utility(params, e1, ea), size)
            if key > best_key:
                best, best_key = ea, key
    return best


def respond(params: GameParams, e1: EdgeSet) -> StrategyProfile:
    ea = best_attack(params, e1)
    return StrategyProfile(e1, ea, best_heal(params, e1, ea))


# -- fast exhaustive search ------------------------------------------------


@lru_cache(maxsize=None)
def _tables(n: int):
    """Per-mask link count, component count and cut vector for ``K_n`` subgraphs."""
    edges = list(combinations(range(n), 2))
    masks = partition_masks(n)
    rows = []
    for g in range(1 << len(edges)):
        cuts = [0] * (n + 2)
        for c in range(2, n + 1):
            cuts[c] = min((g & x).bit_count() for x in masks[c])
        for c in range(n - 1, 1, -1):
            cuts[c] = min(cuts[c], cuts[c + 1])
        comps = next(c for c in range(n, 0, -1) if c == 1 or cuts[c] == 0)
        rows.append((g.bit_count(), comps, tuple(cuts)))
    return edges, rows


def _scale(params: GameParams) -> int:
    return lcm(params.c_d.denominator, params.c_a.denominator,
               params.tau.denominator, params.tau_r.denominator)


def _mask_edges(edges, g: int) -> tuple:
    return tuple(e for i, e in enumerate(edges) if g >> i & 1)


def _lexmin_attack(n: int, e1: tuple, size: int, outcomes: set[int]) -> EdgeSet:
    for chosen in combinations(e1, size):
        if count_components(n, EdgeSet(e1) - EdgeSet(chosen)) in outcomes:
            return EdgeSet(chosen)
    raise AssertionError("no removal set reaches the target outcome")


def _designer_scan(params: GameParams):
    """Yield ``(u_d, created, situation, g, attack)`` for every initial network mask.

    ``attack`` is ``(size, outcomes)``: the adversary removes ``size`` links
    and leaves a component count in ``outcomes``.  Utilities are integers
    scaled by the common denominator of the parameters.
    """
    n = params.n
    edges, rows = _tables(n)
    d = _scale(params)
    cd, ca = int(params.c_d * d), int(params.c_a * d)
    tau, tau_r = int(params.tau * d), int(params.tau_r * d)
    w = d - tau - tau_r

    def outcome(c, con1):
        healed = c > 1 and w > (c - 1) * cd
        con2 = c == 1
        con3 = con2 or healed
        u_a = w * (not con3) + tau * (not con1) + tau_r * (not con2)
        u_d = w * con3 + tau * con1 + tau_r * con2
        label = SITUATIONS[(int(con1), int(con2), int(con3))]
        return u_a, u_d, (c - 1) if healed else 0, label

    for g, (size, c1, cuts) in enumerate(rows):
        con1 = c1 == 1
        options = []
        for c in range(c1, n + 1):
            s = 0 if c == c1 else cuts[c]
            u_a, u_d, heal, label = outcome(c, con1)
            options.append((u_a - s * ca, s, c, u_d, heal, label))
        best_ua = max(o[0] for o in options)
        best_s = max(o[1] for o in options if o[0] == best_ua)
        hits = [o for o in options if o[0] == best_ua and o[1] == best_s]
        results = {(o[3] - cd * (size + o[4]), size + o[4], o[5]) for o in hits}
        if len(results) == 1:
            u_d, created, label = results.pop()
            yield u_d, created, label, g, (best_s, frozenset(o[2] for o in hits))
        else:
            # the adversary's lexicographic tie-break decides what gets healed
            e1 = _mask_edges(edges, g)
            ea = _lexmin_attack(n, e1, best_s, {o[2] for o in hits})
            c = count_components(n, EdgeSet(e1) - ea)
            u_a, u_d, heal, label = outcome(c, con1)
            yield u_d - cd * (size + heal), size + heal, label, g, (best_s, frozenset([c]))


def _profile_for(params: GameParams, g: int, attack) -> StrategyProfile:
    n = params.n
    edges, _ = _tables(n)
    e1 = _mask_edges(edges, g)
    size, outcomes = attack
    ea = _lexmin_attack(n, e1, size, set(outcomes)) if size else EMPTY
    e1 = EdgeSet(e1)
    return StrategyProfile(e1, ea, best_heal(params, e1, ea))


def _candidate(params: GameParams, profile: StrategyProfile, reason: str) -> SpeCandidate:
    pay = payoffs(params, profile)
    return SpeCandidate(
        situation=classify(params.n, profile).label,
        feasible=True,
        reason=reason,
        e1_size=len(profile.e1),
        ea_size=len(profile.ea),
        e2_size=len(profile.e2),
        u_d=pay.u_d,
        u_a=pay.u_a,
        profile=profile,
        e1_kind="Enumerated",
    )


def brute_force_spe(params: GameParams, cfg: OracleConfig | None = None) -> SpeSolution:
    """Exact equilibrium by enumerating every initial network.

    The returned candidate list holds the designer's best profile within
    each situation that some initial network leads to.
    """
    cfg = cfg or OracleConfig()
    if params.n > cfg.max_n:
        raise EnumerationCap(f"n={params.n} exceeds oracle max_n={cfg.max_n}")
    edges, _ = _tables(params.n)

    def lex(g):
        return _mask_edges(edges, g)

    best = None
    per_situation = {}
    for u_d, created, label, g, attack in _designer_scan(params):
        key = (-u_d, created)
        if best is None or key < best[0] or (key == best[0] and lex(g) < lex(best[1])):
            best = (key, g, attack)
        prior = per_situation.get(label)
        if prior is None or key < prior[0] or (key == prior[0] and lex(g) < lex(prior[1])):
            per_situation[label] = (key, g, attack)

    _, g, attack = best
    chosen = _candidate(params, _profile_for(params, g, attack), "best over all initial networks")
    cands = [
        _candidate(params, _profile_for(params, sg, sa), "best initial network in this situation")
        for label, (_, sg, sa) in sorted(per_situation.items())
    ]
    return SpeSolution(regime_of(params), chosen, cands, thresholds(params), params,
                       ("exhaustive backward induction",))


def audit_subgame_perfection(params: GameParams, profile: StrategyProfile) -> list[str]:
    """Look for profitable one-stage deviations; returns their descriptions.

    Stage 3 tries every healing set, stage 2 every removal set (followed by
    optimal healing) and stage 1 every initial network (followed by optimal
    replies).  Exponential; intended for ``n <= 4``.
    """
    n = params.n
    all_edges = EdgeSet(combinations(range(n), 2))
    ref = payoffs(params, profile)
    problems = []

    rest = profile.after_attack
    free = list(all_edges - rest)
    for size in range(len(free) + 1):
        for e2 in combinations(free, size):
            alt = payoffs(params, StrategyProfile(profile.e1, profile.ea, EdgeSet(e2)))
            if alt.u_d > ref.u_d:
                problems.append(f"healing with {list(e2)} gives designer {alt.u_d}")
    if best_heal(params, profile.e1, profile.ea) != profile.e2:
        problems.append("healing set differs from the designer's reply")

    for size in range(len(profile.e1) + 1):
        for ea in combinations(list(profile.e1), size):
            ea = EdgeSet(ea)
            alt = payoffs(params, StrategyProfile(profile.e1, ea, best_heal(params, profile.e1, ea)))
            if alt.u_a > ref.u_a:
                problems.append(f"removing {ea.to_json()} gives adversary {alt.u_a}")

    ordered = list(all_edges)
    for size in range(len(ordered) + 1):
        for e1 in combinations(ordered, size):
            alt = payoffs(params, respond(params, EdgeSet(e1)))
            if alt.u_d > ref.u_d:
                problems.append(f"initial network {list(e1)} gives designer {alt.u_d}")
    return problems
