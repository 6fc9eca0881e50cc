"""Closed-form subgame perfect equilibria.

The designer's best move is found by comparing one candidate per situation.
Each candidate is the cheapest initial network that forces its situation
once the adversary and the healing stage respond optimally.  In the
all-healing regime the candidates follow the classical case tree directly.
Otherwise the sizes come from :mod:`infragame.design`.

Threshold notation:

* ``k_a_r = floor(tau_r / c_a)``: largest attack worth paying for when the
  network is healed afterwards.
* ``k_a_h = floor((1 - tau) / c_a)``: largest attack worth paying for when
  the network stays down.
* ``k = floor(w / c_d)`` with ``w = 1 - tau - tau_r``.
* ``heal_capacity``: largest number of components the designer still
  reconnects, minus one.  It is ``ceil(w / c_d) - 1`` because healing on a
  tie is refused.  It differs from ``k`` only when ``w / c_d`` is an integer.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import ceil, floor

from .design import Requirement, minimal_network
from .errors import BoundaryUnspecified, InvalidInput, UnresolvedCase
from .game import (
    EMPTY,
    EdgeSet,
    GameParams,
    StrategyProfile,
    classify,
    count_components,
    payoffs,
    reconnect,
)
from .topology import (
    NamedTopology,
    edge_connectivity,
    harary,
    has_cut_below,
    min_degree,
    tree,
)


@dataclass(frozen=True)
class Thresholds:
    k_a_r: int
    k_a_h: int
    k_d_h: int
    k: int
    k_a: int
    delta: int | None
    heal_capacity: int
    k_a_w: int

    def to_json(self) -> dict:
        return {
            "k_a_r": self.k_a_r,
            "k_a_h": self.k_a_h,
            "k_d_h": self.k_d_h,
            "k": self.k,
            "k_a": self.k_a,
            "delta": self.delta,
            "heal_capacity": self.heal_capacity,
            "k_a_w": self.k_a_w,
        }


@dataclass(frozen=True)
class SpeCandidate:
    """Best profile the designer can force for one situation.

    When ``exact`` is false the network size is only bounded, ``u_d`` is an
    upper bound and ``profile`` may be missing.
    """

    situation: str
    feasible: bool
    reason: str
    e1_size: int = 0
    ea_size: int = 0
    e2_size: int = 0
    u_d: Fraction | None = None
    u_a: Fraction | None = None
    profile: StrategyProfile | None = None
    e1_kind: str | None = None
    exact: bool = True
    notes: tuple[str, ...] = ()

    @property
    def created(self) -> int:
        return self.e1_size + self.e2_size

    def to_json(self) -> dict:
        out = {
            "situation": self.situation,
            "feasible": self.feasible,
            "exact": self.exact,
            "reason": self.reason,
            "e1_size": self.e1_size,
            "ea_size": self.ea_size,
            "e2_size": self.e2_size,
            "u_d": None if self.u_d is None else str(self.u_d),
            "u_a": None if self.u_a is None else str(self.u_a),
            "e1_kind": self.e1_kind,
        }
        if self.notes:
            out["notes"] = list(self.notes)
        if self.profile is not None:
            out.update(self.profile.to_json())
        return out


@dataclass(frozen=True)
class SpeSolution:
    regime: str
    chosen: SpeCandidate
    candidates: list[SpeCandidate]
    thresholds: Thresholds
    params: GameParams
    notes: tuple[str, ...] = field(default=())

    @property
    def situation(self) -> str:
        return self.chosen.situation

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "regime": self.regime,
            "thresholds": self.thresholds.to_json(),
            "candidates": [c.to_json() for c in self.candidates],
            "chosen": self.chosen.to_json(),
            "notes": list(self.notes),
        }


def heal_capacity(params: GameParams) -> int:
    w = params.heal_window
    return max(ceil(w / params.c_d) - 1, 0)


def is_regime1(params: GameParams) -> bool:
    """Healing is worthwhile even from ``n`` isolated nodes (weak inequality)."""
    return params.heal_window >= (params.n - 1) * params.c_d


def regime_of(params: GameParams) -> str:
    if params.c_d > Fraction(1, params.n - 1):
        return "NoNetwork"
    if params.c_a > 1 - params.tau and params.c_d < Fraction(1, params.n - 1):
        return "NoThreat"
    return "R1" if is_regime1(params) else "R2"


def delta(params: GameParams, th: Thresholds) -> int:
    """Six-case closed-form size of the protected network in regime 2.

    Raises :class:`BoundaryUnspecified` when the formula would divide by
    ``k = 0``.
    """
    n, k, kar, kah = params.n, th.k, th.k_a_r, th.k_a_h
    if kar > 1:
        return ceil(Fraction(n * (kar + 1), 2)) if k >= 1 else ceil(Fraction(n * (kah + 1), 2))
    if kar == 1:
        if kah == k + 1:
            return n
        if k == 0:
            raise BoundaryUnspecified("closed-form size needs floor(n/k) with k = 0")
        m = n // k
        return n + m + ceil(Fraction(m, 2))
    return n - 1 if kah == k else n


def thresholds(params: GameParams) -> Thresholds:
    w = params.heal_window
    th = Thresholds(
        k_a_r=floor(params.tau_r / params.c_a),
        k_a_h=floor((1 - params.tau) / params.c_a),
        k_d_h=floor((1 - params.tau) / params.c_d),
        k=floor(w / params.c_d),
        k_a=ceil(w / params.c_a),
        delta=None,
        heal_capacity=heal_capacity(params),
        k_a_w=floor(w / params.c_a),
    )
    if regime_of(params) == "R2":
        try:
            th = replace(th, delta=delta(params, th))
        except BoundaryUnspecified:
            pass
    return th


def threshold_implications(th: Thresholds) -> dict[str, bool]:
    """Threshold implications of ``k_a_h <= k_d_h``.

    ``post_floor_le_k`` (``floor(w / c_a) <= k``) is the sharp claim and can
    fail; ``post_floor_le_k1`` is the bound that does follow.  All entries
    are vacuously true when ``k_a_h > k_d_h``.
    """
    if th.k_a_h > th.k_d_h:
        return dict.fromkeys(("post_floor_le_k", "post_floor_le_k1", "kah_le_k_kar_1"), True)
    return {
        "post_floor_le_k": th.k_a_w <= th.k,
        "post_floor_le_k1": th.k_a_w <= th.k + 1,
        "kah_le_k_kar_1": th.k_a_h <= th.k + th.k_a_r + 1,
    }


# -- candidate builders ----------------------------------------------------


def _from_profile(params: GameParams, situation: str, profile: StrategyProfile,
                  kind: str | None, reason: str, notes=()) -> SpeCandidate:
    got = classify(params.n, profile).label
    if got != situation:
        raise AssertionError(f"representative for {situation} classifies as {got}")
    pay = payoffs(params, profile)
    return SpeCandidate(
        situation=situation,
        feasible=True,
        reason=reason,
        e1_size=len(profile.e1),
        ea_size=len(profile.ea),
        e2_size=len(profile.e2),
        u_d=pay.u_d,
        u_a=pay.u_a,
        profile=profile,
        e1_kind=kind,
        notes=tuple(notes),
    )


def _infeasible(situation: str, reason: str, notes=()) -> SpeCandidate:
    return SpeCandidate(situation, False, reason, notes=tuple(notes))


def _null_candidate(params: GameParams) -> SpeCandidate:
    return _from_profile(params, "S5", StrategyProfile(EMPTY, EMPTY, EMPTY), "Empty",
                         "null strategies are always available")


def _unprotected_tree(params: GameParams) -> SpeCandidate:
    return _from_profile(params, "S1", StrategyProfile(tree(params.n), EMPTY, EMPTY), "Tree",
                         "no removal is worth its cost")


def _bridges(n: int, e: EdgeSet) -> list[tuple[int, int]]:
    base = count_components(n, e)
    return [edge for edge in e if count_components(n, e - EdgeSet([edge])) > base]


def _healed_bridge_profile(n: int, e1: EdgeSet) -> StrategyProfile:
    cut = EdgeSet([min(_bridges(n, e1))])
    return StrategyProfile(e1, cut, reconnect(n, e1 - cut))


def _bounded(situation: str, lower: int, u_a: Fraction, ceiling: Fraction,
             witness: NamedTopology | None, reason: str) -> SpeCandidate:
    """Candidate whose minimal size is only known to lie in ``[lower, witness]``."""
    return SpeCandidate(
        situation=situation,
        feasible=True,
        reason=reason,
        e1_size=lower,
        u_d=ceiling,
        u_a=u_a,
        e1_kind=witness.kind if witness is not None else None,
        exact=False,
        notes=(f"size between {lower} and {len(witness.edges) if witness else '?'}",),
    )


def _designer_utility(params: GameParams, situation: str, size: int) -> Fraction:
    """Designer utility of a protected (S1) or healed-once (S2) network of ``size`` links."""
    if situation == "S1":
        return 1 - size * params.c_d
    return 1 - params.tau_r - (size + 1) * params.c_d


def _requirement(params: GameParams, th: Thresholds, situation: str):
    """Cut requirement forcing ``situation``, or an infeasible candidate."""
    n = params.n
    a, h, cap, g = th.k_a_r, th.k_a_h, th.heal_capacity, th.k_a_w + 1
    if situation == "S1":
        req = Requirement(n, a + 1, None, cap + 2, h + 1)
        what = f"edge connectivity >= {a + 1}"
        floor_cut = h + 1
    else:
        if a < 1:
            return _infeasible("S2", "removing a single link costs more than the recovery window pays")
        if cap < 1:
            return _infeasible("S2", "the designer never heals a split network")
        req = Requirement(n, 1, 1, cap + 2, g + 1)
        what = "a bridge"
        floor_cut = g + 1
    if req.cut_active:
        what += f" and no {cap + 2}-component cut below {floor_cut} links"
    return req, what


def _design_candidate(params: GameParams, situation: str, req: Requirement, what: str,
                      d) -> SpeCandidate:
    n = params.n
    if not d.feasible:
        return _infeasible(situation, f"no network on {n} nodes has {what}")
    u_a = Fraction(0) if situation == "S1" else params.tau_r - params.c_a
    if not d.exact:
        ceiling = _designer_utility(params, situation, d.lower)
        return _bounded(situation, d.lower, u_a, ceiling, d.witness, f"needs {what}")
    e1 = d.witness.edges
    if situation == "S1":
        profile = StrategyProfile(e1, EMPTY, EMPTY)
    else:
        profile = _healed_bridge_profile(n, e1)
    return _from_profile(params, situation, profile, d.witness.kind, f"minimal network with {what}")


def _s3_candidate(params: GameParams, th: Thresholds) -> SpeCandidate:
    n = params.n
    a, h, cap, g = th.k_a_r, th.k_a_h, th.heal_capacity, th.k_a_w + 1
    if cap + 2 > n:
        return _infeasible("S3", "every split network gets healed")
    if h < cap + 1:
        return _infeasible("S3", f"an unhealed cut needs {cap + 1} removals, more than {h} pay off")
    if a >= 1 and 1 <= cap and cap >= g:
        return _infeasible("S3", "on a tree the adversary prefers a single healed cut")
    e1 = tree(n)
    ea = EdgeSet(list(e1)[: cap + 1])
    profile = StrategyProfile(e1, ea, EMPTY)
    return _from_profile(params, "S3", profile, "Tree", "tree left split beyond healing")


def _s4_candidate(params: GameParams, th: Thresholds) -> SpeCandidate:
    n = params.n
    if th.heal_capacity < n - 1:
        return _infeasible("S4", "building only at the healing stage does not pay")
    profile = StrategyProfile(EMPTY, EMPTY, reconnect(n, EMPTY))
    return _from_profile(params, "S4", profile, "Empty", "network built only at the healing stage")


def _select(params: GameParams, th: Thresholds, regime: str, candidates: list[SpeCandidate],
            notes=()) -> SpeSolution:
    """Pick the designer's best candidate; ties at the top are boundaries."""
    best_known = max(c.u_d for c in candidates if c.feasible and c.exact)
    resolved = []
    for cand in candidates:
        if cand.feasible and not cand.exact:
            if cand.u_d >= best_known:
                raise UnresolvedCase(
                    f"minimal network for {cand.situation} is not certified on {params.n} nodes",
                    regime=regime, thresholds=th, candidates=candidates, tied=[cand],
                )
            cand = replace(cand, feasible=False,
                           reason=f"dominated: at most {cand.u_d} < {best_known}")
        resolved.append(cand)
    top = sorted((c for c in resolved if c.feasible), key=lambda c: (-c.u_d, c.created))
    if len(top) > 1 and top[0].u_d == top[1].u_d:
        tied = [c for c in top if c.u_d == top[0].u_d]
        raise BoundaryUnspecified(
            "designer is indifferent between " + ", ".join(c.situation for c in tied),
            regime=regime, thresholds=th, candidates=resolved, tied=tied,
        )
    return SpeSolution(regime, top[0], resolved, th, params, tuple(notes))


def _evaluate(params: GameParams, th: Thresholds, regime: str, notes=()) -> SpeSolution:
    fixed = [_s3_candidate(params, th), _s4_candidate(params, th), _null_candidate(params)]
    best_known = max(c.u_d for c in fixed if c.feasible)
    designed = {}
    for situation in ("S1", "S2"):
        spec = _requirement(params, th, situation)
        if isinstance(spec, SpeCandidate):
            designed[situation] = spec
            continue
        req, what = spec
        d = minimal_network(req, improve=False)
        if d.feasible and not d.exact and _designer_utility(params, situation, d.lower) >= best_known:
            # only sizes that could still tie or beat the best known option matter
            lost = _designer_utility(params, situation, 0) - best_known
            d = minimal_network(req, improve=True, size_cap=floor(lost / params.c_d))
        cand = _design_candidate(params, situation, req, what, d)
        designed[situation] = cand
        if cand.feasible and cand.exact:
            best_known = max(best_known, cand.u_d)
    candidates = [designed["S1"], designed["S2"], *fixed]
    return _select(params, th, regime, candidates, notes)


# -- public entry points -----------------------------------------------------


def trivial_guards(params: GameParams) -> SpeSolution | None:
    """Short-circuit the two cases where one player cannot gain anything."""
    th = thresholds(params)
    regime = regime_of(params)
    if regime == "NoNetwork":
        null = _null_candidate(params)
        return SpeSolution("NoNetwork", null, [null], th, params,
                           ("a spanning tree costs more than it is worth",))
    if regime == "NoThreat":
        t = _unprotected_tree(params)
        return SpeSolution("NoThreat", t, [t, _null_candidate(params)], th, params,
                           ("no removal can pay for itself",))
    return None


def _healing_regime_candidates(params: GameParams, th: Thresholds) -> list[SpeCandidate]:
    n, a = params.n, th.k_a_r
    s1_notes = ()
    if a == 0:
        s1 = _unprotected_tree(params)
    elif a + 1 <= n - 1:
        e1 = harary(n, a + 1)
        s1 = _from_profile(params, "S1", StrategyProfile(e1, EMPTY, EMPTY), f"Harary({a + 1})",
                           f"edge connectivity {a + 1}")
    else:
        s1 = _infeasible("S1", f"resisting {a} removals needs more than n-1 = {n - 1} links per node")
    if a >= 1:
        path = tree(n)
        s2 = _from_profile(params, "S2", _healed_bridge_profile(n, path), "Tree",
                           "tree attacked once and healed")
    else:
        s2 = _infeasible("S2", "removing a single link costs more than the recovery window pays")
    s3 = _infeasible("S3", "every split network gets healed")
    return [s1, s2, s3, _s4_candidate(params, th), _null_candidate(params)]


def solve_regime1(params: GameParams, th: Thresholds | None = None) -> SpeSolution:
    """All-healing regime, ``1 - tau - tau_r >= (n - 1) c_d``.

    Follows the four-way case split on ``tau_r`` vs ``c_a`` and ``tau`` vs
    ``c_d``.  Two adjustments apply.  The Harary branch is dropped when it
    would need degree ``n`` or more.  At ``tau == c_d`` the Harary branch
    still wins if it beats both alternatives.
    """
    if not is_regime1(params):
        raise InvalidInput("solve_regime1 requires 1 - tau - tau_r >= (n-1) c_d")
    th = th or thresholds(params)
    if params.heal_window == (params.n - 1) * params.c_d:
        # reconnecting n isolated nodes is a tie here, so healing is partial
        return _evaluate(params, th, "R1", ("regime boundary: evaluated with partial healing",))
    cands = _healing_regime_candidates(params, th)
    s1, s2, _, s4, _ = cands
    tau, c_d = params.tau, params.c_d

    def beats(x: SpeCandidate, y: SpeCandidate) -> bool:
        return x.feasible and (not y.feasible or x.u_d > y.u_d)

    if th.k_a_r == 0:
        chosen, note = s1, "tree: no removal pays"
    elif beats(s1, s2) and beats(s1, s4) or (tau > c_d and beats(s1, s2)) or (tau < c_d and beats(s1, s4)):
        chosen, note = s1, "Harary network resists every paying attack"
    elif tau > c_d and beats(s2, s1):
        chosen, note = s2, "tree attacked once and healed"
    elif tau < c_d and beats(s4, s1):
        chosen, note = s4, "network built only at the healing stage"
    else:
        chosen, note = None, ""
    rivals = [c for c in cands if c.feasible and c is not chosen]
    tied = [c for c in rivals if chosen is not None and c.u_d == chosen.u_d]
    if chosen is None or tied:
        raise BoundaryUnspecified(
            "parameters sit on an equality between case conditions",
            regime="R1", thresholds=th, candidates=cands,
            tied=[c for c in cands if c.feasible and c.u_d == max(r.u_d for r in cands if r.feasible)],
        )
    if any(c.u_d > chosen.u_d for c in rivals):
        raise AssertionError("case split disagrees with the candidate utilities")
    return SpeSolution("R1", chosen, cands, th, params, (note,))


def solve_regime2(params: GameParams, th: Thresholds | None = None) -> SpeSolution:
    """Partial-healing regime, ``1 - tau - tau_r < (n - 1) c_d``."""
    if is_regime1(params):
        raise InvalidInput("solve_regime2 requires 1 - tau - tau_r < (n-1) c_d")
    th = th or thresholds(params)
    notes = []
    if th.delta is not None:
        notes.append(f"six-case size formula gives {th.delta}")
    return _evaluate(params, th, "R2", notes)


def solve(params: GameParams) -> SpeSolution:
    """Equilibrium of the three-stage game, raising on unspecified ties."""
    guarded = trivial_guards(params)
    if guarded is not None:
        return guarded
    th = thresholds(params)
    if is_regime1(params):
        return solve_regime1(params, th)
    return solve_regime2(params, th)


def closed_form_regime2(params: GameParams, th: Thresholds | None = None) -> dict[str, tuple]:
    """Uncorrected per-situation closed forms for regime 2.

    Returns ``{situation: (feasible, u_d, u_a)}``.  Useful for comparing the
    closed forms with :func:`solve_regime2`.
    """
    th = th or thresholds(params)
    n, c_d, c_a = params.n, params.c_d, params.c_a
    tau, tau_r, w = params.tau, params.tau_r, params.heal_window
    out = {}
    s1_ok = th.delta is not None and not (tau_r / c_a > n - 1 or th.k_a_h > th.k_d_h)
    if s1_ok:
        s1_ok = not (1 < th.delta * c_d or 1 - tau < (th.delta - n + 1) * c_d)
    out["S1"] = (s1_ok, 1 - th.delta * c_d if s1_ok else None, Fraction(0) if s1_ok else None)
    s2_ok = c_a <= tau_r and th.k > floor(w / c_a)
    out["S2"] = (s2_ok, 1 - tau_r - n * c_d, tau_r - c_a)
    s3_ok = th.k_a_h > th.k
    out["S3"] = (s3_ok, tau - (n - 1) * c_d, 1 - tau - (th.k + 1) * c_a)
    out["S5"] = (True, Fraction(0), Fraction(1))
    return out


def audit_s1(params: GameParams, th: Thresholds, cand: SpeCandidate) -> dict[str, bool]:
    """Post-hoc checks on a protected (no-attack) network.

    Keys: ``recovery_budget`` (recovery window covers the extra links),
    ``size_floor`` (size lower bound from ``k_a_r``), ``min_degree`` and ``cut`` (no cheap
    multi-component cut).
    """
    n = params.n
    e1 = cand.profile.e1
    a, h, k = th.k_a_r, th.k_a_h, th.k
    size = len(e1)
    if a >= 2:
        floor_size = ceil(Fraction(n * (a + 1), 2))
    elif a == 1:
        floor_size = n
    else:
        floor_size = n - 1
    result = {
        "recovery_budget": params.tau_r >= (size - 2 * (n - 1)) * params.c_d,
        "size_floor": size >= floor_size,
        "min_degree": min_degree(n, e1) > a,
        "cut": True,
    }
    if k + 2 <= n and edge_connectivity(n, e1) >= 1:
        result["cut"] = not has_cut_below(n, e1, k + 2, h + 1)
    return result
