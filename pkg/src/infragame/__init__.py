"""Equilibria of a three-stage network protection and recovery game.

A designer builds a network, an adversary removes links, and the designer
may heal the damage.  The package computes subgame perfect equilibria in
closed form (:func:`solve`), checks them by exhaustive backward induction
(:func:`brute_force_spe`), and builds the networks involved.
"""

from .errors import (
    BoundaryUnspecified,
    ConstructionMismatch,
    EnumerationCap,
    GameError,
    InconsistentSituation,
    InvalidInput,
    InvalidProfile,
    UnresolvedCase,
)
from .game import (
    EdgeSet,
    GameParams,
    Payoffs,
    Situation,
    StrategyProfile,
    classify,
    is_connected,
    parse_rational,
    payoffs,
)
from .oracle import OracleConfig, best_attack, best_heal, brute_force_spe
from .solver import (
    SpeCandidate,
    SpeSolution,
    Thresholds,
    delta,
    solve,
    solve_regime1,
    solve_regime2,
    thresholds,
    trivial_guards,
)
from .topology import (
    NamedTopology,
    component_count,
    edge_connectivity,
    harary,
    min_cut_to_components,
    reinforced_ring,
    ring,
    tree,
)

__version__ = "0.1.0"
