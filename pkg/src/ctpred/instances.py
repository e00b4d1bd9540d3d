"""Problem instances: reality plus prediction, and the lower-bound families.

Two instance shapes exist. `DisjointInstance` is a fan of node-disjoint s-t
paths, each one cost plus a blocked flag (the canonical shape for randomized
strategies and for all lower-bound families); `GeneralInstance` wraps an
arbitrary graph with blocked/predicted edge sets for the deterministic
strategies. Path and edge indices are 0-based throughout.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import EpsilonRangeError, FamilyError, InvalidInstance, UnknownTag
from .graphs import Graph, Edge, require_valid, shortest_path
from .rationals import ALPHA_K2


@dataclass(frozen=True, slots=True)
class PathSpec:
    """One disjoint path: its cost, whether it is really blocked, where the
    block sits (traversal cost from s; defaults to the far end), and whether
    the predictor flags it blocked."""

    cost: Fraction
    blocked: bool = False
    prefix: Fraction | None = None
    predicted: bool = False

    def __post_init__(self):
        if self.cost <= 0:
            raise InvalidInstance(f"path cost must be positive, got {self.cost}")
        if self.prefix is None:
            object.__setattr__(self, "prefix", self.cost)
        elif not (0 <= self.prefix <= self.cost):
            raise InvalidInstance(f"block prefix {self.prefix} outside [0, {self.cost}]")


@dataclass(frozen=True)
class DisjointInstance:
    k: int
    paths: tuple[PathSpec, ...]

    def __post_init__(self):
        if self.k < 1:
            raise InvalidInstance(f"budget k must be >= 1, got {self.k}")
        if not self.paths:
            raise InvalidInstance("instance needs at least one path")
        blocked = sum(1 for p in self.paths if p.blocked)
        if blocked > self.k:
            raise InvalidInstance(f"{blocked} blocked paths exceed budget k={self.k}")
        if blocked == len(self.paths):
            raise InvalidInstance("no free path")
        predicted = sum(1 for p in self.paths if p.predicted)
        if predicted > self.k:
            raise InvalidInstance(f"{predicted} predicted paths exceed budget k={self.k}")

    @cached_property
    def costs(self) -> tuple[Fraction, ...]:
        return tuple(p.cost for p in self.paths)

    @cached_property
    def blocked_set(self) -> frozenset[int]:
        return frozenset(i for i, p in enumerate(self.paths) if p.blocked)

    @cached_property
    def predicted_set(self) -> frozenset[int]:
        return frozenset(i for i, p in enumerate(self.paths) if p.predicted)

    @cached_property
    def scaled(self) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
        """(denominator, integer costs, integer prefixes): every cost times
        the common denominator. Hot loops run on these integers and convert
        back to Fraction once per run."""
        den = math.lcm(*(p.cost.denominator for p in self.paths),
                       *(p.prefix.denominator for p in self.paths))
        costs = tuple(int(p.cost * den) for p in self.paths)
        prefixes = tuple(int(p.prefix * den) for p in self.paths)
        return den, costs, prefixes


@dataclass(frozen=True)
class GeneralInstance:
    graph: Graph
    blocked: frozenset[str]
    predicted: frozenset[str]
    k: int

    def __post_init__(self):
        require_valid(self.graph)
        if self.k < 1:
            raise InvalidInstance(f"budget k must be >= 1, got {self.k}")
        ids = {e.id for e in self.graph.edges}
        for name, group in (("blocked", self.blocked), ("predicted", self.predicted)):
            unknown = group - ids
            if unknown:
                raise InvalidInstance(f"{name} set references unknown edges {sorted(unknown)}")
            if len(group) > self.k:
                raise InvalidInstance(f"{len(group)} {name} edges exceed budget k={self.k}")
        if shortest_path(self.graph, self.blocked) is None:
            raise InvalidInstance("blocked edges disconnect s from t")


Instance = DisjointInstance | GeneralInstance


def prediction_error(inst: Instance) -> int:
    """Number of elements whose real blocked status differs from the prediction."""
    if isinstance(inst, DisjointInstance):
        return sum(1 for p in inst.paths if p.blocked != p.predicted)
    return len(inst.blocked ^ inst.predicted)


def offline_opt(inst: Instance) -> Fraction:
    """Cost of the best route with all blocked elements removed."""
    if isinstance(inst, DisjointInstance):
        return min(p.cost for p in inst.paths if not p.blocked)
    witness = shortest_path(inst.graph, inst.blocked)
    assert witness is not None  # guaranteed by instance invariant
    return witness.total


@dataclass(frozen=True)
class FamilyBoard:
    """The public data shared by every member of a lower-bound family:
    path costs, prediction flags, budget k and the error budget the theorem
    grants the adversary. Blocks are terminal (prefix = full cost)."""

    costs: tuple[Fraction, ...]
    predicted: frozenset[int]
    k: int
    error_budget: int

    @property
    def m(self) -> int:
        return len(self.costs)

    def admissible_scenarios(self) -> list[frozenset[int]]:
        """All blocked sets with <= k blocks, >= 1 free path, error <= budget."""
        out = []
        idx = range(self.m)
        for size in range(0, min(self.k, self.m - 1) + 1):
            for combo in itertools.combinations(idx, size):
                b = frozenset(combo)
                if len(b ^ self.predicted) <= self.error_budget:
                    out.append(b)
        return out

    def opt(self, blocked: frozenset[int]) -> Fraction:
        return min(c for i, c in enumerate(self.costs) if i not in blocked)

    def instance(self, blocked: frozenset[int]) -> DisjointInstance:
        paths = tuple(
            PathSpec(cost=c, blocked=(i in blocked), predicted=(i in self.predicted))
            for i, c in enumerate(self.costs)
        )
        return DisjointInstance(k=self.k, paths=paths)


@dataclass(frozen=True)
class InstanceFamily:
    """A weighted set of instances sharing one board, as used by the
    lower-bound arguments; `reference` carries the no-error instance that
    consistency constraints are measured against."""

    family_id: str
    members: tuple[Instance, ...]
    weights: tuple[Fraction, ...]
    error_budget: int
    board: FamilyBoard | None = None
    reference: DisjointInstance | None = None

    def __post_init__(self):
        if not self.members:
            raise FamilyError("family has no members")
        if len(self.members) != len(self.weights):
            raise FamilyError("weights do not match members")
        if sum(self.weights, Fraction(0)) != 1:
            raise FamilyError("weights must sum to exactly 1")
        if any(w < 0 for w in self.weights):
            raise FamilyError("weights must be non-negative")


def gen_gstar(k, costs, blocked=(), predicted=(), prefix_costs=None) -> DisjointInstance:
    """Fan instance: node-disjoint paths with the given costs; `blocked` and
    `predicted` are 0-based index sets. Blocks default to the far end of the
    path, so a failed exploration of path i pays exactly 2*cost_i."""
    costs = tuple(Fraction(c) for c in costs)
    if len(costs) < 2:
        raise InvalidInstance("fan instance needs at least two paths")
    blocked = frozenset(blocked)
    predicted = frozenset(predicted)
    for name, group in (("blocked", blocked), ("predicted", predicted)):
        if any(i < 0 or i >= len(costs) for i in group):
            raise InvalidInstance(f"{name} index out of range")
    prefix_map = dict(prefix_costs or {})
    paths = tuple(
        PathSpec(
            cost=c,
            blocked=(i in blocked),
            prefix=Fraction(prefix_map[i]) if i in prefix_map else None,
            predicted=(i in predicted),
        )
        for i, c in enumerate(costs)
    )
    return DisjointInstance(k=k, paths=paths)


def gstar_general(k, costs, blocked=(), predicted=()) -> GeneralInstance:
    """Explicit two-edge graph encoding of the fan: path i is a cost edge
    s-u_i followed by a zero-cost edge u_i-t, and blocking path i blocks the
    zero-cost edge (discoverable only after paying the approach)."""
    costs = tuple(Fraction(c) for c in costs)
    nodes = ["s", "t"] + [f"u{i}" for i in range(len(costs))]
    edges = []
    for i, c in enumerate(costs):
        edges.append(Edge(id=f"p{i}a", u="s", v=f"u{i}", cost=c))
        edges.append(Edge(id=f"p{i}b", u=f"u{i}", v="t", cost=Fraction(0)))
    g = Graph(nodes=tuple(nodes), edges=tuple(edges), s="s", t="t")
    return GeneralInstance(
        graph=g,
        blocked=frozenset(f"p{i}b" for i in blocked),
        predicted=frozenset(f"p{i}b" for i in predicted),
        k=k,
    )


def _family(tag, board, blocked_sets, weights, reference_blocked=None) -> InstanceFamily:
    members = tuple(board.instance(b) for b in blocked_sets)
    ref = board.instance(reference_blocked) if reference_blocked is not None else None
    return InstanceFamily(
        family_id=tag,
        members=members,
        weights=tuple(weights),
        error_budget=board.error_budget,
        board=board,
        reference=ref,
    )


FAMILY_TAGS = ("T1", "T3", "T7", "T8", "T9", "T10", "T12", "T13")


def gen_theorem_family(tag: str, k: int, eps: Fraction | None = None,
                       c1: Fraction | None = None) -> InstanceFamily:
    """Exact lower-bound construction for the named theorem tag.

    T1/T3 need eps (deterministic range 0 < eps <= 2k, randomized
    0 < eps <= k); T8 exposes the expensive predicted-free cost as the
    optional `c1` (any value > 2k+1 works, default 2k+2). Error budgets:
    2 for T1/T3/T7/T12, 1 for T8/T9/T10/T13.
    """
    if tag not in FAMILY_TAGS:
        raise UnknownTag(f"unknown family tag {tag!r}")
    if k < 1:
        raise InvalidInstance("k must be >= 1")
    ones = (Fraction(1),) * k
    everything = frozenset(range(k + 1))
    cheap = frozenset(range(k))

    if tag == "T1":
        if eps is None or not (0 < eps <= 2 * k):
            raise EpsilonRangeError(f"T1 requires 0 < eps <= 2k, got {eps}")
        board = FamilyBoard(costs=ones + (Fraction(2 * k) / eps,), predicted=cheap,
                            k=k, error_budget=2)
        scenarios = [cheap] + [everything - {i} for i in range(k)]
        return _family(tag, board, scenarios,
                       [Fraction(1, k + 1)] * (k + 1), reference_blocked=cheap)

    if tag == "T3":
        if eps is None or not (0 < eps <= k):
            raise EpsilonRangeError(f"T3 requires 0 < eps <= k, got {eps}")
        board = FamilyBoard(costs=ones + (Fraction(k) / eps,), predicted=cheap,
                            k=k, error_budget=2)
        scenarios = [everything - {i} for i in range(k)]
        return _family(tag, board, scenarios,
                       [Fraction(1, k)] * k, reference_blocked=cheap)

    if tag == "T7":
        board = FamilyBoard(costs=ones + (Fraction(1),), predicted=cheap,
                            k=k, error_budget=2)
        scenarios = [everything - {i} for i in range(k + 1)]
        return _family(tag, board, scenarios, [Fraction(1, k + 1)] * (k + 1))

    if tag == "T8":
        expensive = Fraction(c1) if c1 is not None else Fraction(2 * k + 2)
        if expensive <= 2 * k + 1:
            raise InvalidInstance(f"T8 needs c1 > 2k+1 = {2 * k + 1}, got {expensive}")
        board = FamilyBoard(costs=(expensive,) + ones,
                            predicted=frozenset(range(1, k + 1)), k=k, error_budget=1)
        pred = frozenset(range(1, k + 1))
        scenarios = [pred] + [pred - {j} for j in range(1, k + 1)]
        return _family(tag, board, scenarios, [Fraction(1, k + 1)] * (k + 1))

    if tag == "T9":
        if k != 1:
            raise InvalidInstance("T9 is the k=1 construction")
        board = FamilyBoard(costs=(Fraction(1), Fraction(1)), predicted=frozenset(),
                            k=1, error_budget=1)
        scenarios = [frozenset(), frozenset({0}), frozenset({1})]
        return _family(tag, board, scenarios, [Fraction(1, 3)] * 3)

    if tag == "T10":
        if k != 2:
            raise InvalidInstance("T10 is the k=2 construction")
        board = FamilyBoard(costs=(Fraction(1), ALPHA_K2, ALPHA_K2),
                            predicted=frozenset({0}), k=2, error_budget=1)
        scenarios = [frozenset({0}), frozenset(), frozenset({0, 1}), frozenset({0, 2})]
        return _family(tag, board, scenarios, [Fraction(1, 4)] * 4)

    if tag == "T12":
        board = FamilyBoard(costs=ones + (Fraction(1),), predicted=cheap,
                            k=k, error_budget=2)
        scenarios = [everything - {i} for i in range(k + 1)]
        return _family(tag, board, scenarios, [Fraction(1, k + 1)] * (k + 1))

    # T13: cheap paths all predicted blocked, expensive escape path free.
    board = FamilyBoard(costs=ones + (Fraction(k + 1),), predicted=cheap,
                        k=k, error_budget=1)
    scenarios = [cheap - {i} for i in range(k)]
    return _family(tag, board, scenarios, [Fraction(1, k)] * k)


def enumerate_instances(k_max: int, cost_grid, prefix_positions=(Fraction(1),)):
    """Every disjoint instance with <= k_max+1 paths, costs drawn from the
    grid, all blocked subsets (<= k_max, >= 1 free) and predicted subsets
    (<= k_max), block prefixes at each relative position in
    `prefix_positions` (fractions of the path cost; 1 = terminal).
    Deterministic order, duplicate-free."""
    grid = tuple(Fraction(c) for c in cost_grid)
    positions = tuple(Fraction(p) for p in prefix_positions)
    if not grid:
        return
    for m in range(2, k_max + 2):
        subsets = []
        for size in range(0, min(k_max, m) + 1):
            subsets.extend(itertools.combinations(range(m), size))
        blocked_subsets = [b for b in subsets if len(b) < m]
        for costs in itertools.product(grid, repeat=m):
            for blocked in blocked_subsets:
                for predicted in subsets:
                    bset = set(blocked)
                    pset = set(predicted)
                    for prefs in itertools.product(positions, repeat=len(blocked)):
                        pref = dict(zip(blocked, prefs))
                        paths = tuple(
                            PathSpec(
                                cost=c,
                                blocked=(i in bset),
                                prefix=pref[i] * c if i in pref else None,
                                predicted=(i in pset),
                            )
                            for i, c in enumerate(costs)
                        )
                        yield DisjointInstance(k=k_max, paths=paths)
