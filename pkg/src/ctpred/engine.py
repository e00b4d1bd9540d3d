"""Online execution engine: information model, runs, exact expectations.

The engine owns the ground truth (which paths/edges are blocked and where)
and feeds strategies only what the online model reveals: public data (costs,
predictions, budget) plus the outcomes of their own explorations. Edge
statuses surface exactly when the agent stands at an endpoint.

Disjoint runs work on integer-scaled costs (see DisjointInstance.scaled) so
the exhaustive sweeps stay fast; everything is converted back to exact
Fractions at the boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (ContractViolation, FamilyError, ModeError, SeedRequired,
                     UnsupportedStrategy, WrongStrategyError, ZeroOptError)
from .graphs import PathWitness, path_cost
from .instances import (DisjointInstance, GeneralInstance, InstanceFamily,
                        offline_opt, prediction_error)

ZERO = Fraction(0)
ONE = Fraction(1)

# Normal quantile for a two-sided 99% confidence interval.
_Z99 = 2.5758293035489004


@dataclass(frozen=True)
class DisjointPublic:
    """What a strategy may see of a disjoint instance: budget, costs and
    prediction flags, never the blocked flags or block positions."""

    k: int
    den: int
    icosts: tuple[int, ...]
    costs: tuple[Fraction, ...]
    predicted: frozenset[int]

    @property
    def m(self) -> int:
        return len(self.icosts)


@dataclass(frozen=True)
class GeneralPublic:
    graph: object
    predicted: frozenset[str]
    k: int


@dataclass(frozen=True)
class Attempt:
    """One failed path attempt on a general graph."""

    plan: PathWitness
    blocked_edge: str
    note: object = None


@dataclass(frozen=True)
class GeneralKnowledge:
    """Accumulated online knowledge during a general-graph run."""

    attempts: tuple[Attempt, ...]
    known_blocked: frozenset[str]
    revealed: frozenset[str]
    spent: Fraction


@dataclass(frozen=True)
class RunTrace:
    actions: tuple[tuple, ...]
    alg: Fraction
    opt: Fraction
    ratio: Fraction
    final: tuple


@dataclass(frozen=True)
class ExpectationResult:
    expected_cost: Fraction
    opt: Fraction
    expected_ratio: Fraction
    branch_count: int
    ledger: tuple[tuple[Fraction, Fraction], ...]  # (probability, cost)


@dataclass(frozen=True)
class MonteCarloResult:
    mean: float
    std: float
    ci99: tuple[float, float]
    n: int


@dataclass(frozen=True)
class FamilyReport:
    mode: str
    worst_ratio: Fraction
    aggregate_ratio: Fraction | None
    rows: tuple[tuple[int, int, Fraction], ...]  # (member index, error, ratio)


def public_view(inst: DisjointInstance) -> DisjointPublic:
    den, icosts, _ = inst.scaled
    return DisjointPublic(k=inst.k, den=den, icosts=icosts,
                          costs=inst.costs, predicted=inst.predicted_set)


def _validate_dist(dist, explored):
    total = ZERO
    for idx, p, _note in dist:
        if p <= 0:
            raise ContractViolation(f"non-positive branch probability {p}")
        if idx in explored:
            raise ContractViolation(f"strategy re-explores known-blocked path {idx}")
        total += p
    if total != 1:
        raise ContractViolation(f"decision probabilities sum to {total}, not 1")


def _sample(dist, rng):
    if len(dist) == 1:
        return dist[0]
    r = rng.random()
    acc = 0.0
    for entry in dist:
        acc += float(entry[1])
        if r < acc:
            return entry
    return dist[-1]


def _run_disjoint(strategy, inst: DisjointInstance, rng) -> RunTrace:
    pub = public_view(inst)
    den, icosts, iprefixes = inst.scaled
    failed: list[tuple[int, int, object]] = []
    explored: set[int] = set()
    actions: list[tuple] = []
    ispent = 0
    while True:
        dist = strategy.decide(pub, tuple(failed), ispent)
        if not dist:
            raise ContractViolation("strategy returned no decision")
        _validate_dist(dist, explored)
        idx, _p, note = _sample(dist, rng) if rng is not None else dist[0]
        explored.add(idx)
        if inst.paths[idx].blocked:
            ispent += 2 * iprefixes[idx]
            failed.append((idx, iprefixes[idx], note))
            actions.append(("explore", idx, "blocked"))
        else:
            ispent += icosts[idx]
            actions.append(("explore", idx, "open"))
            final = (idx,)
            break
    alg = Fraction(ispent, den)
    check = sum((2 * Fraction(p, den) for _, p, _ in failed), ZERO) + inst.paths[final[0]].cost
    assert check == alg, "cost replay mismatch"
    return _finish(inst, actions, alg, final)


def _run_general(strategy, inst: GeneralInstance, rng) -> RunTrace:
    g = inst.graph
    pub = GeneralPublic(graph=g, predicted=inst.predicted, k=inst.k)
    revealed: set[str] = set()
    known_blocked: set[str] = set()
    attempts: list[Attempt] = []
    actions: list[tuple] = []
    spent = ZERO

    def reveal(node):
        for e in g.incident(node):
            revealed.add(e.id)
            if e.id in inst.blocked:
                known_blocked.add(e.id)

    reveal(g.s)
    while True:
        know = GeneralKnowledge(attempts=tuple(attempts),
                                known_blocked=frozenset(known_blocked),
                                revealed=frozenset(revealed), spent=spent)
        plan, note = strategy.plan(pub, know)
        if plan is None:
            raise ContractViolation("strategy returned no plan")
        try:
            path_cost(g, plan)
        except Exception as exc:
            raise ContractViolation(f"strategy proposed a malformed plan: {exc}") from exc
        if set(plan.edges) & known_blocked:
            raise ContractViolation("strategy plans through a known-blocked edge")
        node = g.s
        walked = ZERO
        blocked_hit = None
        for eid in plan.edges:
            # The agent stands at `node`; eid is incident, hence revealed.
            if eid in inst.blocked:
                blocked_hit = eid
                known_blocked.add(eid)
                revealed.add(eid)
                break
            e = g.edge(eid)
            spent += e.cost
            walked += e.cost
            node = e.other(node)
            reveal(node)
        if blocked_hit is None:
            actions.append(("attempt", plan.edges, "reached", None, walked))
            final = plan.edges
            break
        spent += walked  # full walk back to s, no shortcutting
        attempts.append(Attempt(plan=plan, blocked_edge=blocked_hit, note=note))
        actions.append(("attempt", plan.edges, "blocked_at", blocked_hit, walked))
    return _finish(inst, actions, spent, final)


def _finish(inst, actions, alg, final) -> RunTrace:
    opt = offline_opt(inst)
    if opt == 0:
        raise ZeroOptError("offline optimum costs zero; ratio undefined")
    return RunTrace(actions=tuple(actions), alg=alg, opt=opt, ratio=alg / opt, final=final)


def run(strategy, inst, seed=None) -> RunTrace:
    """Simulate one full run; randomized strategies require a seed."""
    if not strategy.deterministic and seed is None:
        raise SeedRequired(f"strategy {strategy.name!r} is randomized; pass a seed")
    rng = None if strategy.deterministic else np.random.default_rng(seed)
    if isinstance(inst, DisjointInstance):
        return _run_disjoint(strategy, inst, rng)
    if isinstance(inst, GeneralInstance):
        if not strategy.deterministic:
            raise WrongStrategyError("randomized strategies run on disjoint instances only")
        return _run_general(strategy, inst, rng)
    raise WrongStrategyError(f"unsupported instance type {type(inst).__name__}")


def exact_expectation(strategy, inst) -> ExpectationResult:
    """Enumerate the strategy's full decision tree; exact rational expectation."""
    if not isinstance(inst, DisjointInstance):
        raise UnsupportedStrategy("exact expectation is defined on disjoint instances")
    if not hasattr(strategy, "decide"):
        raise UnsupportedStrategy(f"{strategy!r} exposes no discrete decision distribution")
    pub = public_view(inst)
    den, icosts, iprefixes = inst.scaled
    ledger: list[tuple[Fraction, Fraction]] = []

    def walk(failed: tuple, ispent: int, prob: Fraction):
        dist = strategy.decide(pub, failed, ispent)
        if not dist:
            raise ContractViolation("strategy returned no decision")
        _validate_dist(dist, {f[0] for f in failed})
        for idx, p, note in dist:
            if inst.paths[idx].blocked:
                walk(failed + ((idx, iprefixes[idx], note),),
                     ispent + 2 * iprefixes[idx], prob * p)
            else:
                ledger.append((prob * p, Fraction(ispent + icosts[idx], den)))

    walk((), 0, ONE)
    total_p = sum(p for p, _ in ledger)
    assert total_p == 1, f"branch probabilities sum to {total_p}"
    expected = sum((p * c for p, c in ledger), ZERO)
    opt = offline_opt(inst)
    if opt == 0:
        raise ZeroOptError("offline optimum costs zero; ratio undefined")
    return ExpectationResult(expected_cost=expected, opt=opt,
                             expected_ratio=expected / opt,
                             branch_count=len(ledger), ledger=tuple(ledger))


def monte_carlo(strategy, inst, n: int, seed) -> MonteCarloResult:
    """n independent seeded runs; run i uses generator seed [seed, i]."""
    if n < 1:
        raise ValueError("n must be >= 1")
    costs = np.empty(n, dtype=float)
    for i in range(n):
        rng_seed = [seed, i]
        if strategy.deterministic:
            trace = run(strategy, inst)
        else:
            trace = run(strategy, inst, seed=rng_seed)
        costs[i] = float(trace.alg)
    mean = float(costs.mean())
    std = float(costs.std(ddof=1)) if n > 1 else 0.0
    half = _Z99 * std / math.sqrt(n)
    return MonteCarloResult(mean=mean, std=std, ci99=(mean - half, mean + half), n=n)


def family_worst_ratio(strategy, family: InstanceFamily, mode: str) -> FamilyReport:
    """Worst per-member ratio; in expected mode also the weight-aggregated
    E[ALG]/OPT across the family (the quantity a Yao-style argument bounds)."""
    if mode not in ("det", "expected"):
        raise ModeError(f"unknown mode {mode!r}")
    if not family.members:
        raise FamilyError("family has no members")
    rows = []
    num = ZERO
    den = ZERO
    for j, (member, w) in enumerate(zip(family.members, family.weights)):
        if mode == "det":
            if not strategy.deterministic:
                raise ModeError("det mode needs a deterministic strategy")
            trace = run(strategy, member)
            cost, opt, ratio = trace.alg, trace.opt, trace.ratio
        else:
            res = exact_expectation(strategy, member)
            cost, opt, ratio = res.expected_cost, res.opt, res.expected_ratio
        rows.append((j, prediction_error(member), ratio))
        num += w * cost
        den += w * opt
    worst = max(r for _, _, r in rows)
    aggregate = (num / den) if mode == "expected" else None
    return FamilyReport(mode=mode, worst_ratio=worst,
                        aggregate_ratio=aggregate, rows=tuple(rows))
