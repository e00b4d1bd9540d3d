"""Zero-sum game helpers built on the exact LP core.

`minimize_max_mixture` solves games of the form: pick a distribution x over
rows to minimize the worst column of x.M, optionally under extra linear caps
on x (used for consistency-constrained game values). Solutions come back
with exact primal and dual certificates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InfeasibleBudget
from .lp import solve_dual_min, solve_min

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class GameSolution:
    """Optimal row mixture, game value, and the dual certificate: a
    distribution over columns (the adversary's best response mix) plus one
    multiplier per extra cap."""

    value: Fraction
    mixture: tuple[Fraction, ...]
    column_weights: tuple[Fraction, ...]
    extra_duals: tuple[Fraction, ...] = ()

    def check_certificate(self, matrix, extra=()) -> None:
        """Exact optimality audit via complementary slackness.

        `matrix` and `extra` must be the data the game was solved with.
        Raises AssertionError on any gap; all comparisons are exact.
        """
        x, q, mu = self.mixture, self.column_weights, self.extra_duals
        ncols = len(matrix[0])
        assert sum(x) == 1 and all(p >= 0 for p in x)
        assert sum(q) == 1 and all(w >= 0 for w in q)
        assert all(m >= 0 for m in mu)
        payoffs = [sum(xi * row[j] for xi, row in zip(x, matrix)) for j in range(ncols)]
        assert all(p <= self.value for p in payoffs), "primal infeasible"
        assert max(payoffs) == self.value, "value not attained"
        for (coeffs, bound), m in zip(extra, mu):
            used = sum(xi * ci for xi, ci in zip(x, coeffs))
            assert used <= bound, "extra cap violated"
            if m > 0:
                assert used == bound, "positive multiplier on a slack cap"
        for j, w in enumerate(q):
            if w > 0:
                assert payoffs[j] == self.value, "dual weight on a slack scenario"
        shift = sum(m * bound for (_, bound), m in zip(extra, mu))
        for i, row in enumerate(matrix):
            lower = sum(w * row[j] for j, w in enumerate(q))
            lower += sum(m * coeffs[i] for (coeffs, _), m in zip(extra, mu))
            assert lower - shift >= self.value, "dual lower bound misses the value"
            if x[i] > 0:
                assert lower - shift == self.value, "support row not tight"


def minimize_max_mixture(matrix, extra_ub=None) -> GameSolution:
    """min over distributions x of max_j (x.M)_j, with optional extra rows
    (coeffs, bound) meaning x.coeffs <= bound. All data exact rationals.

    Raises LPInfeasible when the caps cannot be met.
    """
    nrows = len(matrix)
    ncols = len(matrix[0])
    extra = [(list(co), Fraction(b)) for co, b in (extra_ub or [])]
    # Variables: x_0..x_{r-1}, vp, vn with game value v = vp - vn.
    c = [ZERO] * nrows + [ONE, -ONE]
    a_ub = []
    b_ub = []
    for j in range(ncols):
        a_ub.append([matrix[i][j] for i in range(nrows)] + [-ONE, ONE])
        b_ub.append(ZERO)
    for coeffs, bound in extra:
        a_ub.append(list(coeffs) + [ZERO, ZERO])
        b_ub.append(bound)
    a_eq = [[ONE] * nrows + [ZERO, ZERO]]
    b_eq = [ONE]
    primal = solve_min(c, a_ub=a_ub, b_ub=b_ub, a_eq=a_eq, b_eq=b_eq)
    dual_value, y_ub, _ = solve_dual_min(c, a_ub=a_ub, b_ub=b_ub, a_eq=a_eq, b_eq=b_eq)
    assert dual_value == primal.value, "strong duality gap in exact arithmetic"
    col_duals = tuple(-y for y in y_ub[:ncols])
    # vp/vn dual-feasibility pins the scenario weights to a distribution.
    assert sum(col_duals) == 1
    return GameSolution(
        value=primal.value,
        mixture=primal.x[:nrows],
        column_weights=col_duals,
        extra_duals=tuple(-y for y in y_ub[ncols:]),
    )


def order_cost_on_scenario(costs, order, blocked) -> Fraction:
    """Exploration cost of a pure order against a committed blocked set:
    2*cost for every blocked path tried, plus the first free path's cost."""
    spent = ZERO
    for i in order:
        if i in blocked:
            spent += 2 * costs[i]
        else:
            return spent + costs[i]
    raise ValueError("scenario blocks every path in the order")


def _cost_symmetry_group(costs):
    """All candidate relabelings that preserve costs (product of symmetric
    groups over equal-cost classes), as index permutation tuples."""
    by_cost: dict[Fraction, list[int]] = {}
    for i, c in enumerate(costs):
        by_cost.setdefault(c, []).append(i)
    classes = list(by_cost.values())
    group = []
    for perms in itertools.product(*(itertools.permutations(cls) for cls in classes)):
        mapping = list(range(len(costs)))
        for cls, perm in zip(classes, perms):
            for src, dst in zip(cls, perm):
                mapping[src] = dst
        group.append(tuple(mapping))
    return group


@lru_cache(maxsize=None)
def order_mixture(costs: tuple, budget: int) -> tuple[Fraction, tuple]:
    """Optimal mixed exploration strategy for one backtracking game.

    Game: the adversary commits to blocking at most `budget` of the
    candidates, the algorithm explores until it finds a free one, payoff is
    cost/OPT. Returns (value, ((order, prob), ...)) where the mixture is an
    exact LP optimum symmetrized over cost-preserving relabelings, so
    equal-cost candidates are treated identically. The strategies module
    plays this mixture behaviorally: sampling an order up front and playing
    it out is what actually carries the value guarantee, per-stage re-solving
    does not.
    """
    m = len(costs)
    if not 0 <= budget < m:
        raise InfeasibleBudget(f"budget {budget} with {m} candidates leaves no free path")
    if m > 7:
        raise InfeasibleBudget(f"{m} candidates: order space too large for exact solving")
    base_order = tuple(sorted(range(m), key=lambda i: (costs[i], i)))
    if budget == 0:
        # Only the empty scenario exists; cheapest-first has ratio exactly 1.
        return ONE, ((base_order, ONE),)

    scenarios = []
    for size in range(budget + 1):
        scenarios.extend(frozenset(c) for c in itertools.combinations(range(m), size))
    opts = [min(costs[i] for i in range(m) if i not in b) for b in scenarios]
    orders = list(itertools.permutations(range(m)))
    matrix = [
        [order_cost_on_scenario(costs, order, blocked) / opt
         for blocked, opt in zip(scenarios, opts)]
        for order in orders
    ]
    sol = minimize_max_mixture(matrix)

    group = _cost_symmetry_group(costs)
    share = Fraction(1, len(group))
    sym: dict[tuple, Fraction] = {}
    for x, order in zip(sol.mixture, orders):
        if x == 0:
            continue
        for g in group:
            relabeled = tuple(g[i] for i in order)
            sym[relabeled] = sym.get(relabeled, ZERO) + x * share
    mixture = tuple(sorted(sym.items()))
    assert sum(p for _, p in mixture) == 1
    return sol.value, mixture


def stage_distribution_for(costs: tuple, budget: int) -> tuple[Fraction, tuple]:
    """(game value, first-move marginal) of the optimal order mixture."""
    value, mixture = order_mixture(costs, budget)
    marginal = [ZERO] * len(costs)
    for order, p in mixture:
        marginal[order[0]] += p
    return value, tuple(marginal)


def conditional_next(mixture, failed_prefix: tuple) -> list:
    """Next-move distribution of an order mixture given that exactly the
    ordered prefix `failed_prefix` has been explored (and failed) so far."""
    weights: dict[int, Fraction] = {}
    total = ZERO
    depth = len(failed_prefix)
    for order, p in mixture:
        if order[:depth] == failed_prefix:
            weights[order[depth]] = weights.get(order[depth], ZERO) + p
            total += p
    if total == 0:
        raise ValueError("history has probability zero under this mixture")
    return sorted((i, w / total) for i, w in weights.items())
