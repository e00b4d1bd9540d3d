"""Exact linear programming by two-phase tableau simplex over Fractions.

Tiny dense programs only (the zero-sum games in this package have at most a
few hundred variables), so clarity wins over sparsity. Bland's rule keeps
pivoting deterministic and cycle-free; every returned value is an exact
rational, which the game oracles rely on for equality assertions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import LPInfeasible, LPUnbounded

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class LPSolution:
    x: tuple[Fraction, ...]
    value: Fraction


def _pivot(tableau, basis, row, col):
    piv = tableau[row][col]
    tableau[row] = [v / piv for v in tableau[row]]
    for r, line in enumerate(tableau):
        if r != row and line[col] != 0:
            f = line[col]
            prow = tableau[row]
            tableau[r] = [v - f * pv for v, pv in zip(line, prow)]
    basis[row] = col


def _run_simplex(tableau, basis, costs, blocked_cols):
    """Minimize costs over the current tableau (rows: constraints, last
    column: rhs). Bland's rule; `blocked_cols` never enter the basis."""
    ncols = len(tableau[0]) - 1
    while True:
        cb = [costs[b] for b in basis]
        entering = -1
        for j in range(ncols):
            if j in blocked_cols:
                continue
            red = costs[j] - sum(cb[i] * tableau[i][j] for i in range(len(basis)))
            if red < 0:
                entering = j
                break
        if entering < 0:
            return
        leaving = -1
        best = None
        for i, line in enumerate(tableau):
            a = line[entering]
            if a > 0:
                ratio = line[-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best = ratio
                    leaving = i
        if leaving < 0:
            raise LPUnbounded("objective unbounded below")
        _pivot(tableau, basis, leaving, entering)


def solve_min(c, a_ub=None, b_ub=None, a_eq=None, b_eq=None) -> LPSolution:
    """minimize c.x  s.t.  a_ub.x <= b_ub,  a_eq.x == b_eq,  x >= 0."""
    a_ub = [list(r) for r in (a_ub or [])]
    b_ub = list(b_ub or [])
    a_eq = [list(r) for r in (a_eq or [])]
    b_eq = list(b_eq or [])
    n = len(c)
    rows = []
    for coeffs, rhs in zip(a_ub, b_ub):
        rows.append((coeffs, Fraction(rhs), "ub"))
    for coeffs, rhs in zip(a_eq, b_eq):
        rows.append((coeffs, Fraction(rhs), "eq"))
    m = len(rows)

    # Columns: n structural, m slack/surplus, then artificials as needed.
    art_rows = []
    base_cols = n + m
    tableau = []
    basis = []
    for i, (coeffs, rhs, kind) in enumerate(rows):
        sign = 1 if rhs >= 0 else -1
        line = [sign * Fraction(v) for v in coeffs] + [ZERO] * m + [ZERO]
        if kind == "ub":
            line[n + i] = Fraction(sign)
        line[-1] = sign * rhs
        if kind == "ub" and sign == 1:
            basis.append(n + i)
        else:
            art_rows.append(i)
            basis.append(None)  # placeholder until artificial column added
        tableau.append(line)

    n_art = len(art_rows)
    for j, i in enumerate(art_rows):
        for r, line in enumerate(tableau):
            line.insert(base_cols + j, ONE if r == i else ZERO)
        basis[i] = base_cols + j
    total_cols = base_cols + n_art

    if n_art:
        phase1 = [ZERO] * total_cols
        for j in range(n_art):
            phase1[base_cols + j] = ONE
        _run_simplex(tableau, basis, phase1, blocked_cols=frozenset())
        cb = [phase1[b] for b in basis]
        val = sum(cb[i] * tableau[i][-1] for i in range(m))
        if val != 0:
            raise LPInfeasible("phase-1 optimum is positive")
        # Pivot any artificial still in the basis out on a non-artificial column.
        for i, b in enumerate(basis):
            if b >= base_cols:
                for j in range(base_cols):
                    if tableau[i][j] != 0:
                        _pivot(tableau, basis, i, j)
                        break

    phase2 = [Fraction(v) for v in c] + [ZERO] * (m + n_art)
    blocked = frozenset(range(base_cols, total_cols))
    _run_simplex(tableau, basis, phase2, blocked_cols=blocked)

    x = [ZERO] * n
    for i, b in enumerate(basis):
        if b < n:
            x[b] = tableau[i][-1]
    value = sum(Fraction(ci) * xi for ci, xi in zip(c, x))
    return LPSolution(x=tuple(x), value=value)


def solve_dual_min(c, a_ub=None, b_ub=None, a_eq=None, b_eq=None):
    """Exact optimal dual multipliers for the same program solve_min takes.

    Returns (value, y_ub, y_eq) with y_ub <= 0 componentwise, by solving the
    explicit dual as a second primal: an independent certificate rather than
    a tableau read-off.
    """
    a_ub = [list(r) for r in (a_ub or [])]
    b_ub = list(b_ub or [])
    a_eq = [list(r) for r in (a_eq or [])]
    b_eq = list(b_eq or [])
    n = len(c)
    p, q = len(a_ub), len(a_eq)
    # Dual: max b_ub.y + b_eq.w  s.t.  A_ub^T y + A_eq^T w <= c, y <= 0, w free.
    # Substitute y = -u (u >= 0), w = wp - wn and minimize the negation.
    nvars = p + 2 * q
    obj = [Fraction(b_ub[i]) for i in range(p)] + \
          [-Fraction(b_eq[j]) for j in range(q)] + \
          [Fraction(b_eq[j]) for j in range(q)]
    rows = []
    rhs = []
    for col in range(n):
        row = [-Fraction(a_ub[i][col]) for i in range(p)] + \
              [Fraction(a_eq[j][col]) for j in range(q)] + \
              [-Fraction(a_eq[j][col]) for j in range(q)]
        rows.append(row)
        rhs.append(Fraction(c[col]))
    sol = solve_min(obj, a_ub=rows, b_ub=rhs) if nvars else LPSolution((), ZERO)
    u = sol.x[:p]
    wp = sol.x[p:p + q]
    wn = sol.x[p + q:]
    y_ub = tuple(-ui for ui in u)
    y_eq = tuple(a - b for a, b in zip(wp, wn))
    value = -sol.value
    return value, y_ub, y_eq
