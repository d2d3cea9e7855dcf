"""
Exact rational feasibility for small linear systems.

Two engines share one contract, ``a . x <= b`` rows over Fractions:

* Fourier-Motzkin elimination, used for few variables. It only answers
  feasible / infeasible.
* A phase-one simplex with Bland's rule, used above that or when elimination
  produces too many rows. It also returns a feasible point (x >= 0).
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from ..config import settings

logger = logging.getLogger(__name__)

Row = tuple[tuple[Fraction, ...], Fraction]


# ----------------------------------------------------------------------
# Fourier-Motzkin
# ----------------------------------------------------------------------
def _normalize_row(coeffs: Sequence[Fraction], bound: Fraction) -> Row:
    pivot = next((abs(c) for c in coeffs if c != 0), None)
    if pivot is None:
        return tuple(coeffs), bound
    return tuple(c / pivot for c in coeffs), bound / pivot


def fourier_motzkin_feasible(
    rows: Sequence[Row], n_vars: int, row_limit: Optional[int] = None
) -> Optional[bool]:
    """
    Decide whether ``{x : a . x <= b for every row}`` is non-empty.

    Args:
        rows: pairs ``(a, b)`` with ``len(a) == n_vars``.
        n_vars: number of variables.
        row_limit: give up when an elimination step exceeds this many rows.

    Returns:
        bool | None: feasibility, or None when the row limit was hit.
    """
    row_limit = settings.fm_row_limit if row_limit is None else row_limit
    current = {_normalize_row(a, Fraction(b)) for a, b in rows}

    for k in reversed(range(n_vars)):
        positive, negative, kept = [], [], set()
        for a, b in current:
            if a[k] > 0:
                positive.append((a, b))
            elif a[k] < 0:
                negative.append((a, b))
            else:
                kept.add((a, b))

        for ap, bp in positive:
            for an, bn in negative:
                sp, sn = ap[k], -an[k]
                combined = tuple(x / sp + y / sn for x, y in zip(ap, an))
                kept.add(_normalize_row(combined, bp / sp + bn / sn))

        if len(kept) > row_limit:
            logger.debug("Fourier-Motzkin gave up at %d rows", len(kept))
            return None

        # rows without variables are decided on the spot
        current = set()
        for a, b in kept:
            if any(a):
                current.add((a, b))
            elif b < 0:
                return False

    return all(b >= 0 for _, b in current)


# ----------------------------------------------------------------------
# Phase-one simplex
# ----------------------------------------------------------------------
def _pivot(tableau: list[list[Fraction]], objective: list[Fraction], r: int, c: int) -> None:
    pivot_row = tableau[r]
    pv = pivot_row[c]
    pivot_row[:] = [v / pv for v in pivot_row]
    for i, row in enumerate(tableau):
        if i != r and row[c] != 0:
            f = row[c]
            row[:] = [x - f * y for x, y in zip(row, pivot_row)]
    if objective[c] != 0:
        f = objective[c]
        objective[:] = [x - f * y for x, y in zip(objective, pivot_row)]


def find_feasible_point(
    a_ub: Sequence[Sequence[Fraction]],
    b_ub: Sequence[Fraction],
    a_eq: Sequence[Sequence[Fraction]],
    b_eq: Sequence[Fraction],
    n_vars: int,
) -> Optional[list[Fraction]]:
    """
    Find ``x >= 0`` with ``a_ub x <= b_ub`` and ``a_eq x == b_eq``.

    Phase one of the simplex method over Fractions: every row receives a
    slack and, where the slack cannot start in the basis, an artificial
    variable whose sum is driven to zero. Entering and leaving variables
    follow Bland's rule, so the method terminates.

    Returns:
        list[Fraction] | None: a feasible point, or None when none exists.
    """
    rows: list[list[Fraction]] = []
    basis: list[int] = []
    n_slack = len(a_ub)
    width = n_vars + n_slack

    artificial_rows: list[int] = []
    for i, (a, b) in enumerate(zip(a_ub, b_ub)):
        row = [Fraction(v) for v in a] + [Fraction(0)] * n_slack
        row[n_vars + i] = Fraction(1)
        b = Fraction(b)
        if b < 0:
            row = [-v for v in row]
            b = -b
            artificial_rows.append(len(rows))
            basis.append(-1)
        else:
            basis.append(n_vars + i)
        rows.append(row + [b])
    for a, b in zip(a_eq, b_eq):
        row = [Fraction(v) for v in a] + [Fraction(0)] * n_slack
        b = Fraction(b)
        if b < 0:
            row = [-v for v in row]
            b = -b
        artificial_rows.append(len(rows))
        basis.append(-1)
        rows.append(row + [b])

    n_art = len(artificial_rows)
    tableau = []
    for i, row in enumerate(rows):
        art = [Fraction(0)] * n_art
        if i in artificial_rows:
            j = artificial_rows.index(i)
            art[j] = Fraction(1)
            basis[i] = width + j
        tableau.append(row[:-1] + art + [row[-1]])

    total = width + n_art
    objective = [Fraction(0)] * width + [Fraction(1)] * n_art + [Fraction(0)]
    for i in artificial_rows:
        objective = [x - y for x, y in zip(objective, tableau[i])]

    while True:
        entering = next((j for j in range(total) if objective[j] < 0), None)
        if entering is None:
            break
        candidates = [
            (tableau[i][-1] / tableau[i][entering], basis[i], i)
            for i in range(len(tableau))
            if tableau[i][entering] > 0
        ]
        if not candidates:
            # phase one is bounded below by zero
            break
        _, _, leaving = min(candidates)
        _pivot(tableau, objective, leaving, entering)
        basis[leaving] = entering

    if objective[-1] != 0:
        return None

    point = [Fraction(0)] * n_vars
    for i, var in enumerate(basis):
        if var < n_vars:
            point[var] = tableau[i][-1]
    return point


# ----------------------------------------------------------------------
# Cone queries used by the symbolic engine
# ----------------------------------------------------------------------
@lru_cache(maxsize=200_000)
def cone_has_strict_negative(forms: tuple[tuple[int, ...], ...], n_vars: int) -> bool:
    """
    Is there ``u <= 0`` with ``L(u) < 0`` for every form ``L``?

    The forms are homogeneous, so strictness is replaced by ``L(u) <= -1``.
    """
    if not forms:
        return True
    if n_vars == 0:
        return False

    if n_vars <= settings.fm_max_vars:
        rows = [
            (tuple(Fraction(int(i == j)) for j in range(n_vars)), Fraction(0))
            for i in range(n_vars)
        ]
        rows += [(tuple(Fraction(c) for c in form), Fraction(-1)) for form in forms]
        decided = fourier_motzkin_feasible(rows, n_vars)
        if decided is not None:
            return decided

    # substitute v = -u >= 0: L(u) <= -1 becomes (-L) . v <= -1
    a_ub = [[Fraction(-c) for c in form] for form in forms]
    b_ub = [Fraction(-1)] * len(forms)
    return find_feasible_point(a_ub, b_ub, [], [], n_vars) is not None
