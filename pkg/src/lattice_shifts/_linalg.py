"""Exact Gaussian elimination over ``Fraction``."""

from __future__ import annotations

from fractions import Fraction


def _echelon(rows):
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((k for k in range(r, nrows) if rows[k][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for k in range(nrows):
            if k != r and rows[k][c] != 0:
                f = rows[k][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def solve(a, b):
    """Solve the square system ``a x = b`` exactly; raises ``ZeroDivisionError`` if singular."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    red, pivots = _echelon(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular system")
    return [red[k][n] for k in range(n)]


def rank(rows) -> int:
    rows = [[Fraction(x) for x in r] for r in rows]
    if not rows:
        return 0
    return len(_echelon(rows)[1])
