"""Exact linear algebra over Q(t) for States."""
from __future__ import annotations

from flint import fmpz_poly

from .core import State
from .scalar import Scalar

__all__ = ["rank_over_function_field", "decompose", "polynomial_rows", "solve_in_span"]


def polynomial_rows(rows: list[dict]) -> list[dict]:
    """Clear denominators row by row: Scalar entries become fmpz_poly."""
    out = []
    for row in rows:
        if not row:
            continue
        row = {c: v if isinstance(v, Scalar) else Scalar(v) for c, v in row.items()}
        den = fmpz_poly([1])
        for v in row.values():
            den = den * (v.den // den.gcd(v.den))
        prow = {c: v.num * (den // v.den) for c, v in row.items()}
        out.append(_primitive(prow))
    return out


def _primitive(row: dict) -> dict:
    g = None
    for v in row.values():
        g = v if g is None else g.gcd(v)
        if g.degree() == 0 and abs(int(g[0])) == 1:
            return row
    if g is None:
        return row
    return {c: v // g for c, v in row.items()}


def rank_over_function_field(rows: list[dict]) -> int:
    """Rank of a sparse matrix with fmpz_poly entries, over Q(t).

    Fraction-free incremental echelon form; every reduced row is replaced by
    its primitive part to keep the coefficients small.
    """
    pivots: list[tuple[object, fmpz_poly, dict]] = []
    for row in rows:
        r = dict(row)
        for col, pv, prow in pivots:
            rc = r.get(col)
            if rc is None:
                continue
            new = {}
            for c, v in r.items():
                new[c] = v * pv
            for c, v in prow.items():
                x = new.get(c, fmpz_poly(0)) - rc * v
                if x == 0:
                    new.pop(c, None)
                else:
                    new[c] = x
            new.pop(col, None)
            r = _primitive(new) if new else new
            if not r:
                break
        if r:
            col = min(r, key=lambda c: (r[c].degree(), c))
            pivots.append((col, r[col], r))
    return len(pivots)


def solve_in_span(target: dict, columns: list[dict]):
    """Coefficients x with sum x_i columns[i] = target, over Q(t); None if no solution."""
    keys = sorted(set(target).union(*[set(c) for c in columns]))
    ncols = len(columns)
    mat = []
    for key in keys:
        row = [col.get(key, Scalar(0)) for col in columns] + [target.get(key, Scalar(0))]
        mat.append(row)
    piv_cols = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, len(mat)):
        if mat[i][ncols]:
            return None
    sol = [Scalar(0)] * ncols
    for i, c in enumerate(piv_cols):
        sol[c] = mat[i][ncols]
    return sol


def decompose(target: State, basis: list[State]):
    """Write ``target`` as a combination of ``basis``; None if impossible."""
    if not basis:
        return None if target else []
    return solve_in_span(target.terms, [b.terms for b in basis])
