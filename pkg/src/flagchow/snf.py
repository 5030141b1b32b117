"""Smith normal form over the local ring Z_(p), and rank over F_p.

Matrices are given as sequences of sparse rows ``{column: value}`` (or dense
lists).  Values may be ints or p-local Fractions.  Every row operation used
multiplies by a p-local unit, so the elementary divisors are those of the
original matrix over Z_(p).
"""
from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction

from .scalars import check_plocal, int_valuation, prime_to_p_part


def _as_dict(row):
    if isinstance(row, dict):
        return row
    return {j: x for j, x in enumerate(row) if x}


def _integral(row, p):
    """Scale a row by a unit so that its entries become coprime-content ints."""
    row = {j: check_plocal(x, p) for j, x in _as_dict(row).items() if x}
    if not row:
        return {}
    den = math.lcm(*(x.denominator for x in row.values()))
    out = {j: int(x * den) for j, x in row.items()}
    return _strip(out, p)


def _strip(row, p):
    g = prime_to_p_part(math.gcd(*row.values()), p) if row else 1
    if g > 1:
        row = {j: x // g for j, x in row.items()}
    return row


def _eliminate(target, pivot_row, col, a, v, p):
    """Clear ``target[col]`` using the pivot row whose entry there is a = p^v * u."""
    u = a // p**v
    b = target[col]
    w = b // p**v
    out = {j: u * x for j, x in target.items()}
    for j, x in pivot_row.items():
        y = out.get(j, 0) - w * x
        if y:
            out[j] = y
        else:
            out.pop(j, None)
    return _strip(out, p)


def local_smith_valuations(rows, p):
    """Valuations of the nonzero elementary divisors, sorted ascending."""
    rows = [r for r in (_integral(r, p) for r in rows) if r]
    vals = []
    while rows:
        best = None
        for ri, r in enumerate(rows):
            for j, x in r.items():
                v = int_valuation(x, p)
                if best is None or v < best[0]:
                    best = (v, ri, j)
                    if v == 0:
                        break
            if best is not None and best[0] == 0:
                break
        v, ri, col = best
        piv = rows.pop(ri)
        a = piv[col]
        new_rows = []
        for r in rows:
            if col in r:
                r = _eliminate(r, piv, col, a, v, p)
            if r:
                new_rows.append(r)
        # the rest of the pivot row is cleared by column operations, which
        # touch no other row since the pivot column is now zero elsewhere
        rows = [{j: x for j, x in r.items() if j != col} for r in new_rows]
        rows = [r for r in rows if r]
        vals.append(v)
    return sorted(vals)


def cokernel(num_generators, relations, p):
    """Z_(p)^num_generators modulo the span of the relation vectors.

    Returns ``(free_rank, Counter({p**k: multiplicity}))``.
    """
    vals = local_smith_valuations(relations, p)
    torsion = Counter(p**v for v in vals if v > 0)
    return num_generators - len(vals), torsion


def rank_mod_p(rows, p):
    rows = [{j: int(check_plocal(x, p).numerator * pow(Fraction(x).denominator, -1, p)) % p
             for j, x in _as_dict(r).items()} for r in rows]
    rows = [{j: x for j, x in r.items() if x} for r in rows]
    pivots = {}
    rank = 0
    for r in rows:
        while r:
            col = min(r)
            if col not in pivots:
                inv = pow(r[col], -1, p)
                pivots[col] = {j: x * inv % p for j, x in r.items()}
                rank += 1
                break
            c = r[col]
            for j, x in pivots[col].items():
                y = (r.get(j, 0) - c * x) % p
                if y:
                    r[j] = y
                else:
                    r.pop(j, None)
    return rank


def local_row_basis(rows, p):
    """A Z_(p)-basis of the row span, in echelon form.

    Returns a list of ``(pivot_column, row)``; pivot columns are distinct and
    increasing, and each row vanishes left of its pivot.
    """
    rows = [r for r in (_integral(r, p) for r in rows) if r]
    basis = []
    cols = sorted({j for r in rows for j in r})
    for col in cols:
        cand = [(int_valuation(r[col], p), i) for i, r in enumerate(rows) if col in r]
        if not cand:
            continue
        v, i = min(cand)
        piv = rows.pop(i)
        a = piv[col]
        rows = [_eliminate(r, piv, col, a, v, p) if col in r else r for r in rows]
        rows = [r for r in rows if r]
        basis.append((col, piv))
    return basis


def local_coordinates(basis, vector, p):
    """Coordinates of ``vector`` in an echelon basis, or None if it is not in the span."""
    w = {j: Fraction(x) for j, x in _as_dict(vector).items() if x}
    coords = []
    for col, row in basis:
        c = w.get(col, Fraction(0)) / row[col]
        if c and c.denominator % p == 0:
            return None
        coords.append(c)
        if c:
            for j, x in row.items():
                y = w.get(j, 0) - c * x
                if y:
                    w[j] = y
                else:
                    w.pop(j, None)
    if w:
        return None
    return coords
