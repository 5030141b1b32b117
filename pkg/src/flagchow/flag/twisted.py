"""Generically twisted flag varieties of type (I) and the additive
comparison with Rost-motive summands."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import PreconditionError
from ..gralg import AlgebraPresentation, groebner_fp
from ..modules import GradedModule, HilbertSeries


@dataclass
class TwistedResult:
    presentation: AlgebraPresentation
    hilbert: HilbertSeries          # of S(t)/(p, bb_i bb_j, bb_k)
    quotient_hilbert: HilbertSeries  # of S(t)/(bb_1..bb_l)
    comparison: HilbertSeries        # (1 + sum T^|bb_i|) * quotient_hilbert
    bound: int

    @property
    def matches(self):
        return self.hilbert == self.comparison


def _series(degrees, bound):
    coeffs = [0] * (bound + 1)
    for d in degrees:
        if d <= bound:
            coeffs[d] += 1
    return HilbertSeries(coeffs, bound)


def type_I_twisted(ring, bbars, p: int, bound: int | None = None) -> TwistedResult:
    """F_p presentation S(t)/(bb_i bb_j (i, j <= 2p-2), bb_k (k > 2p-2)) and
    the series of Z/p{1, bb_1, .., bb_{2p-2}} (x) S(t)/(bb)."""
    bbars = list(bbars)
    k = 2 * p - 2
    if len(bbars) < k:
        raise PreconditionError(f"need at least 2p-2 = {k} classes, got {len(bbars)}")
    if ring.mode != "fp" or ring.p != p:
        raise PreconditionError("type (I) presentations live over F_p")
    degs = [b.chow_degree for b in bbars]
    if bound is None:
        bound = sum(d - 1 for d in degs) + max(degs[:k], default=0)
    rels = [bbars[i] * bbars[j] for i in range(k) for j in range(i, k)] + bbars[k:]
    G = groebner_fp(rels, bound, ring=ring)
    Gq = groebner_fp(bbars, bound, ring=ring)
    hq = Gq.hilbert_series(bound)
    comparison = _series([0] + degs[:k], bound) * hq
    pres = AlgebraPresentation(ring, [r for r in rels if r], bound, name="type_I_twisted", partial=True)
    return TwistedResult(pres, G.hilbert_series(bound), hq, comparison, bound)


@dataclass
class AdditiveReport:
    ok: bool
    product: list
    target: list
    mismatches: list        # (degree, expected, found)
    bound: int


def _dims(obj, bound):
    if isinstance(obj, HilbertSeries):
        return [obj[d] for d in range(bound + 1)]
    if isinstance(obj, GradedModule):
        dims = obj.mod_p_dims()
        return [dims.get(d, 0) for d in range(bound + 1)]
    return [obj[d] if d < len(obj) else 0 for d in range(bound + 1)]


def psz_additive_check(core, cofactor, target, bound: int) -> AdditiveReport:
    """Compare target with core (x) cofactor degreewise over F_p through
    ``bound``.  Each argument may be a GradedModule (read mod p), a
    HilbertSeries, or a list of dimensions."""
    a, b, t = _dims(core, bound), _dims(cofactor, bound), _dims(target, bound)
    prod = [sum(a[i] * b[d - i] for i in range(d + 1)) for d in range(bound + 1)]
    bad = [(d, prod[d], t[d]) for d in range(bound + 1) if prod[d] != t[d]]
    return AdditiveReport(not bad, prod, t, bad, bound)
