"""Truncated Groebner bases of homogeneous ideals over F_p.

Only even generators are supported; generator heights enter as the extra
relations g^h.  The monomial order is graded reverse lexicographic with the
generators' degrees as weights.  Pairs are treated degree by degree, so a
basis computed through degree D gives correct normal forms, standard
monomials and Hilbert function in all degrees <= D.
"""
from __future__ import annotations

import heapq

from ..errors import InhomogeneousError, TruncationError
from ..modules import HilbertSeries
from ..polyring import GradedRing, Polynomial


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class _Engine:
    def __init__(self, ring: GradedRing):
        self.ring = ring
        self.p = ring.p
        self.w = ring.degrees
        self._hk = {}

    def deg(self, m):
        return sum(x * y for x, y in zip(m, self.w))

    def heap_key(self, m):
        # smallest key = largest monomial in grevlex among equal degrees
        k = self._hk.get(m)
        if k is None:
            k = (-self.deg(m),) + tuple(reversed(m))
            self._hk[m] = k
        return k

    def lead(self, f):
        return min(f, key=self.heap_key)

    def monic(self, f):
        lm = self.lead(f)
        inv = pow(f[lm], -1, self.p)
        return {m: c * inv % self.p for m, c in f.items()}

    def reduce(self, f, basis, full=True):
        """Normal form of dict f modulo a list of (lm, monic poly) pairs."""
        p = self.p
        f = dict(f)
        heap = [(self.heap_key(m), m) for m in f]
        heapq.heapify(heap)
        out = {}
        while heap:
            _, m = heapq.heappop(heap)
            c = f.pop(m, 0)
            if not c:
                continue
            for lm, g in basis:
                if _divides(lm, m):
                    q = tuple(x - y for x, y in zip(m, lm))
                    for mg, cg in g.items():
                        if mg == lm:
                            continue
                        mm = tuple(x + y for x, y in zip(mg, q))
                        old = f.get(mm)
                        v = ((old or 0) - c * cg) % p
                        if v:
                            if old is None:
                                heapq.heappush(heap, (self.heap_key(mm), mm))
                            f[mm] = v
                        elif old is not None:
                            del f[mm]
                    break
            else:
                out[m] = c
                if not full:
                    out.update(f)
                    return out
        return out

    def spoly(self, f, lf, g, lg):
        l = _lcm(lf, lg)
        qa = tuple(x - y for x, y in zip(l, lf))
        qb = tuple(x - y for x, y in zip(l, lg))
        out = {}
        p = self.p
        for m, c in f.items():
            mm = tuple(x + y for x, y in zip(m, qa))
            out[mm] = (out.get(mm, 0) + c) % p
        for m, c in g.items():
            mm = tuple(x + y for x, y in zip(m, qb))
            out[mm] = (out.get(mm, 0) - c) % p
        return {m: c for m, c in out.items() if c}


class GroebnerBasis:
    """A reduced Groebner basis valid through Chow degree ``bound``."""

    def __init__(self, ring, polys, bound):
        self.ring = ring
        self.bound = bound
        self._eng = _Engine(ring)
        self._basis = []
        for f in polys:
            lm = self._eng.lead(f)
            self._basis.append((lm, f))
        self._basis.sort(key=lambda t: self._eng.heap_key(t[0]), reverse=True)
        self._std_cache = {}

    @property
    def polynomials(self):
        return [Polynomial(self.ring, dict(f)) for _, f in self._basis]

    @property
    def leading_monomials(self):
        return [lm for lm, _ in self._basis]

    def _check_degree(self, poly):
        for d in poly.top_degrees():
            if d > 2 * self.bound:
                raise TruncationError(f"degree {d / 2} is past the truncation {self.bound}")

    def normal_form(self, poly: Polynomial) -> Polynomial:
        poly = poly.to_ring(self.ring) if poly.ring != self.ring else poly
        self._check_degree(poly)
        return Polynomial(self.ring, self._eng.reduce(poly.terms, self._basis))

    def contains(self, poly) -> bool:
        return self.normal_form(poly).is_zero()

    def is_standard(self, m) -> bool:
        return not any(_divides(lm, m) for lm, _ in self._basis)

    def standard_monomials(self, degree):
        """Standard monomials of the given Chow degree."""
        if degree > self.bound:
            raise TruncationError(f"degree {degree} is past the truncation {self.bound}")
        if degree not in self._std_cache:
            self._std_cache[degree] = [
                m for m in self.ring.monomials_of_degree(2 * degree) if self.is_standard(m)]
        return self._std_cache[degree]

    def hilbert_series(self, bound=None) -> HilbertSeries:
        """F_p-dimensions of the quotient by Chow degree."""
        bound = self.bound if bound is None else bound
        if bound > self.bound:
            raise TruncationError(f"degree {bound} is past the truncation {self.bound}")
        return HilbertSeries({d: len(self.standard_monomials(d)) for d in range(bound + 1)}, bound)


def _prepare(relations, ring=None):
    rels = list(relations)
    if ring is None:
        if not rels:
            raise ValueError("no relations and no ring given")
        ring = rels[0].ring
    if not ring.is_fp:
        ring = ring.with_mode("fp")
    if ring.odd:
        raise ValueError("Groebner bases are only computed for even generators")
    if any(d <= 0 for d in ring.degrees):
        raise ValueError("generators must have positive degree")
    polys = []
    for r in rels:
        r = r.to_ring(ring) if r.ring != ring else r
        if not r.is_homogeneous():
            raise InhomogeneousError(f"relation {r} is not homogeneous")
        if r:
            polys.append(dict(r.terms))
    # heights become relations on a plain polynomial ring
    plain = GradedRing([type(g)(g.name, g.top_degree) for g in ring.generators], ring.p, "fp")
    for i, b in enumerate(ring.bounds):
        if b is not None:
            e = [0] * ring.nvars
            e[i] = b + 1
            polys.append({tuple(e): 1})
    return plain, polys


def groebner_fp(relations, bound: int, ring: GradedRing | None = None) -> GroebnerBasis:
    """Groebner basis of the ideal generated by ``relations``, valid through
    Chow degree ``bound``."""
    ring, polys = _prepare(relations, ring)
    chow_bound, bound = bound, 2 * bound
    eng = _Engine(ring)
    deg = eng.deg
    G = []        # list of (lm, poly)
    pairs = []    # heap of (degree, i, j)
    inputs = sorted((deg(next(iter(f))), k, f) for k, f in enumerate(polys))
    inputs = [(d, f) for d, _, f in inputs if d <= bound]

    def add(h):
        h = eng.monic(h)
        lh = eng.lead(h)
        k = len(G)
        G.append((lh, h))
        live = [i for i in range(k) if G[i] is not None]
        # Gebauer-Moeller update
        cand = [(i, _lcm(G[i][0], lh)) for i in live]
        keep = []
        for idx, (i, l) in enumerate(cand):
            if _coprime(G[i][0], lh):
                keep.append((i, l, True))
                continue
            others = cand[:idx] + cand[idx + 1:]
            if any(_divides(l2, l) and l2 != l for _, l2 in others):
                continue
            if any(l2 == l for _, l2, _c in keep):
                continue
            keep.append((i, l, False))
        old = []
        for d, i, j in pairs:
            if G[i] is None or G[j] is None:
                continue
            lij = _lcm(G[i][0], G[j][0])
            if (_divides(lh, lij) and _lcm(G[i][0], lh) != lij
                    and _lcm(G[j][0], lh) != lij):
                continue
            old.append((d, i, j))
        pairs[:] = old
        for i, l, cop in keep:
            if cop:
                continue
            d = deg(l)
            if d <= bound:
                pairs.append((d, i, k))
        heapq.heapify(pairs)

    ii = 0
    while ii < len(inputs) or pairs:
        d_in = inputs[ii][0] if ii < len(inputs) else None
        d_pair = pairs[0][0] if pairs else None
        d = min(x for x in (d_in, d_pair) if x is not None)
        todo = []
        while pairs and pairs[0][0] == d:
            _, i, j = heapq.heappop(pairs)
            if G[i] is None or G[j] is None:
                continue
            todo.append(eng.spoly(G[i][1], G[i][0], G[j][1], G[j][0]))
        while ii < len(inputs) and inputs[ii][0] == d:
            todo.append(inputs[ii][1])
            ii += 1
        for f in todo:
            basis = [g for g in G if g is not None]
            h = eng.reduce(f, basis)
            if h:
                add(h)

    # reduce the final basis
    live = [g for g in G if g is not None]
    mins = []
    seen = set()
    for lm, f in live:
        if lm in seen or any(_divides(l2, lm) and l2 != lm for l2, _ in live):
            continue
        seen.add(lm)
        mins.append((lm, f))
    reduced = []
    for k, (lm, f) in enumerate(mins):
        others = [g for j, g in enumerate(mins) if j != k]
        tail = eng.reduce({m: c for m, c in f.items() if m != lm}, others)
        tail[lm] = f[lm]
        reduced.append(eng.monic(tail))
    return GroebnerBasis(ring, reduced, chow_bound)
