"""The p-local Brown-Peterson coefficient ring and its invariant ideals.

BP* = Z_(p)[v1, ..., vN] with |v_i| = -2(p^i - 1).  Elements are
:class:`Polynomial` objects over :func:`bp_ring`; v0 stands for p itself.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import ContainmentError, InhomogeneousError
from .modules import GradedModule
from .parse import parse_poly
from .polyring import GeneratorSpec, GradedRing, Polynomial
from .scalars import PLocalScalar
from .snf import cokernel, local_coordinates, local_row_basis

BPCoeff = Polynomial


def v_degree(i: int, p: int) -> int:
    """Topological degree of v_i."""
    return -2 * (p**i - 1)


@lru_cache(maxsize=None)
def bp_ring(p: int, N: int) -> GradedRing:
    if N < 1:
        raise ValueError("need at least one v_i")
    return GradedRing([GeneratorSpec(f"v{i}", v_degree(i, p)) for i in range(1, N + 1)], p, "zp")


def v(i: int, p: int, N: int) -> Polynomial:
    """v_i as an element of BP*; v_0 is p."""
    R = bp_ring(p, N)
    if i == 0:
        return R.scalar(p)
    if not 1 <= i <= N:
        raise ValueError(f"v{i} is outside the truncation N={N}")
    return R.gen(f"v{i}")


def parse_bp(text: str, p: int, N: int) -> Polynomial:
    R = bp_ring(p, N)
    return parse_poly(text, R, {"p": R.scalar(p), "v0": R.scalar(p)})


def scalar(x, p: int) -> PLocalScalar:
    return PLocalScalar(x, p)


@dataclass(frozen=True)
class InvariantIdeal:
    """An ideal of BP* given by homogeneous generators."""

    generators: tuple
    p: int
    N: int
    label: str = ""

    def __post_init__(self):
        for g in self.generators:
            if g.ring != bp_ring(self.p, self.N):
                raise ValueError("generator lives in a different coefficient ring")
            if not g.is_homogeneous():
                raise InhomogeneousError(f"ideal generator {g} is not homogeneous")

    def __str__(self):
        body = ", ".join(str(g) for g in self.generators)
        return f"({body})"

    def degree_piece(self, top_degree):
        """Spanning vectors of the degree-``top_degree`` part, in the monomial
        basis of BP* in that degree."""
        R = bp_ring(self.p, self.N)
        basis = R.monomials_of_degree(top_degree)
        pos = {m: i for i, m in enumerate(basis)}
        vecs = []
        for g in self.generators:
            if g.is_zero():
                continue
            rest = top_degree - g.top_degree
            if rest > 0:
                continue
            for m in R.monomials_of_degree(rest):
                prod = g * R.monomial(m)
                vecs.append({pos[e]: c for e, c in prod.terms.items()})
        return basis, vecs


def _dedupe(gens):
    seen = {}
    for g in gens:
        if g.is_zero():
            continue
        key = str(g)
        seen.setdefault(key, g)
    return tuple(seen[k] for k in sorted(seen, key=lambda k: (-seen[k].top_degree, k)))


def ideal(gens, p: int, N: int, label: str = "") -> InvariantIdeal:
    gens = [parse_bp(g, p, N) if isinstance(g, str) else g for g in gens]
    return InvariantIdeal(_dedupe(gens), p, N, label)


def invariant_ideal(n: int, p: int, N: int) -> InvariantIdeal:
    """I_n = (p, v1, ..., v_{n-1}); I_0 = 0."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n - 1 > N:
        raise ValueError(f"I_{n} needs v{n - 1} but the truncation is N={N}")
    gens = [v(i, p, N) for i in range(n)]
    return InvariantIdeal(tuple(gens), p, N, f"I_{n}")


def negative_part(p: int, N: int) -> InvariantIdeal:
    """The ideal of elements of negative degree, (v1, ..., vN)."""
    return InvariantIdeal(tuple(v(i, p, N) for i in range(1, N + 1)), p, N, "BP<0")


def ideal_product(a: InvariantIdeal, b: InvariantIdeal) -> InvariantIdeal:
    if (a.p, a.N) != (b.p, b.N):
        raise ValueError("ideals over different coefficient rings")
    gens = [x * y for x in a.generators for y in b.generators]
    return InvariantIdeal(_dedupe(gens), a.p, a.N, f"{a.label}*{b.label}")


def ideal_quotient_module(big: InvariantIdeal, small: InvariantIdeal, top_degrees) -> GradedModule:
    """The Z_(p)-module big/small in each requested topological degree.

    Raises ContainmentError if ``small`` is not contained in ``big``.
    """
    if (big.p, big.N) != (small.p, small.N):
        raise ValueError("ideals over different coefficient rings")
    p = big.p
    groups = {}
    for d in top_degrees:
        if d > 0:
            continue
        _, vecs = big.degree_piece(d)
        _, sub = small.degree_piece(d)
        basis = local_row_basis(vecs, p)
        rels = []
        for w in sub:
            coords = local_coordinates(basis, w, p)
            if coords is None:
                raise ContainmentError(f"{small} is not contained in {big} (degree {d})")
            rels.append(coords)
        free, tors = cokernel(len(basis), rels, p)
        groups[d] = (free, tors)
    return GradedModule(groups, grading="top")
