"""Graded-commutative polynomial rings over F_p or Z_(p).

A ring is a list of named generators with a topological degree.  Odd
generators are exterior and anticommute; even generators may carry a
height h (g^h = 0).  Polynomials are sparse dicts from exponent tuples to
coefficients: ints in [0, p) in ``"fp"`` mode, p-local Fractions in
``"zp"`` mode.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InhomogeneousError, PrimeMismatchError
from .scalars import check_plocal, is_prime, to_fp


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    top_degree: int
    height: int | None = None

    def __post_init__(self):
        if not self.name.isidentifier() and not self.name.replace("'", "").isidentifier():
            raise ValueError(f"bad generator name {self.name!r}")
        if self.is_odd and self.height not in (None, 2):
            raise ValueError(f"odd generator {self.name} is exterior")
        if self.height is not None and self.height < 1:
            raise ValueError("height must be positive")

    @property
    def is_odd(self) -> bool:
        return self.top_degree % 2 == 1

    @property
    def parity(self) -> str:
        return "odd" if self.is_odd else "even"

    @property
    def chow_degree(self):
        return self.top_degree // 2 if not self.is_odd else Fraction(self.top_degree, 2)

    @property
    def bound(self):
        """Largest allowed exponent, or None."""
        if self.is_odd:
            return 1
        return None if self.height is None else self.height - 1


class GradedRing:
    def __init__(self, generators, p: int, mode: str = "fp"):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if mode not in ("fp", "zp"):
            raise ValueError(f"unknown mode {mode!r}")
        self.generators = tuple(generators)
        self.p = p
        self.mode = mode
        self.is_fp = mode == "fp"
        self.names = tuple(g.name for g in self.generators)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate generator names")
        self.index = {n: i for i, n in enumerate(self.names)}
        self.degrees = tuple(g.top_degree for g in self.generators)
        self.bounds = tuple(g.bound for g in self.generators)
        self.odd = tuple(i for i, g in enumerate(self.generators) if g.is_odd)
        self._plain = not self.odd and all(b is None for b in self.bounds)
        self.nvars = len(self.generators)

    def _key(self):
        return (self.generators, self.p, self.mode)

    def __eq__(self, other):
        return isinstance(other, GradedRing) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        gens = ", ".join(f"{g.name}:{g.top_degree}" for g in self.generators)
        return f"GradedRing([{gens}], p={self.p}, mode={self.mode!r})"

    # constructing elements

    def coerce(self, c):
        if self.is_fp:
            if isinstance(c, int):
                return c % self.p
            return to_fp(c, self.p)
        return check_plocal(c, self.p)

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.scalar(1)

    def scalar(self, c):
        return Polynomial.from_terms(self, {(0,) * self.nvars: c})

    def gen(self, name):
        e = [0] * self.nvars
        e[self.index[name]] = 1
        return Polynomial(self, {tuple(e): 1 if self.is_fp else Fraction(1)})

    def gens(self):
        return [self.gen(n) for n in self.names]

    def monomial(self, exps, c=1):
        exps = tuple(exps)
        if not self.allowed(exps):
            return self.zero()
        return Polynomial.from_terms(self, {exps: c})

    def allowed(self, exps):
        return all(b is None or e <= b for e, b in zip(exps, self.bounds))

    def top_degree(self, exps):
        return sum(e * d for e, d in zip(exps, self.degrees))

    def with_mode(self, mode):
        return GradedRing(self.generators, self.p, mode)

    def extend(self, generators):
        return GradedRing(self.generators + tuple(generators), self.p, self.mode)

    # monomial arithmetic

    def mul_monomials(self, a, b):
        """(sign, a*b), or None when the product vanishes."""
        c = tuple(x + y for x, y in zip(a, b))
        if self._plain:
            return 1, c
        for e, bd in zip(c, self.bounds):
            if bd is not None and e > bd:
                return None
        sign = 1
        if self.odd:
            # moving each odd factor of b left past the odd factors of a
            # with larger index
            count = 0
            later = 0
            for i in reversed(self.odd):
                if b[i]:
                    count += later
                if a[i]:
                    later += 1
            if count & 1:
                sign = -1
        return sign, c

    def monomials_of_degree(self, top_degree):
        return _monomials(self.degrees, self.bounds, top_degree)

    def monomials_up_to(self, top_degree):
        out = []
        for d in range(top_degree + 1):
            out.extend(self.monomials_of_degree(d))
        return out

    def format_monomial(self, exps):
        parts = []
        for n, e in zip(self.names, exps):
            if e == 1:
                parts.append(n)
            elif e > 1:
                parts.append(f"{n}^{e}")
        return "*".join(parts) if parts else "1"


@lru_cache(maxsize=4096)
def _monomials(degrees, bounds, target):
    """Exponent vectors of the given weighted degree (weights may be negative
    only if every generator is negative)."""
    n = len(degrees)
    if n == 0:
        return ((),) if target == 0 else ()
    out = []
    w, bd = degrees[-1], bounds[-1]
    rest_d, rest_b = degrees[:-1], bounds[:-1]
    if w == 0:
        raise ValueError("degree-zero generators have infinitely many monomials")
    e = 0
    while True:
        r = target - e * w
        if (w > 0 and r < 0) or (w < 0 and r > 0):
            break
        if bd is not None and e > bd:
            break
        for m in _monomials(rest_d, rest_b, r):
            out.append(m + (e,))
        e += 1
    return tuple(out)


def _fmt_coeff(c):
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"({c.numerator}/{c.denominator})"
    return str(int(c))


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: GradedRing, terms: dict):
        self.ring = ring
        self.terms = terms

    @classmethod
    def from_terms(cls, ring, terms):
        out = {}
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != ring.nvars:
                raise ValueError("exponent vector has the wrong length")
            if not ring.allowed(e):
                continue
            c = ring.coerce(c)
            if c:
                out[e] = c
        return cls(ring, out)

    def _same(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                if other.ring.p != self.ring.p:
                    raise PrimeMismatchError("polynomials over different primes")
                raise ValueError("polynomials over different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.scalar(other)
        return None

    def __add__(self, other):
        other = self._same(other)
        if other is None:
            return NotImplemented
        t = dict(self.terms)
        fp, p = self.ring.is_fp, self.ring.p
        for e, c in other.terms.items():
            v = t.get(e, 0) + c
            if fp:
                v %= p
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return Polynomial(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        if self.ring.is_fp:
            p = self.ring.p
            return Polynomial(self.ring, {e: (-c) % p for e, c in self.terms.items()})
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._same(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._same(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c):
        c = self.ring.coerce(c)
        if not c:
            return self.ring.zero()
        if self.ring.is_fp:
            p = self.ring.p
            return Polynomial(self.ring, {e: x * c % p for e, x in self.terms.items()})
        return Polynomial(self.ring, {e: x * c for e, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._same(other)
        if other is None:
            return NotImplemented
        ring = self.ring
        fp, p = ring.is_fp, ring.p
        mul = ring.mul_monomials
        t = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                r = mul(ea, eb)
                if r is None:
                    continue
                sign, e = r
                v = t.get(e, 0) + sign * ca * cb
                if fp:
                    v %= p
                if v:
                    t[e] = v
                else:
                    t.pop(e, None)
        return Polynomial(ring, t)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.scalar(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    # degrees

    def top_degrees(self):
        return {self.ring.top_degree(e) for e in self.terms}

    def is_homogeneous(self):
        return len(self.top_degrees()) <= 1

    @property
    def top_degree(self):
        ds = self.top_degrees()
        if len(ds) > 1:
            raise InhomogeneousError(f"{self} is not homogeneous")
        return ds.pop() if ds else None

    @property
    def chow_degree(self):
        d = self.top_degree
        if d is None:
            return None
        return d // 2 if d % 2 == 0 else Fraction(d, 2)

    def homogeneous_part(self, top_degree):
        return Polynomial(self.ring, {e: c for e, c in self.terms.items()
                                      if self.ring.top_degree(e) == top_degree})

    # ordering and display

    def sort_key(self, e):
        """Graded reverse lexicographic order; larger is bigger."""
        return (self.ring.top_degree(e), tuple(-x for x in reversed(e)))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: self.sort_key(t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            return None
        return max(self.terms.items(), key=lambda t: self.sort_key(t[0]))

    def coefficient(self, exps):
        if isinstance(exps, Polynomial):
            (exps,) = exps.terms
        return self.terms.get(tuple(exps), 0)

    def __str__(self):
        if not self.terms:
            return "0"
        ring = self.ring
        out = []
        for i, (e, c) in enumerate(self.sorted_terms()):
            neg = not ring.is_fp and c < 0
            a = -c if neg else c
            mono = ring.format_monomial(e)
            if mono == "1":
                body = _fmt_coeff(a)
            elif a == 1:
                body = mono
            else:
                body = f"{_fmt_coeff(a)}*{mono}"
            if i == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({self})"

    # ring maps

    def substitute(self, images, target=None):
        """Apply the ring map sending each generator named in ``images`` to the
        given polynomial and every other generator to the same-named
        generator of ``target``."""
        target = target or self.ring
        gen_images = []
        for n in self.ring.names:
            if n in images:
                gen_images.append(images[n])
            else:
                gen_images.append(target.gen(n))
        out = target.zero()
        cache = {}
        for e, c in self.terms.items():
            term = target.scalar(c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = gen_images[i] ** k
                    term = term * cache[key]
            out = out + term
        return out

    def to_ring(self, target):
        """Reinterpret in a ring with (a superset of) the same generators,
        reducing coefficients when passing from Z_(p) to F_p."""
        if target.p != self.ring.p:
            raise PrimeMismatchError("different primes")
        if self.ring.is_fp and not target.is_fp:
            raise ValueError("cannot lift F_p coefficients to Z_(p)")
        idx = [target.index[n] for n in self.ring.names]
        terms = {}
        for e, c in self.terms.items():
            f = [0] * target.nvars
            for i, k in zip(idx, e):
                f[i] = k
            terms[tuple(f)] = c
        return Polynomial.from_terms(target, terms)
