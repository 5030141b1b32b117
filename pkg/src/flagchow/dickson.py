"""Dickson invariants c_{n,i}, the Euler class e_n, and their realization by
Milnor operations on B(Z/p)^n.

The classes are the coefficients of the orbit product

    prod over v in F_p^n of (t + v1*y1 + ... + vn*yn) = t^{p^n} + sum_i c_{n,i} t^{p^i}.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import PreconditionError
from .polyring import GeneratorSpec, GradedRing, Polynomial
from .steenrod import bzp_table, milnor_composite

ORBIT_LIMIT = 32      # largest p^n expanded as a literal orbit product
SIZE_LIMIT = 81       # largest p^n handled at all


def y_ring(n: int, p: int, prefix: str = "y") -> GradedRing:
    return GradedRing([GeneratorSpec(f"{prefix}{j}", 2) for j in range(1, n + 1)], p, "fp")


@dataclass
class DicksonData:
    n: int
    p: int
    c: dict                       # i -> c_{n,i}, 0 <= i <= n
    e: Polynomial | None = None
    scalar: int | None = None     # lambda with e^{p-1} = lambda * c_{n,0}
    d: dict = field(default_factory=dict)   # p = 2 only: i -> d_{n,i}
    method: str = ""

    def to_json(self):
        out = {"schema": 1, "n": self.n, "p": self.p, "method": self.method,
               "c": {str(i): str(f) for i, f in sorted(self.c.items())}}
        if self.e is not None:
            out["e"] = str(self.e)
            out["lambda"] = self.scalar
        if self.d:
            out["d"] = {str(i): str(f) for i, f in sorted(self.d.items())}
        return out


def _check_size(n, p, limit):
    if n < 1:
        raise ValueError("rank must be positive")
    if p**n > limit:
        raise PreconditionError(f"p^n = {p**n} exceeds the size limit {limit}")


def orbit_product(n: int, p: int, prefix: str = "y"):
    """Coefficients {k: poly} of the literal product over all p^n linear forms."""
    R = y_ring(n, p, prefix)
    T = R.extend([GeneratorSpec("t", 2)])
    ys = [T.gen(f"{prefix}{j}") for j in range(1, n + 1)]
    t = T.gen("t")
    prod = T.one()
    for v in itertools.product(range(p), repeat=n):
        form = t
        for a, y in zip(v, ys):
            if a:
                form = form + y.scale(a)
        prod = prod * form
    coeffs = {}
    ti = T.index["t"]
    for e, c in prod.terms.items():
        k = e[ti]
        rest = e[:ti] + e[ti + 1:]
        coeffs.setdefault(k, {})[rest] = c
    return {k: Polynomial.from_terms(R, terms) for k, terms in coeffs.items()}


def _orbit_classes(n, p, prefix):
    coeffs = orbit_product(n, p, prefix)
    powers = {p**i: i for i in range(n + 1)}
    stray = [k for k, f in coeffs.items() if f and k not in powers]
    if stray:
        raise AssertionError(f"orbit product has coefficients at t^{stray}")
    R = y_ring(n, p, prefix)
    return {i: coeffs.get(p**i, R.zero()) for i in range(n + 1)}


def _recursive_classes(n, p, prefix):
    """f_k(T) = f_{k-1}(T)^p - f_{k-1}(y_k)^{p-1} f_{k-1}(T), read off on the
    coefficients of the additive polynomials f_k."""
    R = y_ring(n, p, prefix)
    c = {0: R.one()}
    for k in range(1, n + 1):
        y = R.gen(f"{prefix}{k}")
        fy = R.zero()
        for i, ci in c.items():
            fy = fy + ci * y ** (p**i)
        w = fy ** (p - 1)
        new = {}
        for i in range(k + 1):
            val = R.zero()
            if i >= 1:
                val = val + c[i - 1] ** p
            if i <= k - 1:
                val = val - w * c[i]
            new[i] = val
        c = new
    return c


def dickson_classes(n: int, p: int, limit: int = SIZE_LIMIT, method: str = "auto") -> DicksonData:
    """c_{n,0}, ..., c_{n,n} (= 1) in F_p[y_1, ..., y_n].

    ``method`` is "orbit" (literal product over F_p^n), "recursion"
    (Frobenius recursion on additive polynomials) or "auto" (the orbit
    product when p^n <= ORBIT_LIMIT).
    """
    _check_size(n, p, limit)
    if method == "auto":
        method = "orbit" if p**n <= ORBIT_LIMIT else "recursion"
    if method == "orbit":
        c = _orbit_classes(n, p, "y")
    elif method == "recursion":
        c = _recursive_classes(n, p, "y")
    else:
        raise ValueError(f"unknown method {method!r}")
    return DicksonData(n, p, c, method=method)


def line_representatives(n: int, p: int):
    """One vector per line of F_p^n, monic in its first nonzero coordinate."""
    reps = []
    for v in itertools.product(range(p), repeat=n):
        nz = [a for a in v if a]
        if nz and nz[0] == 1:
            reps.append(v)
    return reps


def euler_class(n: int, p: int, limit: int = SIZE_LIMIT, data: DicksonData | None = None):
    """(e_n, lambda) with e_n the product of the line representatives and
    e_n^{p-1} = lambda * c_{n,0}."""
    _check_size(n, p, limit)
    R = y_ring(n, p)
    ys = R.gens()
    e = R.one()
    for v in line_representatives(n, p):
        form = R.zero()
        for a, y in zip(v, ys):
            if a:
                form = form + y.scale(a)
        e = e * form
    data = data or dickson_classes(n, p, limit)
    lam = proportionality(e ** (p - 1), data.c[0])
    if lam is None:
        raise AssertionError(f"e_{n}^{p - 1} is not a multiple of c_{n},0")
    return e, lam


def with_euler_class(data: DicksonData) -> DicksonData:
    data.e, data.scalar = euler_class(data.n, data.p, data=data)
    return data


def proportionality(a: Polynomial, b: Polynomial):
    """lambda in F_p^x with a = lambda * b, or None.  Both zero gives 1."""
    if a.is_zero() and b.is_zero():
        return 1
    if a.is_zero() or b.is_zero():
        return None
    m, cb = b.leading_term()
    ca = a.terms.get(m)
    if ca is None:
        return None
    lam = ca * pow(cb, -1, a.ring.p) % a.ring.p
    return lam if a == b.scale(lam) else None


def d_classes(n: int, limit: int = SIZE_LIMIT, method: str = "auto") -> dict:
    """d_{n,i} in F_2[x_1, ..., x_n], the x-analogue of c_{n,i}.

    The x_j are treated as polynomial variables here.  Checks that
    d_{n,i}^2 equals c_{n,i} with y_j = x_j^2.
    """
    _check_size(n, 2, limit)
    if method == "auto":
        method = "orbit" if 2**n <= ORBIT_LIMIT else "recursion"
    d = _orbit_classes(n, 2, "x") if method == "orbit" else _recursive_classes(n, 2, "x")
    c = dickson_classes(n, 2, limit, method).c
    X = y_ring(n, 2, "x")
    squares = {f"y{j}": X.gen(f"x{j}") ** 2 for j in range(1, n + 1)}
    for i in range(n + 1):
        if d[i] ** 2 != c[i].substitute(squares, X):
            raise AssertionError(f"d_{n},{i}^2 differs from c_{n},{i}")
    return d


@dataclass
class CompositeCheck:
    n: int
    p: int
    rows: list      # (i, composite, e*c, lambda or None)

    @property
    def ok(self):
        return all(r[3] is not None for r in self.rows)

    def __bool__(self):
        return self.ok

    def describe(self):
        lines = []
        for i, lhs, rhs, lam in self.rows:
            status = f"equal up to {lam}" if lam is not None else "MISMATCH"
            lines.append(f"i={i}: {status}: {lhs}  vs  {rhs}")
        return "\n".join(lines)


def verify_mimura_kameko(n: int, p: int) -> CompositeCheck:
    """Compare Q_0 ... (Q_i omitted) ... Q_n (x_1 ... x_n) with e_n c_{n,i}
    for 0 <= i <= n, up to a scalar in F_p^x."""
    data = with_euler_class(dickson_classes(n, p))
    T = bzp_table(n, p, i_max=n)
    R = T.ring
    top = R.one()
    for j in range(1, n + 1):
        top = top * R.gen(f"x{j}")
    rows = []
    for i in range(n + 1):
        lhs = milnor_composite(i, n, top, T)
        rhs = (data.e * data.c[i]).to_ring(R)
        rows.append((i, lhs, rhs, proportionality(lhs, rhs)))
    return CompositeCheck(n, p, rows)


def _poly_Q(j: int, f: Polynomial) -> Polynomial:
    """Q_j on F_2[x_1..x_n] with Q_j(x) = x^{2^{j+1}}: a derivation."""
    R = f.ring
    out = {}
    for e, c in f.terms.items():
        for k, ek in enumerate(e):
            if ek % 2:
                m = list(e)
                m[k] += 2 ** (j + 1) - 1
                m = tuple(m)
                out[m] = (out.get(m, 0) + c) % 2
    return Polynomial.from_terms(R, out)


@dataclass
class ConventionRow:
    model: str          # "graded" or "polynomial"
    shift: int          # Q_{i+shift} is the omitted operation
    max_index: int
    matches: list       # i values with composite == d_{n,i}
    factorizations: dict   # i -> j when composite == d_{n,0} * d_{n,j}

    def holds(self, n):
        return len(self.matches) == n + 1



def d_class_conventions(n: int):
    """Compute Q_0 ... (Q_{i+shift} omitted) ... Q_m (x_1 ... x_n) for a range of
    (shift, m) in two models and compare with d_{n,i}.

    In the graded model the x_j are exterior with Q_j(x) = y^{2^j}, and the
    result is read in F_2[x] through y = x^2.  In the polynomial model the
    operations act on F_2[x] with Q_j(x) = x^{2^{j+1}}.  Returns a list of
    ConventionRow; a convention holds when ``matches`` covers every i.
    """
    d = d_classes(n)
    X = d[0].ring
    T = bzp_table(n, 2, i_max=n + 1)
    G = T.ring
    to_x = {f"y{j}": X.gen(f"x{j}") ** 2 for j in range(1, n + 1)}
    to_x.update({f"x{j}": X.gen(f"x{j}") for j in range(1, n + 1)})
    top_g = G.one()
    top_x = X.one()
    for j in range(1, n + 1):
        top_g = top_g * G.gen(f"x{j}")
        top_x = top_x * X.gen(f"x{j}")
    rows = []
    for model in ("graded", "polynomial"):
        for shift in (-1, 0, 1):
            for m in range(max(n - 3, -1), n + 1):
                matches, fact = [], {}
                for i in range(n + 1):
                    hat = i + shift
                    if model == "graded":
                        val = milnor_composite(hat, m, top_g, T).substitute(to_x, X) if m >= 0 else top_x
                    else:
                        val = top_x
                        for j in range(m, -1, -1):
                            if j != hat:
                                val = _poly_Q(j, val)
                    if val == d[i]:
                        matches.append(i)
                    for j in range(n + 1):
                        if val and val == d[0] * d[j]:
                            fact[i] = j
                rows.append(ConventionRow(model, shift, m, matches, fact))
    return rows
