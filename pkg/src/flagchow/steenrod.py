"""Milnor operations Q_i and total reduced powers, driven by generator tables.

A table gives Q_i on each generator and the components P^0, P^1, ... of the
total power on each generator.  Q_i is extended as an odd derivation and the
total power multiplicatively.  ``power_step`` is the topological degree of
P^1: 2(p-1) for reduced powers (with P^k = Sq^{2k} at p = 2), or 1 for
tables written in terms of Sq^k.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb

from .errors import TableError
from .parse import parse_poly
from .polyring import GeneratorSpec, GradedRing, Polynomial


@dataclass
class OperationTable:
    ring: GradedRing
    q: dict                   # i -> {generator name: Polynomial}
    powers: dict              # generator name -> [P^0 g, P^1 g, ...]
    power_step: int
    complete: bool = True     # components past the listed ones vanish
    name: str = ""
    _qcache: dict = field(default_factory=dict, repr=False)
    _pcache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        p = self.ring.p
        for i, images in self.q.items():
            for g, img in images.items():
                if g not in self.ring.index:
                    raise TableError(f"Q{i} names unknown generator {g}")
                if img:
                    want = self.ring.generators[self.ring.index[g]].top_degree + 2 * p**i - 1
                    if img.top_degree != want:
                        raise ValueError(f"Q{i}({g}) = {img} has degree {img.top_degree}, expected {want}")
        for g, comps in self.powers.items():
            if not comps or comps[0] != self.ring.gen(g):
                raise ValueError(f"P^0({g}) must be {g}")
            base = self.ring.generators[self.ring.index[g]].top_degree
            for k, c in enumerate(comps):
                if c and c.top_degree != base + k * self.power_step:
                    raise ValueError(f"P^{k}({g}) = {c} has the wrong degree")

    @property
    def p(self):
        return self.ring.p

    @property
    def i_max(self):
        return max(self.q) if self.q else -1

    def q_degree(self, i):
        return 2 * self.p**i - 1

    def power_index(self, j):
        """Index k with P^k of the same degree as the reduced power P^j of
        degree 2j(p-1)."""
        d = 2 * j * (self.p - 1)
        if d % self.power_step:
            raise ValueError("degree not reachable by this table's powers")
        return d // self.power_step

    def to_json(self):
        gens = []
        for g in self.ring.generators:
            e = {"name": g.name, "top_deg": g.top_degree, "parity": g.parity}
            if g.height is not None and not g.is_odd:
                e["height"] = g.height
            gens.append(e)
        return {
            "schema": 1,
            "name": self.name,
            "p": self.p,
            "power_step": self.power_step,
            "complete": self.complete,
            "generators": gens,
            "Q": {str(i): {g: str(f) for g, f in imgs.items()} for i, imgs in sorted(self.q.items())},
            "P_total": {g: [str(c) for c in comps] for g, comps in self.powers.items()},
        }


def table_from_json(data) -> OperationTable:
    if isinstance(data, str):
        data = json.loads(data)
    p = int(data["p"])
    gens = []
    for g in data["generators"]:
        top = int(g["top_deg"]) if "top_deg" in g else 2 * int(g["chow_deg"])
        gens.append(GeneratorSpec(g["name"], top, g.get("height")))
    ring = GradedRing(gens, p, "fp")
    q = {int(i): {g: parse_poly(e, ring) for g, e in imgs.items()}
         for i, imgs in data.get("Q", {}).items()}
    powers = {g: [parse_poly(e, ring) for e in comps] for g, comps in data.get("P_total", {}).items()}
    step = int(data.get("power_step", 2 * (p - 1)))
    return OperationTable(ring, q, powers, step, bool(data.get("complete", True)), data.get("name", ""))


def _check(f, T):
    if f.ring != T.ring:
        raise ValueError("polynomial is not over the table's ring")


def apply_Q(i: int, f: Polynomial, T: OperationTable) -> Polynomial:
    """Q_i(f), extending the table as a derivation:
    Q(ab) = Q(a) b + (-1)^{|a|} a Q(b)."""
    _check(f, T)
    if i not in T.q:
        raise TableError(f"Q{i} is not in the table (i_max = {T.i_max})")
    out = T.ring.zero()
    for e, c in f.terms.items():
        out = out + _q_monomial(i, e, T).scale(c)
    return out


def _q_monomial(i, e, T):
    key = (i, e)
    hit = T._qcache.get(key)
    if hit is not None:
        return hit
    R = T.ring
    images = T.q[i]
    out = R.zero()
    n = R.nvars
    prefix_deg = 0
    for k in range(n):
        if not e[k]:
            continue
        name = R.names[k]
        if name not in images:
            raise TableError(f"Q{i}({name}) is missing from the table")
        img = images[name]
        if img:
            before = tuple(e[j] if j < k else 0 for j in range(n))
            after = tuple(e[j] if j > k else 0 for j in range(n))
            power = list(before[:k]) + [e[k] - 1] + [0] * (n - k - 1)
            term = R.monomial(before) * (R.monomial(tuple([0] * k + [e[k] - 1] + [0] * (n - k - 1)))
                                         * img).scale(e[k]) * R.monomial(after)
            del power
            if prefix_deg % 2:
                term = -term
            out = out + term
        prefix_deg += e[k] * R.degrees[k]
    T._qcache[key] = out
    return out


def _power_components(e, k, T):
    """[P^0, ..., P^k] of the monomial with exponents e."""
    key = (e, k)
    hit = T._pcache.get(key)
    if hit is not None:
        return hit
    R = T.ring
    comps = [R.one()] + [R.zero()] * k
    for j, ej in enumerate(e):
        if not ej:
            continue
        name = R.names[j]
        if name not in T.powers:
            raise TableError(f"the total power of {name} is missing from the table")
        g = list(T.powers[name][:k + 1])
        if len(g) < k + 1:
            if not T.complete:
                raise TableError(f"P^{len(g)}({name}) is not known to the table")
            g += [R.zero()] * (k + 1 - len(g))
        for _ in range(ej):
            new = [R.zero()] * (k + 1)
            for a in range(k + 1):
                if not comps[a]:
                    continue
                for b in range(k + 1 - a):
                    if g[b]:
                        new[a + b] = new[a + b] + comps[a] * g[b]
            comps = new
    T._pcache[key] = comps
    return comps


def apply_power(k: int, f: Polynomial, T: OperationTable) -> Polynomial:
    """P^k(f): the t^k coefficient of the multiplicative total power."""
    _check(f, T)
    if k < 0:
        raise ValueError("negative power index")
    out = T.ring.zero()
    for e, c in f.terms.items():
        out = out + _power_components(e, k, T)[k].scale(c)
    return out


def milnor_composite(hat: int, max_index: int, f: Polynomial, T: OperationTable) -> Polynomial:
    """Q_0 Q_1 ... Q_max with Q_hat left out, applied to f (Q_max acts first)."""
    if max_index > T.i_max:
        raise TableError(f"Q{max_index} is past the table's range (i_max = {T.i_max})")
    for j in range(max_index, -1, -1):
        if j != hat:
            f = apply_Q(j, f, T)
    return f


@dataclass
class RecursionReport:
    ok: bool | None        # None when nothing was checkable
    checked: int
    counterexample: tuple | None = None   # (i, monomial, lhs, rhs)
    skipped: list = field(default_factory=list)

    def __bool__(self):
        return bool(self.ok)

    def describe(self):
        if self.ok is None:
            return "nothing could be checked: " + "; ".join(self.skipped[:3])
        if self.ok:
            s = f"recursion holds on {self.checked} checks"
            if self.skipped:
                s += f" (not checkable: {', '.join(self.skipped)})"
            return s
        i, m, lhs, rhs = self.counterexample
        return f"Q{i + 1}({m}) = {lhs} but the commutator gives {rhs}"


def verify_Q_recursion(T: OperationTable, i_max: int, bound: int,
                       order: str = "PQ-QP") -> RecursionReport:
    """Check Q_{i+1} = P^{p^i} Q_i - Q_i P^{p^i} for i < i_max on every
    monomial of Chow degree <= bound (generators included).

    ``order="QP-PQ"`` checks the opposite sign instead; the two agree at
    p = 2.
    """
    if order not in ("PQ-QP", "QP-PQ"):
        raise ValueError(f"unknown order {order!r}")
    R = T.ring
    monos = [e for e in R.monomials_up_to(2 * bound) if any(e)]
    checked = 0
    skipped = []
    for i in range(i_max):
        if i + 1 not in T.q or i not in T.q:
            skipped.append(f"i={i}: Q{i + 1} not in table")
            continue
        k = T.power_index(T.p**i)
        for e in monos:
            f = R.monomial(e)
            try:
                lhs = apply_Q(i + 1, f, T)
                rhs = apply_power(k, apply_Q(i, f, T), T) - apply_Q(i, apply_power(k, f, T), T)
                if order == "QP-PQ":
                    rhs = -rhs
            except TableError as err:
                skipped.append(f"i={i} on {R.format_monomial(e)}: {err}")
                continue
            checked += 1
            if lhs != rhs:
                return RecursionReport(False, checked, (i, R.format_monomial(e), lhs, rhs), skipped)
    return RecursionReport(True if checked else None, checked, None, skipped)


# bundled tables

def bzp_table(n: int, p: int, i_max: int = 3) -> OperationTable:
    """B(Z/p)^n in the associated graded form: exterior x_j of degree 1,
    polynomial y_j of degree 2, Q_i(x_j) = y_j^{p^i}."""
    gens = [GeneratorSpec(f"x{j}", 1) for j in range(1, n + 1)]
    gens += [GeneratorSpec(f"y{j}", 2) for j in range(1, n + 1)]
    R = GradedRing(gens, p, "fp")
    q = {}
    for i in range(i_max + 1):
        q[i] = {}
        for j in range(1, n + 1):
            q[i][f"x{j}"] = R.gen(f"y{j}") ** (p**i)
            q[i][f"y{j}"] = R.zero()
    powers = {}
    for j in range(1, n + 1):
        powers[f"x{j}"] = [R.gen(f"x{j}")]
        powers[f"y{j}"] = [R.gen(f"y{j}"), R.gen(f"y{j}") ** p]
    return OperationTable(R, q, powers, 2 * (p - 1), True, f"bzp_{n}_p{p}")


@dataclass(frozen=True)
class SOMSpec:
    """Generators of the mod-2 cohomology of SO(m) in associated graded form."""

    m: int

    def __post_init__(self):
        if self.m < 3:
            raise ValueError("need m >= 3")

    @property
    def odd_indices(self):
        return [i for i in range(1, self.m, 2)]

    @property
    def y_indices(self):
        return [k for k in range(2, self.m, 4)]

    def height(self, k):
        """2^s with s minimal such that m <= 2^s * k."""
        s = 0
        while 2**s * k < self.m:
            s += 1
        return 2**s


def so_ring(m: int) -> GradedRing:
    spec = SOMSpec(m)
    gens = [GeneratorSpec(f"x{i}", i) for i in spec.odd_indices]
    gens += [GeneratorSpec(f"y{k}", k, spec.height(k)) for k in spec.y_indices]
    return GradedRing(gens, 2, "fp")


def so_class(R: GradedRing, m: int, index: int) -> Polynomial:
    """x_index, rewriting x_{2^a * 2o} as y_{2o}^{2^a}; zero once index >= m."""
    if index <= 0:
        raise ValueError("class index must be positive")
    if index >= m:
        return R.zero()
    if index % 2:
        return R.gen(f"x{index}")
    a = 0
    k = index
    while k % 4 == 0:
        k //= 2
        a += 1
    return R.gen(f"y{k}") ** (2**a)


def so_table(m: int, i_max: int = 3) -> OperationTable:
    """SO(m): Q_n(x_odd) = x_{odd + 2^{n+1} - 1} and Sq^k(x_i) = C(i, k) x_{i+k}."""
    R = so_ring(m)
    q = {}
    for n in range(i_max + 1):
        q[n] = {}
        for name in R.names:
            idx = int(name[1:])
            if name[0] == "x":
                q[n][name] = so_class(R, m, idx + 2**(n + 1) - 1)
            else:
                q[n][name] = R.zero()
    powers = {}
    for name in R.names:
        idx = int(name[1:])
        comps = [R.gen(name)]
        for k in range(1, m):
            comps.append(so_class(R, m, idx + k) if comb(idx, k) % 2 else R.zero())
        powers[name] = comps
    return OperationTable(R, q, powers, 1, True, f"so_{m}")


def g2_table() -> OperationTable:
    """Type-(I) generator data for G2 at p = 2 (P^1 = Sq^2)."""
    R = GradedRing([GeneratorSpec("x3", 3), GeneratorSpec("x5", 5), GeneratorSpec("y", 6, 2)], 2, "fp")
    g = R.gen
    q = {0: {"x3": R.zero(), "x5": g("y"), "y": R.zero()},
         1: {"x3": g("y"), "x5": R.zero(), "y": R.zero()}}
    # Sq^2 x5 and Sq^2 y vanish: nothing sits in degree 7, and y is a square
    powers = {"x3": [g("x3"), g("x5")], "x5": [g("x5"), R.zero()], "y": [g("y"), R.zero()]}
    return OperationTable(R, q, powers, 2, False, "g2")


def f4_table() -> OperationTable:
    """Type-(I) generator data for F4 at p = 3."""
    gens = [GeneratorSpec(f"x{d}", d) for d in (3, 7, 11, 15)] + [GeneratorSpec("y", 8, 3)]
    R = GradedRing(gens, 3, "fp")
    g = R.gen
    z = R.zero()
    q = {0: {"x3": z, "x7": g("y"), "x11": z, "x15": g("y") ** 2, "y": z},
         1: {"x3": g("y"), "x7": z, "x11": g("y") ** 2, "x15": z, "y": z}}
    powers = {"x3": [g("x3"), g("x7")], "x7": [g("x7"), z], "x11": [g("x11"), g("x15")],
              "x15": [g("x15"), z], "y": [g("y"), z]}
    return OperationTable(R, q, powers, 4, False, "f4")


def bundled_table(key: str) -> OperationTable:
    """Look up "bzp_<n>_p<p>", "so_<m>", "g2" or "f4"."""
    if key == "g2":
        return g2_table()
    if key == "f4":
        return f4_table()
    parts = key.split("_")
    try:
        if parts[0] == "bzp" and len(parts) == 3 and parts[2].startswith("p"):
            return bzp_table(int(parts[1]), int(parts[2][1:]))
        if parts[0] == "so" and len(parts) == 2:
            return so_table(int(parts[1]))
    except ValueError:
        pass
    raise KeyError(f"unknown table {key!r}")


@dataclass
class SOImage:
    m: int
    hit: dict              # i -> True when y_{2i} is some Sq^{2k} y_{2i'}
    witnesses: dict        # i -> (i', k)

    @property
    def unhit(self):
        return sorted(i for i, h in self.hit.items() if not h)


def so_steenrod_image(m: int, use_table: bool = True) -> SOImage:
    """Which y_{2i}, 1 <= i <= (m-1)//2, are hit by Sq^{2k} (k >= 1) from
    some y_{2i'}.  With ``use_table`` the operations are evaluated through
    the SO(m) table; otherwise by the binomial rule C(i', k) mod 2."""
    top = (m - 1) // 2
    hit, wit = {}, {}
    T = so_table(m) if use_table else None
    for i in range(1, top + 1):
        hit[i] = False
        for k in range(1, i):
            i2 = i - k
            if use_table:
                src = so_class(T.ring, m, 2 * i2)
                ok = apply_power(2 * k, src, T) == so_class(T.ring, m, 2 * i)
            else:
                ok = comb(i2, k) % 2 == 1
            if ok:
                hit[i] = True
                wit[i] = (i2, k)
                break
    return SOImage(m, hit, wit)
