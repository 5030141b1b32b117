"""Torsion modules M_n(y), Rost motives, Morava localization, the deg_v
inference engine, Q(X), and products of type-(I) blocks."""
from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass, field

from .coeff import bp_ring, ideal_product, ideal_quotient_module, negative_part, parse_bp
from .errors import (DegreeUnderflowError, InconsistentFactsError, ParseError,
                     PreconditionError, UnresolvedError)
from .modules import GradedModule
from .snf import cokernel


# M_n(y)

@dataclass
class MnModule:
    n: int
    p: int
    deg_y: int
    classes: list          # (name, chow degree, order); order 0 means free
    module: GradedModule


def mn_module(n: int, p: int, deg_y: int) -> MnModule:
    """M_n(y) = Z_(p){c_0} + Z/p{c_1, ..., c_{n-1}}, |c_i| = deg_y - (p^i - 1)."""
    if n < -1:
        raise ValueError("n must be at least -1")
    if n == -1:
        return MnModule(n, p, deg_y, [], GradedModule())
    if n >= 2 and deg_y - (p ** (n - 1) - 1) <= 0:
        raise DegreeUnderflowError(
            f"c_{n - 1} would sit in degree {deg_y - (p ** (n - 1) - 1)} <= 0; "
            f"a class of degree {deg_y} supports deg_v at most "
            f"{1 + max(k for k in range(n) if p**k <= max(deg_y, 1))}")
    classes = [("c0", deg_y, 0)]
    for i in range(1, n):
        classes.append((f"c{i}", deg_y - (p**i - 1), p))
    mod = GradedModule()
    for _, d, q in classes:
        mod = mod + GradedModule.cyclic(d, q)
    return MnModule(n, p, deg_y, classes, mod)


def ideal_module(gens, p: int, deg_y: int, N: int = 3) -> GradedModule:
    """The module J/(BP^{<0} J) placed on a class y of Chow degree deg_y, for
    an ideal J given by generator strings such as ["p", "v1^2"].  J = I_n
    gives M_n(y)."""
    from .coeff import ideal
    J = ideal(gens, p, N)
    low = min(g.top_degree for g in J.generators)
    span = range(0, 2 * low - 2 * (p**N - 1) - 1, -2)
    M = ideal_quotient_module(J, ideal_product(negative_part(p, N), J), span)
    groups = {}
    for d in M.degrees():
        groups[deg_y + d // 2] = M.group(d)
    out = GradedModule(groups)
    if any(d <= 0 for d in out.degrees() if out.torsion(d)):
        raise DegreeUnderflowError(f"torsion classes of {gens} on degree {deg_y} reach degree <= 0")
    return out


def rost_degree(n: int, p: int) -> int:
    """b_n = (p^n - 1)/(p - 1), the Chow degree of y in the Rost motive."""
    return (p**n - 1) // (p - 1)


def rost_chow(n: int, p: int) -> GradedModule:
    """Z at 0 plus M_n(y^i) on |y^i| = i*b_n for 1 <= i <= p-1."""
    if n < 1:
        raise ValueError("n must be positive")
    b = rost_degree(n, p)
    out = GradedModule.cyclic(0)
    for i in range(1, p):
        out = out + mn_module(n, p, i * b).module
    return out


# BP*-module presentations

@dataclass
class BPModulePresentation:
    """Generators (name, Chow degree) and relations {generator: BP* coefficient}."""

    p: int
    N: int
    generators: list
    relations: list = field(default_factory=list)

    def __post_init__(self):
        names = [g for g, _ in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        deg = dict(self.generators)
        for rel in self.relations:
            tops = set()
            for g, c in rel.items():
                if g not in deg:
                    raise ValueError(f"relation uses unknown generator {g}")
                if c.ring != bp_ring(self.p, self.N):
                    raise ValueError("coefficient over the wrong ring")
                for d in c.top_degrees():
                    tops.add(d + 2 * deg[g])
            if len(tops) > 1:
                raise ValueError(f"relation {self.format_relation(rel)} is not homogeneous")

    def format_relation(self, rel):
        parts = []
        for g, c in rel.items():
            if c:
                parts.append(f"({c})*[{g}]")
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        return {"schema": 1, "p": self.p, "N": self.N,
                "generators": [{"name": g, "chow_deg": d} for g, d in self.generators],
                "relations": [{g: str(c) for g, c in rel.items()} for rel in self.relations]}


def rost_res_omega(n: int, p: int, N: int | None = None) -> BPModulePresentation:
    """The image of restriction for the Rost motive: generators 1 and
    v_j y^i (v_0 = p, 0 <= j <= n-1, 1 <= i <= p-1) with the commuting
    relations v_j (v_k y^i) = v_k (v_j y^i)."""
    if n < 1:
        raise ValueError("n must be positive")
    N = max(n, 1) if N is None else N
    if n > N:
        raise PreconditionError(f"n = {n} exceeds the truncation N = {N}")
    R = bp_ring(p, N)
    b = rost_degree(n, p)

    def vj(j):
        return R.scalar(p) if j == 0 else R.gen(f"v{j}")

    def name(j, i):
        ypow = "y" if i == 1 else f"y^{i}"
        return f"{p}*{ypow}" if j == 0 else f"v{j}*{ypow}"

    gens = [("1", 0)]
    rels = []
    for i in range(1, p):
        for j in range(n):
            gens.append((name(j, i), i * b - (p**j - 1)))
        for j in range(n):
            for k in range(j + 1, n):
                rels.append({name(k, i): vj(j), name(j, i): -vj(k)})
    return BPModulePresentation(p, N, gens, rels)


def _specialize(c, m, p):
    """Image of a BP* coefficient under v_m -> 1, v_j -> 0 (j >= 1, j != m)."""
    total = 0
    for e, a in c.terms.items():
        if all(x == 0 for j, x in enumerate(e, start=1) if j != m):
            total += a
    return total


def morava_localize(M: BPModulePresentation, m: int) -> GradedModule:
    """M (x) Z_(p)[v_m, v_m^{-1}], read with v_m = 1 so that degrees are taken
    mod p^m - 1 (grading "residue").  m = 0 means rationalization: all v_j
    vanish, p is inverted, and only free ranks remain (grading "chow")."""
    if not 0 <= m <= M.N:
        raise PreconditionError(f"m = {m} outside 0..{M.N}")
    period = M.p**m - 1
    names = [g for g, _ in M.generators]
    deg = dict(M.generators)

    def key(g):
        return deg[g] % period if period else deg[g]

    classes = {}
    for g in names:
        classes.setdefault(key(g), []).append(g)
    groups = {}
    for k, gens in classes.items():
        pos = {g: i for i, g in enumerate(gens)}
        rows = []
        for rel in M.relations:
            row = {}
            for g, c in rel.items():
                if g in pos:
                    a = _specialize(c, m, M.p)
                    if a:
                        row[pos[g]] = a
            if row:
                if any(g not in pos for g, c in rel.items() if _specialize(c, m, M.p)):
                    raise AssertionError("relation spans several residue classes")
                rows.append(row)
        free, tors = cokernel(len(gens), rows, M.p)
        groups[k] = (free, {} if m == 0 else tors)
    return GradedModule(groups, grading="chow" if m == 0 else "residue")


# deg_v inference

INF = math.inf

_FACT = re.compile(
    r"^\s*(?:(p|v\d+)\s*\*\s*)?(.+?)\s+(not\s+)?in\s+Res(?:_?(Omega|Ω|CH|K\((\d+)\)))?\s*$")
_DEGV = re.compile(r"^\s*deg_v(?:\((.+)\))?\s*=\s*(-?\d+)\s*$")
_IDEAL = re.compile(r"^\s*ideal\s*\((.*)\)\s*$")


@dataclass
class DegvRecord:
    name: str
    chow_deg: int
    facts: tuple = ()
    deg_v: object = None      # int when resolved, else list of candidates
    classes: list = field(default_factory=list)   # (name, chow degree, tor_v or None)

    def to_json(self):
        out = {"name": self.name, "chow_deg": self.chow_deg, "facts": list(self.facts)}
        if self.deg_v is not None:
            out["deg_v"] = self.deg_v
        if self.classes:
            out["classes"] = [{"name": n, "chow_deg": d, "tor_v": t} for n, d, t in self.classes]
        return out


@dataclass
class DegvTable:
    p: int
    generators: list
    dim: int | None = None
    split_index_p: bool = False
    injective_res: bool = False
    related: list = field(default_factory=list)   # (a, b): deg_v(a) <= deg_v(b) in the Res order
    tor_v_bound: int | None = None

    def record(self, name):
        for g in self.generators:
            if g.name == name:
                return g
        raise KeyError(name)

    def to_json(self):
        out = {"schema": 1, "p": self.p, "dim": self.dim, "split_index_p": self.split_index_p,
               "generators": [g.to_json() for g in self.generators]}
        if self.injective_res:
            out["injective_res"] = True
        if self.related:
            out["related"] = [list(r) for r in self.related]
        if self.tor_v_bound is not None:
            out["tor_v_bound"] = self.tor_v_bound
        return out

    def dumps(self):
        return json.dumps(self.to_json(), indent=2)


def degv_table_from_json(data) -> DegvTable:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        gens = []
        for g in data["generators"]:
            rec = DegvRecord(g["name"], int(g["chow_deg"]), tuple(g.get("facts", ())), g.get("deg_v"))
            gens.append(rec)
        return DegvTable(int(data["p"]), gens, data.get("dim"), bool(data.get("split_index_p", False)),
                         bool(data.get("injective_res", False)),
                         [tuple(r) for r in data.get("related", [])])
    except KeyError as e:
        raise ParseError(f"deg_v table is missing the field {e.args[0]!r}") from None


class _Levels:
    """Possible values of the level sup{j+1 : v_j y in Res} (INF when y in Res).

    Level 0 is deg_v = -1, level k >= 1 is deg_v = k, and INF is deg_v = 0.
    """

    def __init__(self, name, cap):
        self.name = name
        self.lo, self.hi = 0, cap
        self.fin_ok, self.inf_ok = True, True
        self.why = []

    def values(self):
        vals = list(range(self.lo, self.hi + 1)) if self.fin_ok else []
        if self.inf_ok:
            vals.append(INF)
        return vals

    def set_lo(self, k, why):
        if k > self.lo:
            self.lo = k
            self.why.append(why)
            return True
        return False

    def set_hi(self, k, why):
        if k < self.hi:
            self.hi = k
            self.why.append(why)
            return True
        return False

    def no_inf(self, why):
        if self.inf_ok:
            self.inf_ok = False
            self.why.append(why)
            return True
        return False

    def no_fin(self, why):
        if self.fin_ok:
            self.fin_ok = False
            self.why.append(why)
            return True
        return False

    def check(self):
        if not self.values():
            raise InconsistentFactsError(self.name, list(dict.fromkeys(self.why)))


def _level_to_degv(k):
    if k == INF:
        return 0
    return -1 if k == 0 else k


def _degv_to_level(d):
    if d == 0:
        return INF
    return 0 if d == -1 else d


def _cap(p, deg):
    """Largest level k with c_{k-1} in positive degree: p^{k-1} <= deg."""
    if deg < 1:
        return 1
    k = 1
    while p**k <= deg:
        k += 1
    return k


def _apply_fact(lv, rec, fact, p):
    m = _DEGV.match(fact)
    if m:
        if m.group(1) and m.group(1).strip() != rec.name:
            raise ParseError(f"fact {fact!r} names another generator than {rec.name}")
        d = int(m.group(2))
        if d < -1:
            raise ParseError(f"deg_v cannot be {d}")
        k = _degv_to_level(d)
        if k == INF:
            lv.no_fin(f"asserted {fact!r}")
        else:
            lv.no_inf(f"asserted {fact!r}")
            lv.set_lo(k, f"asserted {fact!r}")
            lv.set_hi(k, f"asserted {fact!r}")
        return
    if _IDEAL.match(fact) or fact.strip() in ("non-free", "non_free"):
        return
    m = _FACT.match(fact)
    if not m:
        raise ParseError(f"cannot read fact {fact!r}")
    coef, subject, neg, kind, morava = m.groups()
    if subject.strip() != rec.name:
        raise ParseError(f"fact {fact!r} is about {subject.strip()!r}, listed under {rec.name!r}")
    if morava is not None:
        if neg or coef:
            raise ParseError(f"only 'y in Res_K(n)' facts are understood: {fact!r}")
        n = int(morava)
        if rec.chow_deg <= 2 * (p**n - 1):
            lv.set_lo(n + 1, f"{fact!r} with degree {rec.chow_deg} <= 2(p^{n}-1)")
        return
    j = None if coef is None else (0 if coef in ("p", "v0") else int(coef[1:]))
    if j is None:
        if neg:
            lv.no_inf(f"fact {fact!r}")
        else:
            lv.no_fin(f"fact {fact!r}")
    elif neg:
        lv.no_inf(f"fact {fact!r}")
        lv.set_hi(j, f"fact {fact!r}")
    else:
        lv.set_lo(j + 1, f"fact {fact!r}")


def degv_infer(table: DegvTable, dim: int | None = None, split_index_p: bool | None = None) -> DegvTable:
    """Close the facts of a table and report deg_v (an int, or the list of
    values still possible) for every generator.

    Rules: membership of v_j y forces membership of v_i y for i < j; a split
    index p puts p*y in Res; a class whose c_{k-1} would sit in degree <= 0
    has deg_v < k, and dim X <= p^n - 1 caps deg_v at n; declared related
    pairs (a, b), such as y and h*y, satisfy Res-membership monotonicity.
    """
    p = table.p
    dim = table.dim if dim is None else dim
    split = table.split_index_p if split_index_p is None else split_index_p
    levels = {}
    for rec in table.generators:
        lv = _Levels(rec.name, _cap(p, rec.chow_deg))
        lv.why.append(f"{rec.name} has degree {rec.chow_deg}, so deg_v <= {lv.hi} or deg_v = 0")
        for fact in rec.facts:
            _apply_fact(lv, rec, fact, p)
        if rec.deg_v is not None:
            allowed = rec.deg_v if isinstance(rec.deg_v, list) else [rec.deg_v]
            ks = [_degv_to_level(d) for d in allowed]
            fin = [k for k in ks if k != INF]
            if INF not in ks:
                lv.no_inf(f"recorded deg_v {rec.deg_v}")
            if fin:
                lv.set_lo(min(fin), f"recorded deg_v {rec.deg_v}")
                lv.set_hi(max(fin), f"recorded deg_v {rec.deg_v}")
            else:
                lv.no_fin(f"recorded deg_v {rec.deg_v}")
        if split:
            lv.set_lo(1, "split index p puts p*y in Res")
        if dim is not None:
            n = 0
            while p**n - 1 < dim:
                n += 1
            lv.set_hi(n, f"dim {dim} <= p^{n}-1 caps deg_v at {n}")
        levels[rec.name] = lv
    for a, b in table.related:
        if a not in levels or b not in levels:
            raise ParseError(f"related pair ({a}, {b}) names an unknown generator")
    changed = True
    while changed:
        changed = False
        for lv in levels.values():
            lv.check()
        for a, b in table.related:
            A, B = levels[a], levels[b]
            if not A.fin_ok:
                changed |= B.no_fin(f"{a} in Res forces {b} in Res")
            else:
                changed |= B.set_lo(A.lo, f"deg_v of {a} bounds {b} from below")
            if not B.inf_ok:
                changed |= A.no_inf(f"{b} not in Res forces {a} not in Res")
                if B.fin_ok:
                    changed |= A.set_hi(B.hi, f"deg_v of {b} bounds {a} from above")
    for lv in levels.values():
        lv.check()
    out = []
    for rec in table.generators:
        vals = sorted(_level_to_degv(k) for k in levels[rec.name].values())
        deg_v = vals[0] if len(vals) == 1 else vals
        classes = []
        if isinstance(deg_v, int) and deg_v >= 1:
            for i in range(deg_v):
                classes.append((f"c{i}({rec.name})", rec.chow_deg - (p**i - 1),
                                i if table.injective_res else None))
        out.append(DegvRecord(rec.name, rec.chow_deg, tuple(rec.facts), deg_v, classes))
    bound = None
    if dim is not None:
        bound = 0
        while p**bound - 1 < dim:
            bound += 1
    return DegvTable(p, out, dim, split, table.injective_res, list(table.related), bound)


def _ideal_pattern(rec):
    for f in rec.facts:
        m = _IDEAL.match(f)
        if m:
            return [g.strip() for g in m.group(1).split(",")]
    return None


def qx_module(table: DegvTable) -> GradedModule:
    """Q(X): the sum of M_{deg_v(y)}(y) over the generators (or the module of
    an explicit ideal pattern when one is recorded)."""
    refused = [g.name for g in table.generators if any(f.strip() in ("non-free", "non_free") for f in g.facts)]
    if refused:
        raise PreconditionError(f"generators flagged non-free: {', '.join(refused)}")
    todo = [g for g in table.generators if g.deg_v is None and _ideal_pattern(g) is None]
    if todo:
        table = degv_infer(table)
    open_ = [f"{g.name}: {g.deg_v}" for g in table.generators
             if not isinstance(g.deg_v, int) and _ideal_pattern(g) is None]
    if open_:
        raise UnresolvedError("deg_v not determined for " + "; ".join(open_))
    out = GradedModule()
    for g in table.generators:
        pat = _ideal_pattern(g)
        if pat is not None:
            out = out + ideal_module(pat, table.p, g.chow_deg)
        else:
            out = out + mn_module(g.deg_v, table.p, g.chow_deg).module
    return out


# products of type-(I) blocks

@dataclass(frozen=True)
class MarkedSummand:
    """A cyclic summand (order 0 = free); ``block`` and ``role`` mark
    c_0 (role 0) and c_1 (role 1) classes of one M_n(y) block."""

    name: str
    chow_deg: int
    order: int = 0
    block: object = None
    role: int | None = None


def marked_mn(n: int, p: int, deg_y: int, block) -> list:
    out = []
    for name, d, q in mn_module(n, p, deg_y).classes:
        i = int(name[1:])
        out.append(MarkedSummand(f"{name}({block})", d, q, block if i <= 1 else None,
                                 i if i <= 1 else None))
    return out


def marked_times_free(summands, ranks: dict, label="s") -> list:
    """Tensor a marked module with a free module of the given ranks; each
    basis vector of the free factor splits the blocks."""
    out = []
    for d, r in sorted(ranks.items()):
        for k in range(r):
            tag = f"{label}{d}.{k}"
            for s in summands:
                blk = None if s.block is None else (s.block, tag)
                out.append(MarkedSummand(f"{s.name}*{tag}", s.chow_deg + d, s.order, blk, s.role))
    return out


def _check_markers(summands):
    roles = Counter()
    for s in summands:
        if (s.block is None) != (s.role is None):
            raise PreconditionError(f"marker mismatch on {s.name}")
        if s.block is not None:
            if s.role not in (0, 1):
                raise PreconditionError(f"marker role of {s.name} must be 0 or 1")
            roles[(s.block, s.role)] += 1
    blocks = {b for b, _ in roles}
    for b in blocks:
        if roles[(b, 0)] != 1 or roles[(b, 1)] != 1:
            raise PreconditionError(f"marker mismatch: block {b!r} needs one c0 and one c1")
    return {(s.block, s.role): s for s in summands if s.block is not None}


def _tensor_order(a, b):
    if a == 0:
        return b
    if b == 0:
        return a
    return math.gcd(a, b)


def product_type_I(A, B, p: int) -> GradedModule:
    """A (x) B modulo c0(s) (x) c1(t) = c1(s) (x) c0(t) for every block s of A
    and t of B, one Smith normal form per degree."""
    ma, mb = _check_markers(A), _check_markers(B)
    gens = {}
    for a in A:
        for b in B:
            gens[(a.name, b.name)] = (a.chow_deg + b.chow_deg, _tensor_order(a.order, b.order))
    by_deg = {}
    for key, (d, q) in gens.items():
        by_deg.setdefault(d, []).append(key)
    ident = []
    sblocks = sorted({blk for blk, _ in ma}, key=repr)
    tblocks = sorted({blk for blk, _ in mb}, key=repr)
    for s in sblocks:
        for t in tblocks:
            ident.append(((ma[(s, 0)].name, mb[(t, 1)].name), (ma[(s, 1)].name, mb[(t, 0)].name)))
    groups = {}
    for d, keys in by_deg.items():
        pos = {k: i for i, k in enumerate(keys)}
        rows = [{pos[k]: gens[k][1]} for k in keys if gens[k][1]]
        for x, y in ident:
            if x in pos:
                rows.append({pos[x]: 1, pos[y]: -1})
        groups[d] = cokernel(len(keys), rows, p)
    return GradedModule(groups)


def marked_module(summands) -> GradedModule:
    out = GradedModule()
    for s in summands:
        out = out + GradedModule.cyclic(s.chow_deg, s.order)
    return out


@dataclass
class MotiveDecomposition:
    core: GradedModule
    cofactor: GradedModule
    result: GradedModule = None

    def __post_init__(self):
        if self.result is None:
            self.result = self.core.tensor(self.cofactor)
