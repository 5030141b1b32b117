"""Bundled presentations: split and twisted flag varieties, SO(2l+1)
homogeneous spaces, and the E8 b-table at p = 3."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations

from ..errors import TableError
from ..gralg import AlgebraPresentation, presentation_from_json
from ..parse import parse_poly
from ..polyring import GeneratorSpec, GradedRing

DATA_KEYS = ("g2_gt_split", "g2_twisted", "f4_gt_split", "e8_p3_btable")
PARAMETRIC = ("so_odd_gp", "so_odd_gt", "so_fibre")


@dataclass
class BTable:
    """Named formal expressions with their expected Chow degrees."""

    ring: GradedRing
    entries: list        # (name, text, polynomial, expected Chow degree)
    metadata: dict = field(default_factory=dict)

    def entry(self, name):
        for e in self.entries:
            if e[0] == name:
                return e
        raise TableError(name)


@dataclass
class CatalogueEntry:
    key: str
    presentation: AlgebraPresentation | None = None
    table: BTable | None = None
    metadata: dict = field(default_factory=dict)

    def to_json(self):
        out = {"schema": 1, "key": self.key, "metadata": self.metadata}
        if self.presentation is not None:
            out["presentation"] = self.presentation.to_json()
        if self.table is not None:
            out["entries"] = [{"name": n, "expr": t, "chow_deg": d} for n, t, _, d in self.table.entries]
        return out


def _read(key):
    text = resources.files("flagchow.flag").joinpath("data", f"{key}.json").read_text()
    return json.loads(text)


def _btable(data):
    gens = []
    for g in data["generators"]:
        gens.append(GeneratorSpec(g["name"], 2 * g["chow_deg"]))
    R = GradedRing(gens, data["prime"], data.get("mode", "zp"))
    entries = [(e["name"], e["expr"], parse_poly(e["expr"], R), e["chow_deg"]) for e in data["entries"]]
    return BTable(R, entries, dict(data.get("metadata", {})))


def catalogue_keys():
    return list(DATA_KEYS) + [f"{k}(l)" for k in PARAMETRIC]


def catalogue(key: str) -> CatalogueEntry:
    """Look up a bundled entry.  Parametric keys take the rank:
    "so_odd_gp(3)", "so_odd_gt(3)" (also "so_odd_gt_3")."""
    m = re.fullmatch(r"(so_odd_gp|so_odd_gt|so_fibre)(?:\((\d+)\)|_(\d+))", key.strip())
    if m:
        rank = int(m.group(2) or m.group(3))
        build = {"so_odd_gp": so_odd_gp, "so_odd_gt": so_odd_gt, "so_fibre": so_fibre}[m.group(1)]
        pres = build(rank)
        return CatalogueEntry(key, pres, metadata=dict(pres.metadata))
    if key not in DATA_KEYS:
        raise TableError(f"unknown catalogue key {key!r}; known: {', '.join(catalogue_keys())}")
    data = _read(key)
    if "entries" in data:
        table = _btable(data)
        return CatalogueEntry(key, table=table, metadata=table.metadata)
    pres = presentation_from_json(data)
    return CatalogueEntry(key, pres, metadata=dict(pres.metadata))


def _esym(names, k):
    return " + ".join("*".join(c) for c in combinations(names, k))


def so_odd_gp(rank: int) -> AlgebraPresentation:
    """Z[t, y]/(t^l - 2y, y^2) with |y| = l, the quadric SO(2l+1)/(SO(2l-1) x SO(2))."""
    if rank < 1:
        raise ValueError("rank must be positive")
    return presentation_from_json({
        "name": f"so_odd_gp({rank})", "prime": 2, "mode": "zp", "truncation": 2 * rank,
        "generators": [{"name": "t", "chow_deg": 1}, {"name": "y", "chow_deg": rank}],
        "relations": [f"t^{rank} - 2*y", "y^2"], "torus": ["t"],
        "metadata": {"group": f"SO({2 * rank + 1})", "p": 2, "kind": "split",
                     "source": "odd-dimensional split quadric"}})


def _j_relations(count, name):
    """J_{2i} = y_{4i} + sum_{0<j<2i} (-1)^j y_{2j} y_{4i-2j}, i = 1..count;
    ``name(k)`` gives the symbol for y_{2k} or None when it vanishes."""
    rels = []
    for i in range(1, count + 1):
        terms = [name(2 * i) or "0"]
        for j in range(1, 2 * i):
            a, b = name(j), name(2 * i - j)
            if a and b:
                terms.append(("+ " if j % 2 == 0 else "- ") + f"{a}*{b}")
        rels.append(" ".join(terms))
    return rels


def so_odd_gt(rank: int) -> AlgebraPresentation:
    """Z[t_1..t_l, y_2..y_{2l-2}, y]/(c_i - 2y_{2i}, J_{2i}, t_l^l - 2y, y^2).

    y_{2l} is not a generator: it stands for the class with c_l = 2y_{2l},
    which in terms of y is (-1)^(l+1) (y - sum_{k<l} (-1)^(k+1) y_{2k} t_l^(l-k)).
    Classes y_{2k} with k > l vanish.
    """
    if rank < 1:
        raise ValueError("rank must be positive")
    ts = [f"t{i}" for i in range(1, rank + 1)]
    gens = [{"name": t, "chow_deg": 1} for t in ts]
    gens += [{"name": f"y{2 * i}", "chow_deg": i} for i in range(1, rank)]
    gens += [{"name": "y", "chow_deg": rank}]
    sign = "" if rank % 2 else "-"
    inner = "y" + "".join(f" {'-' if k % 2 else '+'} y{2 * k}*t{rank}^{rank - k}" for k in range(1, rank))
    defs = [{"name": f"y{2 * rank}", "expr": f"{sign}({inner})"}]
    defs += [{"name": f"c{i}", "expr": _esym(ts, i)} for i in range(1, rank + 1)]

    def name(k):
        return f"y{2 * k}" if 1 <= k <= rank else None

    rels = [f"c{i} - 2*y{2 * i}" for i in range(1, rank)]
    rels += _j_relations(rank - 1, name)
    rels += [f"t{rank}^{rank} - 2*y", "y^2"]
    return presentation_from_json({
        "name": f"so_odd_gt({rank})", "prime": 2, "mode": "zp", "truncation": rank * rank,
        "generators": gens, "definitions": defs, "relations": rels, "torus": ts,
        "metadata": {"group": f"SO({2 * rank + 1})", "p": 2, "kind": "split",
                     "weyl_order": 2**rank * _fact(rank),
                     "source": "integral cohomology of SO(2l+1)/T fibred over the quadric"}})


def so_fibre(rank: int) -> AlgebraPresentation:
    """The fibre ring Z[t_1..t_{l-1}, y_2..y_{2l-2}]/(c'_i - 2y_{2i}, J_{2i})."""
    if rank < 1:
        raise ValueError("rank must be positive")
    m = rank - 1
    ts = [f"t{i}" for i in range(1, m + 1)]
    gens = [{"name": t, "chow_deg": 1} for t in ts]
    gens += [{"name": f"y{2 * i}", "chow_deg": i} for i in range(1, m + 1)]

    def name(k):
        return f"y{2 * k}" if 1 <= k <= m else None

    rels = [f"{_esym(ts, i)} - 2*y{2 * i}" for i in range(1, m + 1)] + _j_relations(m, name)
    return presentation_from_json({
        "name": f"so_fibre({rank})", "prime": 2, "mode": "zp", "truncation": max(m * m, 0),
        "generators": gens, "relations": rels, "torus": ts,
        "metadata": {"group": f"SO({2 * m + 1})", "p": 2, "kind": "split",
                     "source": "fibre of SO(2l+1)/T over the quadric"}})


def _fact(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def grothendieck_quotient(entry) -> AlgebraPresentation:
    """Kill the torus generators and drop them from the ring."""
    pres = entry.presentation if isinstance(entry, CatalogueEntry) else entry
    if pres is None or not pres.torus:
        raise ValueError("entry has no torus generators")
    keep = [g for g in pres.ring.generators if g.name not in pres.torus]
    R = GradedRing(keep, pres.p, pres.mode)
    images = {g.name: (R.zero() if g.name in pres.torus else R.gen(g.name)) for g in pres.ring.generators}
    rels = [r.substitute(images, R) for r in pres.relations]
    defs = {k: (t, f.substitute(images, R)) for k, (t, f) in pres.definitions.items()}
    return AlgebraPresentation(R, [r for r in rels if r], pres.truncation, defs, (), pres.partial,
                               f"{pres.name}/torus", dict(pres.metadata))


def torus_ring(pres: AlgebraPresentation, mode=None) -> GradedRing:
    gens = [g for g in pres.ring.generators if g.name in pres.torus]
    return GradedRing(gens, pres.p, mode or pres.mode)


def type_I_data(group: str):
    """(S(t) over F_p, the b-bar classes, p) for "g2" or "f4"."""
    if group == "g2":
        pres = catalogue("g2_twisted").presentation
        texts = pres.metadata["bbar"]
    elif group == "f4":
        pres = catalogue("f4_gt_split").presentation
        texts = pres.metadata["b_lifts"]
    else:
        raise TableError(f"no type (I) data for {group!r}")
    R = torus_ring(pres, "zp")
    defs = {}
    for k, (t, _) in pres.definitions.items():
        defs[k] = parse_poly(t, R, defs)
    F = R.with_mode("fp")
    bbars = [parse_poly(t, R, defs).to_ring(F) for t in texts]
    return F, bbars, pres.p
