"""Presented graded algebras and their graded groups."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..errors import InhomogeneousError, ParseError, TruncationError
from ..modules import GradedModule, HilbertSeries
from ..parse import parse_poly
from ..polyring import GeneratorSpec, GradedRing, Polynomial
from ..snf import cokernel, rank_mod_p
from .groebner import groebner_fp


@dataclass
class AlgebraPresentation:
    """A graded algebra ring/(relations), meaningful through Chow degree
    ``truncation`` (None when the presentation is complete in all degrees).

    ``definitions`` keeps named shorthands (name -> (text, polynomial)) so a
    presentation can be written back out as it was read.  ``torus`` lists the
    generators that come from the torus, used for Grothendieck quotients.
    """

    ring: GradedRing
    relations: tuple
    truncation: int | None = None
    definitions: dict = field(default_factory=dict)
    torus: tuple = ()
    partial: bool = False
    name: str = ""
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.relations = tuple(self.relations)
        for r in self.relations:
            if r.ring != self.ring:
                raise ValueError(f"relation {r} lives in another ring")
            if not r.is_homogeneous():
                raise InhomogeneousError(f"relation {r} is not homogeneous")

    @property
    def p(self):
        return self.ring.p

    @property
    def mode(self):
        return self.ring.mode

    def with_relations(self, extra, name=None):
        return AlgebraPresentation(self.ring, self.relations + tuple(extra), self.truncation,
                                   dict(self.definitions), self.torus, self.partial,
                                   name or self.name, dict(self.metadata))

    def mod_p(self):
        """The same presentation read over F_p."""
        R = self.ring.with_mode("fp")
        rels = [r.to_ring(R) for r in self.relations]
        defs = {k: (t, f.to_ring(R)) for k, (t, f) in self.definitions.items()}
        return AlgebraPresentation(R, [r for r in rels if r], self.truncation, defs, self.torus,
                                   self.partial, self.name, dict(self.metadata))

    def parse(self, text):
        return parse_poly(text, self.ring, {k: f for k, (_, f) in self.definitions.items()})

    def to_json(self):
        gens = []
        for g in self.ring.generators:
            e = {"name": g.name, "parity": g.parity}
            if g.is_odd:
                e["top_deg"] = g.top_degree
            else:
                e["chow_deg"] = g.top_degree // 2
            if g.height is not None and not g.is_odd:
                e["height"] = g.height
            gens.append(e)
        out = {
            "schema": 1,
            "name": self.name,
            "prime": self.p,
            "mode": self.mode,
            "truncation": self.truncation,
            "generators": gens,
            "definitions": [{"name": k, "expr": t} for k, (t, _) in self.definitions.items()],
            "relations": [str(r) for r in self.relations],
        }
        if self.torus:
            out["torus"] = list(self.torus)
        if self.partial:
            out["partial"] = True
        if self.metadata:
            out["metadata"] = self.metadata
        return out

    def dumps(self):
        return json.dumps(self.to_json(), indent=2)


def presentation_from_json(data) -> AlgebraPresentation:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        p = int(data["prime"])
        mode = data.get("mode", "zp")
        gens = []
        for g in data["generators"]:
            if "top_deg" in g:
                top = int(g["top_deg"])
            else:
                top = 2 * int(g["chow_deg"])
            parity = g.get("parity")
            if parity is not None and parity != ("odd" if top % 2 else "even"):
                raise ParseError(f"generator {g['name']}: parity {parity} does not match degree {top}")
            gens.append(GeneratorSpec(g["name"], top, g.get("height")))
        ring = GradedRing(gens, p, mode)
        defs = {}
        for d in data.get("definitions", []):
            defs[d["name"]] = (d["expr"], parse_poly(d["expr"], ring,
                                                     {k: f for k, (_, f) in defs.items()}))
        ns = {k: f for k, (_, f) in defs.items()}
        rels = [parse_poly(r, ring, ns) for r in data.get("relations", [])]
    except KeyError as e:
        raise ParseError(f"presentation is missing the field {e.args[0]!r}") from None
    return AlgebraPresentation(ring, [r for r in rels if r], data.get("truncation"), defs,
                               tuple(data.get("torus", ())), bool(data.get("partial", False)),
                               data.get("name", ""), dict(data.get("metadata", {})))


def load_presentation(path) -> AlgebraPresentation:
    with open(path) as fh:
        return presentation_from_json(json.load(fh))


def _degree_columns(pres, d):
    """Monomial basis of Chow degree d and the relation multiples landing there."""
    ring = pres.ring
    basis = ring.monomials_of_degree(2 * d)
    pos = {m: i for i, m in enumerate(basis)}
    cols = []
    for r in pres.relations:
        rest = 2 * d - r.top_degree
        if rest < 0:
            continue
        for m in ring.monomials_of_degree(rest):
            prod = ring.monomial(m) * r
            if prod:
                cols.append({pos[e]: c for e, c in prod.terms.items()})
    return basis, cols


def graded_groups(pres: AlgebraPresentation, lo: int = 0, hi: int | None = None) -> GradedModule:
    """The additive group in each Chow degree lo..hi.

    In Z_(p) mode the answer comes from a Smith normal form per degree; in
    F_p mode each degree is reported as a number of Z/p summands.
    """
    if pres.ring.odd:
        raise ValueError("graded groups are computed for even generators only")
    if hi is None:
        if pres.truncation is None:
            raise ValueError("no degree bound given")
        hi = pres.truncation
    if pres.truncation is not None and hi > pres.truncation:
        raise TruncationError(f"degree {hi} is past the truncation {pres.truncation}")
    p = pres.p
    groups = {}
    for d in range(lo, hi + 1):
        basis, cols = _degree_columns(pres, d)
        if not basis:
            continue
        if pres.ring.is_fp:
            groups[d] = (0, {p: len(basis) - rank_mod_p(cols, p)})
        else:
            groups[d] = cokernel(len(basis), cols, p)
    return GradedModule(groups)


def hilbert_series(pres: AlgebraPresentation, bound: int | None = None) -> HilbertSeries:
    """F_p-dimensions of the mod-p reduction by Chow degree, via Groebner bases."""
    if bound is None:
        bound = pres.truncation
    if bound is None:
        raise ValueError("no degree bound given")
    if pres.truncation is not None and bound > pres.truncation:
        raise TruncationError(f"degree {bound} is past the truncation {pres.truncation}")
    fp = pres.mod_p() if not pres.ring.is_fp else pres
    return groebner_fp(fp.relations, bound, fp.ring).hilbert_series(bound)


def expected_complete_intersection(weights, degrees, bound) -> HilbertSeries:
    """prod(1 - T^d) / prod(1 - T^w) through ``bound`` (all Chow degrees)."""
    series = [0] * (bound + 1)
    series[0] = 1
    for w in weights:
        for k in range(w, bound + 1):
            series[k] += series[k - w]
    for d in degrees:
        for k in range(bound, d - 1, -1):
            series[k] -= series[k - d]
    return HilbertSeries(series, bound)


@dataclass
class RegularSequenceReport:
    is_regular: bool
    hilbert: HilbertSeries
    expected: HilbertSeries
    dimension: int | None

    def __bool__(self):
        return self.is_regular


def regular_sequence_check(ring: GradedRing, sequence, bound: int) -> RegularSequenceReport:
    """Decide through Chow degree ``bound`` whether the homogeneous sequence is
    regular in the F_p polynomial ring, by comparing the Hilbert series of
    the quotient with that of a complete intersection."""
    fp = ring.with_mode("fp") if not ring.is_fp else ring
    if any(g.height is not None or g.is_odd for g in fp.generators):
        raise ValueError("regularity is checked in a polynomial ring")
    seq = [s.to_ring(fp) if s.ring != fp else s for s in sequence]
    got = groebner_fp(seq, bound, fp).hilbert_series(bound)
    weights = [d // 2 for d in fp.degrees]
    exp = expected_complete_intersection(weights, [s.top_degree // 2 for s in seq if s], bound)
    # a regular sequence has no zero entries and is no longer than the Krull dimension
    ok = got == exp and all(seq) and len(seq) <= len(weights)
    dim = None
    if ok and len(seq) == len(weights):
        top = sum(s.top_degree // 2 for s in seq) - sum(weights)
        if top <= bound:
            dim = got.total()
    return RegularSequenceReport(ok, got, exp, dim)
