"""Consistency of the E8 (p = 3) b-table: degrees, and the rewrites by the
operations r_{k Delta_1} and r_{Delta_2}."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..polyring import GeneratorSpec, GradedRing
from ..scalars import int_valuation
from .catalogue import catalogue

# (operation, source entry, target entry); each operation is the coefficient
# of tau^k (resp. sigma) in a total operation, see _total_operations
REWRITES = (
    ("r_D1", "b4", "b8"),
    ("r_D2", "b4", "b20"),
    ("r_3D1", "b16", "b28"),
    ("r_D1", "b16", "b20"),
    ("r_6D1", "b16", "b40"),
)

EXPECTED_DEGREES = {"b4": 2, "b8": 4, "b16": 8, "b20": 10, "b28": 14, "b36": 18, "b40": 20, "b48": 24}


@dataclass
class RewriteResult:
    operation: str
    source: str
    target: str
    image: str
    unit: object      # image = unit * target, or None
    ok: bool


@dataclass
class E8Report:
    degree_errors: list = field(default_factory=list)   # (name, expected, found)
    rewrites: list = field(default_factory=list)
    lift_degrees: dict = field(default_factory=dict)    # F4 b-lift sets: name -> degrees or error

    @property
    def ok(self):
        return not self.degree_errors and all(r.ok for r in self.rewrites) and \
            all(isinstance(v, list) for v in self.lift_degrees.values())

    def to_json(self):
        return {"schema": 1, "ok": self.ok,
                "degree_errors": [{"name": n, "expected": e, "found": f} for n, e, f in self.degree_errors],
                "rewrites": [{"operation": r.operation, "source": r.source, "target": r.target,
                              "image": r.image, "unit": None if r.unit is None else str(r.unit), "ok": r.ok}
                             for r in self.rewrites],
                "f4_lift_degrees": self.lift_degrees}


def _total_operations(R):
    """Extend the table ring by tau (|tau| = |v1|) and sigma (|sigma| = |v2|)
    and return the images of the generators under r_tau = sum_k tau^k r_{k D1}
    and r_sigma = sum sigma r_{D2}, read modulo the augmentation ideal:
    v1 -> v1 + 3 tau, y -> y + y' tau^3; v2 -> v2 + 3 sigma."""
    v1 = R.generators[R.names.index("v1")].top_degree
    v2 = R.generators[R.names.index("v2")].top_degree
    S = R.extend([GeneratorSpec("tau", v1), GeneratorSpec("sigma", v2)])
    g = {n: S.gen(n) for n in S.names}
    tau_images = {"v1": g["v1"] + 3 * g["tau"], "y": g["y"] + g["y'"] * g["tau"] ** 3}
    sigma_images = {"v2": g["v2"] + 3 * g["sigma"]}
    return S, {"tau": tau_images, "sigma": sigma_images}


def _coefficient(f, var, k):
    """Coefficient of var^k in f, as a polynomial in the remaining generators."""
    R = f.ring
    i = R.names.index(var)
    out = R.zero()
    for e, c in f.terms.items():
        if e[i] == k:
            out = out + R.monomial(tuple(x if j != i else 0 for j, x in enumerate(e)), c)
    return out


def _unit_ratio(image, target, p):
    """The p-local unit u with image = u * target, or None."""
    if not target:
        return None
    e, c = target.leading_term()
    a = image.coefficient(e)
    if not a:
        return None
    u = a / c
    if int_valuation(u.numerator, p) != 0 or int_valuation(u.denominator, p) != 0:
        return None
    return u if image == target.scale(u) else None


OPERATIONS = {"r_D1": ("tau", 1), "r_3D1": ("tau", 3), "r_6D1": ("tau", 6), "r_D2": ("sigma", 1)}


def apply_rewrite(op, f, S, images):
    var, k = OPERATIONS[op]
    return _coefficient(f.substitute(images[var], S), var, k)


def e8_consistency() -> E8Report:
    table = catalogue("e8_p3_btable").table
    R = table.ring
    report = E8Report()
    for name, _, poly, deg in table.entries:
        want = EXPECTED_DEGREES.get(name, deg)
        if not poly.is_homogeneous():
            report.degree_errors.append((name, want, None))
        elif poly.chow_degree != want or deg != want:
            report.degree_errors.append((name, want, poly.chow_degree))
    S, images = _total_operations(R)
    emb = {n: S.gen(n) for n in R.names}
    for op, src, tgt in REWRITES:
        f = table.entry(src)[2].substitute(emb, S)
        t = table.entry(tgt)[2].substitute(emb, S)
        image = apply_rewrite(op, f, S, images)
        unit = _unit_ratio(image, t, R.p)
        report.rewrites.append(RewriteResult(op, src, tgt, str(image), unit, unit is not None))
    report.lift_degrees = f4_lift_degrees()
    return report


def f4_lift_degrees():
    """Chow degrees of both stored F4 b-lift sets (an entry is an error string
    when a lift is not homogeneous)."""
    from ..parse import parse_poly
    pres = catalogue("f4_gt_split").presentation
    defs = {k: f for k, (_, f) in pres.definitions.items()}
    out = {}
    for key in ("b_lifts", "b_lifts_alternative"):
        degs = []
        for text in pres.metadata[key]:
            f = parse_poly(text, pres.ring, defs)
            if not f.is_homogeneous():
                degs = f"{text} is not homogeneous"
                break
            degs.append(f.chow_degree)
        out[key] = degs
    return out
