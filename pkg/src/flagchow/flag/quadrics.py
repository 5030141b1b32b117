"""Anisotropic odd-dimensional quadrics: Q(X) from the exponents f_j, Tate
indices, embedding bounds, and the exterior z-product rule."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from ..errors import PreconditionError
from ..gralg import AlgebraPresentation, graded_groups, presentation_from_json
from ..modules import GradedModule
from ..motive import DegvRecord, DegvTable, degv_infer, qx_module


@dataclass(frozen=True)
class QuadricSpec:
    """A quadric of dimension 2l - 1; f[j] is the least f with
    v_j h^f y in the image of restriction (v_0 = 2)."""

    ell: int
    f: tuple = ()
    anisotropic: bool = True

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(self.f))
        if self.ell < 1:
            raise ValueError("l must be positive")
        if not self.anisotropic:
            if self.f:
                raise PreconditionError("a split quadric carries no exponents")
            return
        if not self.f or self.f[0] != 0:
            raise PreconditionError("an anisotropic quadric has f_0 = 0 (2y is always a restriction)")
        for a, b in zip(self.f, self.f[1:]):
            if b < a:
                raise PreconditionError(f"exponents {self.f} are not nondecreasing, so d_i would not be")
        if self.f[-1] > self.ell - 1:
            raise PreconditionError(f"exponent {self.f[-1]} exceeds l - 1 = {self.ell - 1}")
        for j, fj in enumerate(self.f):
            if self.ell + fj - (2**j - 1) <= 0:
                raise PreconditionError(f"u_{j} would sit in degree <= 0")

    @property
    def dim(self):
        return 2 * self.ell - 1

    def d(self, i):
        """deg_v(h^i y)."""
        if not self.anisotropic:
            return 0
        return sum(1 for fj in self.f if fj <= i)

    @property
    def d_list(self):
        return [self.d(i) for i in range(self.ell)]

    def u_degree(self, j):
        return self.ell + self.f[j] - (2**j - 1)


def pfister_max(n: int) -> QuadricSpec:
    """Maximal neighbour of an (n+1)-fold Pfister form: l = 2^n - 1, all d_i = n."""
    if n < 1:
        raise ValueError("n must be positive")
    return QuadricSpec(2**n - 1, (0,) * n)


def pfister_min(n: int) -> QuadricSpec:
    """Minimal neighbour: l = 2^(n-1), d_i = n-1 except d_{l-1} = n."""
    if n < 2:
        raise ValueError("n must be at least 2")
    ell = 2 ** (n - 1)
    return QuadricSpec(ell, (0,) * (n - 1) + (ell - 1,))


def split_quadric(ell: int) -> QuadricSpec:
    return QuadricSpec(ell, (), anisotropic=False)


def _hname(i, base=""):
    if i == 0:
        return base or "1"
    h = "h" if i == 1 else f"h^{i}"
    return f"{h}*{base}" if base else h


def _coef(j):
    return "2" if j == 0 else f"v{j}"


def quadric_degv_table(spec: QuadricSpec) -> DegvTable:
    """Fact table: h^i in Res; v_j h^{f_j} y in Res and v_j h^{f_j - 1} y not;
    v_{s+1} h^{l-1} y not in Res.  Consecutive h^i y are related."""
    gens = [DegvRecord(_hname(i), i, (f"{_hname(i)} in Res",)) for i in range(spec.ell)]
    ys = [_hname(i, "y") for i in range(spec.ell)]
    facts = {n: [] for n in ys}
    if not spec.anisotropic:
        for n in ys:
            facts[n].append(f"{n} in Res")
    else:
        for j, fj in enumerate(spec.f):
            c = "p" if j == 0 else f"v{j}"
            facts[ys[fj]].append(f"{c}*{ys[fj]} in Res")
            if fj > 0:
                facts[ys[fj - 1]].append(f"{c}*{ys[fj - 1]} not in Res")
        s = len(spec.f) - 1
        facts[ys[-1]].append(f"v{s + 1}*{ys[-1]} not in Res")
    gens += [DegvRecord(n, spec.ell + i, tuple(facts[n])) for i, n in enumerate(ys)]
    related = [(ys[i], ys[i + 1]) for i in range(spec.ell - 1)]
    return DegvTable(2, gens, spec.dim, spec.anisotropic, False, related)


@dataclass
class QuadricResult:
    spec: QuadricSpec
    presentation: AlgebraPresentation
    module: GradedModule            # graded groups of the presentation
    formula: GradedModule           # Z[h]/(h^2l) + sum Z/2[h]/(h^{l - f_j}) u_j
    via_degv: GradedModule          # sum of M_{d_i}(h^i y) and M_0(h^i)
    d: list
    tate_indices: list
    partition_ok: bool

    @property
    def consistent(self):
        return self.module == self.formula == self.via_degv

    def to_json(self):
        return {"schema": 1, "ell": self.spec.ell, "f": list(self.spec.f), "d": self.d,
                "tate_indices": self.tate_indices, "tate_partition": self.partition_ok,
                "tate_formula": "deg(h^i y) - (2^d_i - 1)",
                "consistent": self.consistent,
                "presentation": self.presentation.to_json(), "module": self.module.to_json()}


def quadric_presentation(spec: QuadricSpec) -> AlgebraPresentation:
    ell = spec.ell
    if not spec.anisotropic:
        return presentation_from_json({
            "name": f"split_quadric({ell})", "prime": 2, "mode": "zp", "truncation": 2 * ell,
            "generators": [{"name": "h", "chow_deg": 1}, {"name": "y", "chow_deg": ell}],
            "relations": [f"h^{ell} - 2*y", "y^2"]})
    js = range(1, len(spec.f))
    gens = [{"name": "h", "chow_deg": 1}] + [{"name": f"u{j}", "chow_deg": spec.u_degree(j)} for j in js]
    rels = [f"h^{2 * ell}"]
    for j in js:
        rels += [f"2*u{j}", f"h^{ell - spec.f[j]}*u{j}"]
    rels += [f"u{i}*u{j}" for i in js for j in js if i <= j]
    return presentation_from_json({
        "name": f"quadric({ell}, f={list(spec.f)})", "prime": 2, "mode": "zp",
        "truncation": 2 * ell, "generators": gens, "relations": rels})


def quadric_formula(spec: QuadricSpec) -> GradedModule:
    ell = spec.ell
    if not spec.anisotropic:
        return GradedModule.free({d: (1 if d < ell else 0) + (1 if d >= ell else 0) for d in range(2 * ell)})
    out = GradedModule.free({d: 1 for d in range(2 * ell)})
    for j in range(1, len(spec.f)):
        for k in range(ell - spec.f[j]):
            out = out + GradedModule.cyclic(spec.u_degree(j) + k, 2)
    return out


def quadric_qx(spec: QuadricSpec) -> QuadricResult:
    pres = quadric_presentation(spec)
    module = graded_groups(pres, 0, 2 * spec.ell)
    via = qx_module(degv_infer(quadric_degv_table(spec)))
    d = spec.d_list
    tate = [spec.ell + i - (2**d[i] - 1) for i in range(spec.ell)] if spec.anisotropic else []
    part = sorted(tate) == list(range(spec.ell)) if spec.anisotropic else False
    return QuadricResult(spec, pres, module, quadric_formula(spec), via, d, tate, part)


@dataclass
class EmbeddingReport:
    ok: bool
    violations: list   # (j, f_j(X), lower, upper)


def quadric_embedding_bounds(fX, fY, d: int) -> EmbeddingReport:
    """Check f_j(Y) - d <= f_j(X) <= f_j(Y) + d for each j."""
    fX, fY = tuple(fX), tuple(fY)
    if len(fX) != len(fY):
        raise ValueError(f"exponent lists cover different ranges: {len(fX)} vs {len(fY)}")
    bad = []
    for j, (x, y) in enumerate(zip(fX, fY)):
        if not y - d <= x <= y + d:
            bad.append((j, x, y - d, y + d))
    return EmbeddingReport(not bad, bad)


def _indices(monomial):
    if isinstance(monomial, str):
        text = monomial.replace(" ", "")
        if text in ("", "1"):
            return []
        out = []
        for part in text.split("*"):
            if not part.startswith("x") or not part[1:].isdigit() or int(part[1:]) % 2:
                raise ValueError(f"expected factors x_2i, got {part!r}")
            out.append(int(part[1:]) // 2)
        return out
    return list(monomial)


def vishik_membership(J, monomial, ell: int) -> bool:
    """True iff every factor x_{2i} of the monomial has i in J."""
    idx = _indices(monomial)
    for i in list(idx) + list(J):
        if not 1 <= i <= ell:
            raise IndexError(f"index {i} outside 1..{ell}")
    return all(i in set(J) for i in idx)


Z_CONVENTION = "exterior: a term whose index set would repeat an index vanishes; equal terms cancel in pairs over F_2"


@dataclass
class ZProduct:
    terms: list        # sorted tuples of indices with coefficient 1 over F_2
    dropped: list      # (raw index list, reason)
    convention: str = Z_CONVENTION

    def format(self):
        return " + ".join("z{" + ",".join(map(str, t)) + "}" for t in self.terms) or "0"


def z_product(I, j: int, ell: int) -> ZProduct:
    """z_I * z_j = z_{I u j} + sum_{i in I} z_{(I - i) u (i + j)}."""
    I = list(I)
    for i in I + [j]:
        if not 1 <= i <= ell:
            raise IndexError(f"index {i} outside 1..{ell}")
    if len(set(I)) != len(I):
        raise ValueError("I has repeated indices")
    raw = [I + [j]] + [[k for k in I if k != i] + [i + j] for i in I]
    count = Counter()
    dropped = []
    for r in raw:
        if any(k > ell for k in r):
            dropped.append((sorted(r), f"index above {ell}"))
        elif len(set(r)) != len(r):
            dropped.append((sorted(r), "repeated index"))
        else:
            count[tuple(sorted(r))] += 1
    for t, c in count.items():
        if c % 2 == 0:
            dropped.append((list(t), "cancels in pairs"))
    return ZProduct(sorted(t for t, c in count.items() if c % 2), dropped)
