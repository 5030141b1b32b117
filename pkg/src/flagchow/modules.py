"""Graded abelian groups: finitely generated Z_(p)-modules in each degree."""
from __future__ import annotations

import json
from collections import Counter


class GradedModule:
    """Degree -> (free rank, {torsion order: multiplicity}).

    ``grading`` names what the keys mean: ``"chow"`` (the default),
    ``"top"`` for topological degree, or ``"residue"`` for degrees taken
    modulo a period.
    """

    def __init__(self, groups=None, grading="chow"):
        self.grading = grading
        self._groups = {}
        for d, (free, tors) in (groups or {}).items():
            self._set(d, free, tors)

    def _set(self, d, free, tors):
        tors = {int(q): int(m) for q, m in dict(tors).items() if m}
        if any(q < 2 for q in tors):
            raise ValueError(f"bad torsion order in degree {d}: {tors}")
        if free < 0:
            raise ValueError("negative rank")
        if free or tors:
            self._groups[d] = (int(free), dict(sorted(tors.items())))
        else:
            self._groups.pop(d, None)

    @classmethod
    def free(cls, ranks, grading="chow"):
        return cls({d: (r, {}) for d, r in dict(ranks).items()}, grading)

    @classmethod
    def cyclic(cls, degree, order=0, grading="chow"):
        """Z in one degree (order 0) or Z/order."""
        if order == 0:
            return cls({degree: (1, {})}, grading)
        return cls({degree: (0, {order: 1})}, grading)

    def degrees(self):
        return sorted(self._groups)

    def free_rank(self, d):
        return self._groups.get(d, (0, {}))[0]

    def torsion(self, d):
        return dict(self._groups.get(d, (0, {}))[1])

    def group(self, d):
        free, tors = self._groups.get(d, (0, {}))
        return free, dict(tors)

    def total_free_rank(self):
        return sum(f for f, _ in self._groups.values())

    def torsion_counts(self):
        c = Counter()
        for _, tors in self._groups.values():
            c.update(tors)
        return dict(c)

    def is_zero(self):
        return not self._groups

    def _check(self, other):
        if self.grading != other.grading:
            raise ValueError(f"cannot combine {self.grading} and {other.grading} gradings")

    def __add__(self, other):
        self._check(other)
        out = GradedModule(grading=self.grading)
        for d in set(self._groups) | set(other._groups):
            f1, t1 = self.group(d)
            f2, t2 = other.group(d)
            out._set(d, f1 + f2, Counter(t1) + Counter(t2))
        return out

    def shift(self, k):
        return GradedModule({d + k: g for d, g in self._groups.items()}, self.grading)

    def tensor(self, other):
        """Tensor product over Z_(p); Z/a (x) Z/b = Z/gcd(a, b)."""
        self._check(other)
        out = {}
        for d1, (f1, t1) in self._groups.items():
            for d2, (f2, t2) in other._groups.items():
                d = d1 + d2
                free, tors = out.get(d, (0, Counter()))
                free += f1 * f2
                for q, m in t1.items():
                    tors[q] += m * f2
                for q, m in t2.items():
                    tors[q] += m * f1
                for q1, m1 in t1.items():
                    for q2, m2 in t2.items():
                        tors[min(q1, q2)] += m1 * m2
                out[d] = (free, tors)
        return GradedModule(out, self.grading)

    def mod_p_dims(self):
        """Dimensions of M (x) F_p: each free or torsion summand gives one."""
        return {d: f + sum(t.values()) for d, (f, t) in self._groups.items()}

    def restrict(self, lo=None, hi=None):
        keep = {d: g for d, g in self._groups.items()
                if (lo is None or d >= lo) and (hi is None or d <= hi)}
        return GradedModule(keep, self.grading)

    def __eq__(self, other):
        if not isinstance(other, GradedModule):
            return NotImplemented
        return self.grading == other.grading and self._groups == other._groups

    def __repr__(self):
        return f"GradedModule({self._groups!r}, grading={self.grading!r})"

    def format(self):
        lines = []
        for d in self.degrees():
            f, t = self._groups[d]
            parts = []
            if f:
                parts.append("Z" if f == 1 else f"Z^{f}")
            for q, m in t.items():
                parts.append(f"Z/{q}" if m == 1 else f"(Z/{q})^{m}")
            lines.append(f"{d:>4}: " + " + ".join(parts))
        return "\n".join(lines) if lines else "0"

    def to_json(self):
        return [
            {"chow_deg": d, "free_rank": f,
             "torsion": [{"order": q, "mult": m} for q, m in t.items()]}
            for d, (f, t) in sorted(self._groups.items())
        ]

    @classmethod
    def from_json(cls, data, grading="chow"):
        return cls({e["chow_deg"]: (e["free_rank"], {t["order"]: t["mult"] for t in e["torsion"]})
                    for e in data}, grading)

    def dumps(self):
        return json.dumps({"schema": 1, "grading": self.grading, "groups": self.to_json()},
                          sort_keys=True)


class HilbertSeries:
    """Coefficients of a power series in one variable, known through ``bound``."""

    def __init__(self, coeffs, bound=None):
        coeffs = dict(coeffs) if isinstance(coeffs, dict) else dict(enumerate(coeffs))
        self.bound = bound if bound is not None else (max(coeffs) if coeffs else 0)
        self.coeffs = {d: c for d, c in coeffs.items() if c and d <= self.bound}

    def __getitem__(self, d):
        if d > self.bound:
            raise IndexError(f"series only known through degree {self.bound}")
        return self.coeffs.get(d, 0)

    def as_list(self):
        return [self.coeffs.get(d, 0) for d in range(self.bound + 1)]

    def total(self):
        return sum(self.coeffs.values())

    def __mul__(self, other):
        bound = min(self.bound, other.bound)
        out = Counter()
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                if a + b <= bound:
                    out[a + b] += x * y
        return HilbertSeries(out, bound)

    def __eq__(self, other):
        if not isinstance(other, HilbertSeries):
            return NotImplemented
        return self.bound == other.bound and self.coeffs == other.coeffs

    def __repr__(self):
        return f"HilbertSeries({self.as_list()})"
