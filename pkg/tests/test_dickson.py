import itertools
import random

import pytest
import sympy

from flagchow.dickson import (d_class_conventions, d_classes, dickson_classes, euler_class, orbit_product,
                              verify_mimura_kameko, y_ring)
from flagchow.errors import PreconditionError


def test_rank_one_at_three():
    data = dickson_classes(1, 3)
    y1 = data.c[0].ring.gen("y1")
    assert data.c[0] == -(y1 ** 2)
    e, lam = euler_class(1, 3)
    assert e == y1 and lam == 2     # e^2 = -c_{1,0}


def test_rank_two_at_two():
    c = dickson_classes(2, 2).c
    R = c[0].ring
    y1, y2 = R.gens()
    assert c[0] == y1 ** 2 * y2 + y1 * y2 ** 2
    assert c[1] == y1 ** 2 + y1 * y2 + y2 ** 2
    e, lam = euler_class(2, 2)
    assert e == c[0] and lam == 1


@pytest.mark.parametrize("n,p", [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3), (1, 5), (2, 5)])
def test_degrees(n, p):
    c = dickson_classes(n, p).c
    for i, f in c.items():
        assert f.is_homogeneous()
        assert f.top_degree == 2 * (p**n - p**i)


@pytest.mark.parametrize("n,p", [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (2, 5)])
def test_orbit_and_recursion_agree(n, p):
    assert dickson_classes(n, p, method="orbit").c == dickson_classes(n, p, method="recursion").c


@pytest.mark.parametrize("n,p", [(2, 2), (2, 3), (3, 2)])
def test_orbit_product_by_brute_force(n, p):
    ys = sympy.symbols(f"y1:{n + 1}")
    t = sympy.Symbol("t")
    prod = sympy.Integer(1)
    for v in itertools.product(range(p), repeat=n):
        prod *= t + sum(a * y for a, y in zip(v, ys))
    poly = sympy.Poly(sympy.expand(prod), t, *ys, modulus=p)
    ours = orbit_product(n, p)
    want = {}
    for (k, *e), c in poly.terms():
        want.setdefault(k, {})[tuple(e)] = int(c) % p
    got = {k: dict(f.terms) for k, f in ours.items() if f}
    assert got == {k: {e: c for e, c in terms.items() if c} for k, terms in want.items()}


def random_invertible(n, p, rng, special=False):
    while True:
        A = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
        det = int(sympy.Matrix(A).det()) % p
        if det and (not special or det == 1):
            return A


def act(f, A):
    R = f.ring
    ys = R.gens()
    images = {f"y{j + 1}": sum((ys[k].scale(A[j][k]) for k in range(len(ys))), R.zero())
              for j in range(len(ys))}
    return f.substitute(images, R)


@pytest.mark.parametrize("n,p", [(2, 2), (2, 3), (3, 2), (2, 5)])
def test_general_linear_invariance(n, p):
    rng = random.Random(n * 100 + p)
    data = dickson_classes(n, p)
    e, _ = euler_class(n, p, data=data)
    for _ in range(5):
        A = random_invertible(n, p, rng)
        assert all(act(f, A) == f for f in data.c.values())
        S = random_invertible(n, p, rng, special=True)
        assert act(e, S) == e


def test_size_limit():
    with pytest.raises(PreconditionError):
        dickson_classes(5, 3)
    with pytest.raises(ValueError):
        dickson_classes(0, 2)


@pytest.mark.parametrize("n,p", [(2, 2), (2, 3), (3, 2)])
def test_composites_match_euler_times_dickson(n, p):
    chk = verify_mimura_kameko(n, p)
    assert chk.ok, chk.describe()


def test_two_by_two_top_composite():
    # leaving out Q_0 at n = 2, p = 2 gives e_2 * c_{2,0} = e_2^2
    chk = verify_mimura_kameko(2, 2)
    i, lhs, rhs, lam = chk.rows[0]
    e, _ = euler_class(2, 2)
    assert lam == 1
    assert rhs == (e ** 2).to_ring(rhs.ring)
    y1, y2 = (rhs.ring.gen(n) for n in ("y1", "y2"))
    assert lhs == y1 ** 4 * y2 ** 2 + y1 ** 2 * y2 ** 4


def test_d_classes_square_to_c_classes():
    d = d_classes(3)
    X = d[0].ring
    assert d[3] == X.one()
    assert d[0].top_degree == 2 * (8 - 1)


@pytest.mark.parametrize("n", [2, 3])
def test_d_class_conventions_report(n):
    rows = d_class_conventions(n)
    for r in rows:
        print(r.model, r.shift, r.max_index, r.matches, r.factorizations)
    assert not any(r.holds(n) for r in rows)
    for model in ("graded", "polynomial"):
        row = next(r for r in rows if r.model == model and r.shift == -1 and r.max_index == n - 1)
        assert row.factorizations == {i: i for i in range(n + 1)}


def test_y_ring_prefix():
    assert y_ring(2, 3, "x").names == ("x1", "x2")
