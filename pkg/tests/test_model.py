import random
from fractions import Fraction

import pytest

from revopt.model import (
    INF,
    AffineForm,
    HPolyhedron,
    InputError,
    PolyhedralConvexFunction,
    ReverseProblem,
    fmt,
    rat,
)


def absf():
    return PolyhedralConvexFunction(1, (AffineForm((1,), 0), AffineForm((-1,), 0)))


def test_eval_abs():
    f = absf()
    assert f.value((Fraction(2),)) == 2
    assert f.value((Fraction(0),)) == 0


def test_eval_off_domain_is_inf():
    dom = HPolyhedron(((Fraction(1),),), (Fraction(1),), 1)
    f = PolyhedralConvexFunction(1, (AffineForm((1,), 0),), dom)
    assert f.value((Fraction(2),)) == INF
    assert f.value((Fraction(1),)) == 1


def test_eval_dimension_mismatch():
    with pytest.raises(InputError):
        absf().value((Fraction(1), Fraction(2)))


def test_lipschitz_bound():
    assert absf().lipschitz_bound() == 1
    f = PolyhedralConvexFunction(1, (AffineForm((2,), 0), AffineForm((-1,), 0)))
    assert f.lipschitz_bound() == 2
    g = PolyhedralConvexFunction(2, (AffineForm((3, -1), 1),))
    assert g.lipschitz_bound() == 4


def test_rat_parse_and_roundtrip():
    assert rat("3/4") == Fraction(3, 4)
    assert rat("-7") == Fraction(-7)
    for _ in range(200):
        num = random.randint(-10**6, 10**6)
        den = random.randint(1, 10**6)
        s = Fraction(num, den)
        assert rat(fmt(s)) == s


@pytest.mark.parametrize("bad", ["0.5", "1e3", "1/ 2", "1/0", "", "x"])
def test_rat_rejects_non_rationals(bad):
    with pytest.raises(InputError):
        rat(bad)


def _random_function(rng, n):
    pieces = tuple(
        AffineForm(tuple(Fraction(rng.randint(-3, 3)) for _ in range(n)),
                   Fraction(rng.randint(-3, 3)))
        for _ in range(rng.randint(1, 4))
    )
    return PolyhedralConvexFunction(n, pieces)


def test_eval_convex_along_segments():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.choice([1, 2])
        f = _random_function(rng, n)
        x = tuple(Fraction(rng.randint(-8, 8), rng.randint(1, 4)) for _ in range(n))
        y = tuple(Fraction(rng.randint(-8, 8), rng.randint(1, 4)) for _ in range(n))
        for t in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
            mid = tuple(t * xi + (1 - t) * yi for xi, yi in zip(x, y))
            assert f.value(mid) <= t * f.value(x) + (1 - t) * f.value(y)


def test_eval_positively_homogeneous_under_piece_scaling():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.choice([1, 2])
        f = _random_function(rng, n)
        lam = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        x = tuple(Fraction(rng.randint(-8, 8), rng.randint(1, 4)) for _ in range(n))
        assert f.scaled(lam).value(x) == lam * f.value(x)


def test_problem_validation():
    f = absf()
    h = PolyhedralConvexFunction(
        1, (AffineForm((1,), -1), AffineForm((-1,), -1))
    )
    p = ReverseProblem(1, f, h, (Fraction(1),), Fraction(0))
    assert p.epsilon == 0
    with pytest.raises(InputError):
        ReverseProblem(1, f, h, (Fraction(1),), Fraction(-1))
    with pytest.raises(InputError):
        ReverseProblem(2, f, h, (Fraction(1), Fraction(0)), Fraction(0))
