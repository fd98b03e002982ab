import random
from fractions import Fraction

import pytest

from revopt.model import (
    AffineForm,
    HPolyhedron,
    InputError,
    PolyhedralConvexFunction,
)
from revopt.polytope import vpoly_member
from revopt.subdiff import SubdiffQuery, scale_subdiff, subdiff_member, subdiff_vrep

F = Fraction


def absf():
    return PolyhedralConvexFunction(1, (AffineForm((1,), 0), AffineForm((-1,), 0)))


def q_abs(eps):
    return SubdiffQuery(absf(), (F(1),), F(eps))


def abs_subdiff_interval(eps):
    """Hand closed form: d_eps |.|(1) = [max(-1, 1-eps), 1]."""
    return max(F(-1), 1 - F(eps)), F(1)


def test_member_gradient_on_smooth_piece():
    assert subdiff_member(q_abs(0), (F(1),))


def test_member_relaxed_zero_slope():
    # Closed form gives [0, 1] at eps=1; confirm s=0 by dense sampling of the
    # defining inequality over x in [-10, 10].
    assert subdiff_member(q_abs(1), (F(0),))
    f = absf()
    for k in range(-40, 41):
        x = F(k, 4)
        assert f.value((x,)) >= f.value((F(1),)) + 0 * (x - 1) - 1


def test_member_rejects_below_range():
    assert not subdiff_member(q_abs(0), (F(1, 2),))


@pytest.mark.parametrize("eps", [F(0), F(1, 2), F(1), F(4)])
def test_vrep_matches_closed_form(eps):
    lo, hi = abs_subdiff_interval(eps)
    expected = ((hi,),) if lo == hi else ((lo,), (hi,))
    v = subdiff_vrep(q_abs(eps))
    assert v.vertices == expected
    assert v.rays == ()


def test_vrep_membership_bisection_consistency():
    # Confirm the eps=1/2 segment endpoints against the membership oracle.
    lo, hi = abs_subdiff_interval(F(1, 2))
    grid = [lo - F(1, 8), lo, (lo + hi) / 2, hi, hi + F(1, 8)]
    want = [False, True, True, True, False]
    for s, expect in zip(grid, want):
        assert subdiff_member(q_abs(F(1, 2)), (s,)) == expect


def test_vrep_off_domain_is_empty():
    dom = HPolyhedron(((F(1),),), (F(1),), 1)
    f = PolyhedralConvexFunction(1, (AffineForm((1,), 0),), dom)
    q = SubdiffQuery(f, (F(2),), F(0))
    assert subdiff_vrep(q).is_empty()
    assert not subdiff_member(q, (F(1),))


def test_domain_boundary_gives_ray():
    # f(x) = x on {x <= 1} at the boundary point: subgradients [1, +inf).
    dom = HPolyhedron(((F(1),),), (F(1),), 1)
    f = PolyhedralConvexFunction(1, (AffineForm((1,), 0),), dom)
    v = subdiff_vrep(SubdiffQuery(f, (F(1),), F(0)))
    assert v.vertices == ((F(1),),)
    assert v.rays == ((F(1),),)


def test_scale_subdiff_examples():
    assert scale_subdiff(q_abs(1), F(2)).vertices == ((F(1),), (F(2),))
    base = subdiff_vrep(q_abs(1))
    assert scale_subdiff(q_abs(1), F(1)) == base
    assert scale_subdiff(q_abs(0), F(3)).vertices == ((F(3),),)


def test_scale_subdiff_rejects_nonpositive():
    with pytest.raises(InputError):
        scale_subdiff(q_abs(0), F(0))


def _random_fn(rng, n, with_domain=False):
    pieces = tuple(
        AffineForm(tuple(F(rng.randint(-3, 3)) for _ in range(n)),
                   F(rng.randint(-3, 3)))
        for _ in range(rng.randint(1, 4))
    )
    domain = None
    if with_domain:
        # A box keeps the domain nonempty and the query point inside.
        rows, rhs = [], []
        for j in range(n):
            e = [F(0)] * n
            e[j] = F(1)
            rows.append(tuple(e))
            rhs.append(F(rng.randint(1, 4)))
            e = [F(0)] * n
            e[j] = F(-1)
            rows.append(tuple(e))
            rhs.append(F(rng.randint(1, 4)))
        domain = HPolyhedron(tuple(rows), tuple(rhs), n)
    return PolyhedralConvexFunction(n, pieces, domain)


def test_monotone_in_eps_and_agreement_with_member():
    rng = random.Random(3)
    for _ in range(25):
        n = rng.choice([1, 2])
        f = _random_fn(rng, n)
        x0 = tuple(F(rng.randint(-2, 2)) for _ in range(n))
        small = SubdiffQuery(f, x0, F(rng.randint(0, 2)))
        big = SubdiffQuery(f, x0, small.eps + F(rng.randint(1, 3), 2))
        vs = subdiff_vrep(small)
        vb = subdiff_vrep(big)
        assert not vs.is_empty()  # hypothesis (H'): finite-valued case
        for vert in vs.vertices:
            assert vpoly_member(vb, vert)
            assert subdiff_member(small, vert)
        # Points strictly outside the larger set are rejected by the oracle.
        for vert in vb.vertices:
            shifted = tuple(c + 1 for c in vert)
            if not vpoly_member(vb, shifted):
                assert not subdiff_member(big, shifted)


def test_scaling_law_exact_on_random_instances():
    rng = random.Random(41)
    lams = [F(1, 3), F(1, 2), F(2), F(5)]
    done = 0
    for _ in range(50):
        n = rng.choice([1, 2])
        f = _random_fn(rng, n, with_domain=rng.random() < 0.3)
        x0 = tuple(F(rng.randint(-1, 1)) for _ in range(n))
        if not f.is_finite_at(x0):
            continue
        eps = F(rng.randint(0, 8), 4)
        lam = rng.choice(lams)
        via_law = scale_subdiff(SubdiffQuery(f, x0, eps), lam)
        direct = subdiff_vrep(SubdiffQuery(f.scaled(lam), x0, eps))
        assert via_law == direct
        done += 1
    assert done >= 40
