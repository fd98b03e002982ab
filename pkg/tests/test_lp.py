import random
from fractions import Fraction

import pytest

from revopt.lp import (
    INF,
    NEG_INF,
    Infeasible,
    LinearProgram,
    Optimal,
    Unbounded,
    check_outcome,
    lp_max_component,
    lp_solve,
)
from revopt.model import InputError


def test_min_with_lower_bound():
    lp = LinearProgram(1, (1,), "min", rows=(((1,), ">=", 3),))
    out = lp_solve(lp)
    assert isinstance(out, Optimal)
    assert out.x == (3,)
    assert out.value == 3
    check_outcome(lp, out)


def test_infeasible_with_farkas():
    lp = LinearProgram(1, (1,), "min", rows=(((1,), "<=", 0), ((1,), ">=", 1)))
    out = lp_solve(lp)
    assert isinstance(out, Infeasible)
    # Oriented rows are x <= 0 and -x <= -1; the combination (1,1) gives 0 <= -1.
    assert out.farkas == (1, 1)
    check_outcome(lp, out)


def test_unbounded_with_ray():
    lp = LinearProgram(1, (1,), "max", rows=(((1,), ">=", 0),))
    out = lp_solve(lp)
    assert isinstance(out, Unbounded)
    assert out.ray == (1,)
    check_outcome(lp, out)


def test_max_component_box():
    lp = LinearProgram(1, (0,), rows=(((1,), ">=", 0), ((1,), "<=", 2)))
    assert lp_max_component(lp, 0).value == 2


def test_max_component_degenerate_point():
    lp = LinearProgram(1, (0,), rows=(((1,), "=", 0),))
    assert lp_max_component(lp, 0).value == 0


def test_max_component_unbounded():
    lp = LinearProgram(1, (0,), rows=(((1,), ">=", 0),))
    assert lp_max_component(lp, 0).value == INF


def test_max_component_infeasible():
    lp = LinearProgram(1, (0,), rows=(((1,), "<=", -1), ((1,), ">=", 1)))
    assert lp_max_component(lp, 0).value == NEG_INF


def test_max_component_index_error():
    lp = LinearProgram(1, (0,))
    with pytest.raises(InputError):
        lp_max_component(lp, 3)


def test_two_dim_vertex_optimum_with_duals():
    # min x + y on the triangle x >= 0, y >= 0, x + y >= 2.
    lp = LinearProgram(
        2,
        (1, 1),
        "min",
        rows=(((1, 1), ">=", 2),),
        lower=(0, 0),
    )
    out = lp_solve(lp)
    assert isinstance(out, Optimal)
    assert out.value == 2
    check_outcome(lp, out)


def test_equalities_and_bounds_mix():
    # max 3x + 2y s.t. x + y = 4, x - y <= 2, 0 <= x <= 3, y >= 0.
    lp = LinearProgram(
        2,
        (3, 2),
        "max",
        rows=(((1, 1), "=", 4), ((1, -1), "<=", 2)),
        lower=(0, 0),
        upper=(3, None),
    )
    out = lp_solve(lp)
    assert isinstance(out, Optimal)
    assert out.x == (3, 1)
    assert out.value == 11
    check_outcome(lp, out)


def _random_lp(rng):
    n = rng.randint(1, 4)
    m = rng.randint(1, 6)
    rows = tuple(
        (
            tuple(Fraction(rng.randint(-4, 4)) for _ in range(n)),
            rng.choice(["<=", "=", ">="]),
            Fraction(rng.randint(-6, 6)),
        )
        for _ in range(m)
    )
    lower = tuple(
        Fraction(rng.randint(-5, 0)) if rng.random() < 0.4 else None for _ in range(n)
    )
    upper = tuple(
        Fraction(rng.randint(1, 6)) if rng.random() < 0.4 else None for _ in range(n)
    )
    obj = tuple(Fraction(rng.randint(-3, 3)) for _ in range(n))
    return LinearProgram(
        n, obj, rng.choice(["min", "max"]), rows=rows, lower=lower, upper=upper
    )


def test_random_certificates_all_validate():
    rng = random.Random(13)
    tags = {"optimal": 0, "unbounded": 0, "infeasible": 0}
    for _ in range(300):
        lp = _random_lp(rng)
        out = lp_solve(lp)
        check_outcome(lp, out)
        tags[type(out).__name__.lower()] += 1
    # The sweep must exercise every outcome kind.
    assert all(v > 0 for v in tags.values()), tags


def test_determinism_repeated_solves():
    rng = random.Random(29)
    for _ in range(40):
        lp = _random_lp(rng)
        assert lp_solve(lp) == lp_solve(lp)
