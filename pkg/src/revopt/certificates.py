"""Theorem engines deciding the epsilon-optimality characterizations.

Each engine discharges one inclusion test per (eps', generator) pair through a
homogenized membership LP: the perspective multipliers lam (summing to alpha)
make "exists alpha > 0 with x* in d_{alpha*eps+eps'}(alpha f)(x)" a single
linear system, and strict positivity of alpha is decided by maximizing alpha
and requiring a positive supremum. Refutations are exact; the universally
quantified eps' is discharged on a finite sweep only, which is why the
positive verdict is named CERTIFIED_ON_GRID.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .lp import (
    INF,
    NEG_INF,
    Infeasible,
    LinearProgram,
    Optimal,
    Unbounded,
    lp_max_component,
    lp_solve,
)
from .model import (
    Inapplicable,
    InputError,
    PolyhedralConvexFunction,
    ReverseProblem,
    rat,
)
from .subdiff import SubdiffQuery, subdiff_member, subdiff_vrep

__all__ = [
    "EpsPrimeSweep",
    "MembershipEvidence",
    "CheckRecord",
    "CertificateVerdict",
    "default_sweep",
    "dense_sweep",
    "essential_check",
    "slater_check",
    "union_member_rop",
    "union_member_constrained",
    "union_member_equality",
    "convex_case_member",
    "verify",
    "falsify",
    "MODES",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)

MODES = ("rop", "constrained", "equality", "convex")

CERTIFIED = "CERTIFIED_ON_GRID"
REFUTED = "REFUTED"
INAPPLICABLE = "INAPPLICABLE"


# -- eps' sweeps -------------------------------------------------------------


@dataclass(frozen=True)
class EpsPrimeSweep:
    """Finite stand-in for the universally quantified eps' >= 0.

    `values` always contains 0; `randomized_extra` seeded draws are spread
    uniformly (in steps of bound/64) over [0, random_bound].
    """

    values: tuple[Fraction, ...]
    randomized_extra: int = 0
    seed: int = 0
    random_bound: Fraction = Fraction(4)

    def __post_init__(self):
        vals = {rat(v) for v in self.values}
        vals.add(_ZERO)
        if any(v < 0 for v in vals):
            raise InputError("sweep values must be >= 0")
        object.__setattr__(self, "values", tuple(sorted(vals)))
        object.__setattr__(self, "random_bound", rat(self.random_bound))

    def materialize(self) -> tuple[Fraction, ...]:
        vals = set(self.values)
        if self.randomized_extra:
            rng = random.Random(self.seed)
            for _ in range(self.randomized_extra):
                vals.add(Fraction(rng.randint(0, 64), 64) * self.random_bound)
        return tuple(sorted(vals))


def default_sweep(epsilon, seed: int = 0) -> EpsPrimeSweep:
    """Two regimes around eps_hat = max(eps, 1) plus seeded random draws."""
    e = max(rat(epsilon), _ONE)
    values = (_ZERO, e / 8, e / 4, e / 2, e, 2 * e, 4 * e)
    return EpsPrimeSweep(values, randomized_extra=8, seed=seed, random_bound=4 * e)


def dense_sweep(epsilon, slack, seed: int = 0) -> EpsPrimeSweep:
    """Breakpoint candidates k*eps_hat/16 for k = 0..64, eps_hat scaled by the
    optimality slack f(x) - inf f when that is finite."""
    e = max(rat(epsilon), _ONE)
    if slack is not None and slack != INF and slack > e:
        e = rat(slack)
    values = tuple(Fraction(k) * e / 16 for k in range(65))
    return EpsPrimeSweep(values, randomized_extra=8, seed=seed, random_bound=4 * e)


# -- small LP assembly helper ------------------------------------------------


class _LpBuilder:
    def __init__(self):
        self.lower: list = []
        self.rows: list = []

    def var(self, lower=None) -> int:
        self.lower.append(lower)
        return len(self.lower) - 1

    def vars(self, count: int, lower=None) -> list[int]:
        return [self.var(lower) for _ in range(count)]

    def row(self, coeffs: dict, rel: str, rhs):
        self.rows.append((dict(coeffs), rel, rat(rhs)))

    def lp(self, objective: dict | None = None, sense: str = "min") -> LinearProgram:
        n = len(self.lower)
        rows = tuple(
            (
                tuple(coeffs.get(j, _ZERO) for j in range(n)),
                rel,
                rhs,
            )
            for coeffs, rel, rhs in self.rows
        )
        obj = tuple((objective or {}).get(j, _ZERO) for j in range(n))
        return LinearProgram(n, obj, sense, rows=rows, lower=tuple(self.lower))


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


# -- membership evidence ------------------------------------------------------


@dataclass(frozen=True)
class MembershipEvidence:
    """Outcome of one homogenized membership test.

    `sup` is the supremum of alpha (or of the ray parameter t); `outcome` is
    the certified LP outcome backing it, stated against `lp`. On acceptance,
    `witness` is a feasible multiplier vector realizing alpha > 0.
    """

    member: bool
    sup: object
    lp: LinearProgram
    outcome: object
    witness: tuple | None = None


def _sup_evidence(lp: LinearProgram, comp_index: int) -> MembershipEvidence:
    res = lp_max_component(lp, comp_index)
    if res.value == NEG_INF:
        return MembershipEvidence(False, NEG_INF, lp, res.outcome)
    if res.value == INF:
        out = res.outcome
        point = out.point
        step = out.ray[comp_index]
        if point[comp_index] > 0:
            witness = point
        else:
            k = (1 - point[comp_index]) / step
            witness = tuple(p + k * r for p, r in zip(point, out.ray))
        return MembershipEvidence(True, INF, lp, out, witness)
    member = res.value > 0
    witness = res.outcome.x if member else None
    return MembershipEvidence(member, res.value, lp, res.outcome, witness)


# -- the four membership engines ----------------------------------------------


def _domain_blocks(fns):
    """(fn, rows, rhs) triples for every declared effective domain."""
    out = []
    for fn in fns:
        if fn.domain is not None:
            out.append((fn.domain.a, fn.domain.b))
    return out


def _union_lp_rop(f, x_bar, eps, eps_prime, xstar, ray=None):
    n = f.n
    b = _LpBuilder()
    lam = b.vars(len(f.pieces), lower=_ZERO)
    domains = _domain_blocks([f])
    eta = [b.vars(len(rows), lower=_ZERO) for rows, _ in domains]
    alpha = b.var(lower=_ZERO)
    t = b.var(lower=_ZERO) if ray is not None else None

    fx = f.value(x_bar)
    for j in range(n):
        coeffs = {lam[i]: f.pieces[i].a[j] for i in range(len(lam))}
        for (rows, _), etas in zip(domains, eta):
            for r, er in enumerate(etas):
                coeffs[er] = coeffs.get(er, _ZERO) + rows[r][j]
        if ray is not None:
            coeffs[t] = -ray[j]
        b.row(coeffs, "=", xstar[j])
    b.row({alpha: _ONE, **{i: -_ONE for i in lam}}, "=", _ZERO)
    budget = {lam[i]: f.pieces[i].b for i in range(len(lam))}
    for (rows, rhs), etas in zip(domains, eta):
        for r, er in enumerate(etas):
            budget[er] = budget.get(er, _ZERO) - rhs[r]
    budget[alpha] = -(fx - eps)
    if ray is not None:
        budget[t] = _dot(ray, x_bar)
    b.row(budget, ">=", -_dot(xstar, x_bar) - eps_prime)
    return b.lp(), alpha, t


def union_member_rop(f, x_bar, eps, eps_prime, xstar) -> MembershipEvidence:
    """Is x* in the union over alpha > 0 of d_{alpha*eps+eps'}(alpha f)(x_bar)?"""
    if not f.is_finite_at(x_bar):
        raise Inapplicable("point-off-domain")
    lp, alpha, _ = _union_lp_rop(f, x_bar, rat(eps), rat(eps_prime), xstar)
    return _sup_evidence(lp, alpha)


def _union_lp_constrained(f, G, x_bar, eps, eps_prime, xstar, ray=None):
    n = f.n
    b = _LpBuilder()
    lam = b.vars(len(f.pieces), lower=_ZERO)
    nus = [b.vars(len(g.pieces), lower=_ZERO) for g in G]
    domains = _domain_blocks([f, *G])
    eta = [b.vars(len(rows), lower=_ZERO) for rows, _ in domains]
    alpha = b.var(lower=_ZERO)
    mu = b.vars(len(G), lower=_ZERO)
    e1 = b.var(lower=_ZERO)
    e2 = b.var(lower=_ZERO)
    t = b.var(lower=_ZERO) if ray is not None else None

    fx = f.value(x_bar)
    gx = [g.value(x_bar) for g in G]
    for j in range(n):
        coeffs = {lam[i]: f.pieces[i].a[j] for i in range(len(lam))}
        for g, nu in zip(G, nus):
            for k, nv in enumerate(nu):
                coeffs[nv] = g.pieces[k].a[j]
        for (rows, _), etas in zip(domains, eta):
            for r, er in enumerate(etas):
                coeffs[er] = coeffs.get(er, _ZERO) + rows[r][j]
        if ray is not None:
            coeffs[t] = -ray[j]
        b.row(coeffs, "=", xstar[j])
    b.row({alpha: _ONE, **{i: -_ONE for i in lam}}, "=", _ZERO)
    for j, nu in enumerate(nus):
        b.row({mu[j]: _ONE, **{nv: -_ONE for nv in nu}}, "=", _ZERO)
    budget = {lam[i]: f.pieces[i].b for i in range(len(lam))}
    for g, nu in zip(G, nus):
        for k, nv in enumerate(nu):
            budget[nv] = g.pieces[k].b
    for (rows, rhs), etas in zip(domains, eta):
        for r, er in enumerate(etas):
            budget[er] = budget.get(er, _ZERO) - rhs[r]
    budget[alpha] = -fx
    for j in range(len(G)):
        budget[mu[j]] = budget.get(mu[j], _ZERO) - gx[j]
    budget[e1] = _ONE
    if ray is not None:
        budget[t] = _dot(ray, x_bar)
    b.row(budget, ">=", -_dot(xstar, x_bar))
    # eps1 + eps2 = alpha*eps + eps'
    b.row({e1: _ONE, e2: _ONE, alpha: -eps}, "=", eps_prime)
    # -eps2 <= <mu, G(x_bar)> <= 0
    b.row({mu[j]: gx[j] for j in range(len(G))}, "<=", _ZERO)
    b.row({e2: _ONE, **{mu[j]: gx[j] for j in range(len(G))}}, ">=", _ZERO)
    return b.lp(), alpha, t


def union_member_constrained(f, G, x_bar, eps, eps_prime, xstar) -> MembershipEvidence:
    """Constrained membership: alpha > 0, mu >= 0, budget split eps1+eps2 and
    the sandwich -eps2 <= <mu, G(x_bar)> <= 0, in one homogenized LP."""
    if not f.is_finite_at(x_bar):
        raise Inapplicable("point-off-domain")
    for g in G:
        if g.value(x_bar) == INF or g.value(x_bar) > 0:
            raise Inapplicable("point-off-domain")
    lp, alpha, _ = _union_lp_constrained(
        f, tuple(G), x_bar, rat(eps), rat(eps_prime), xstar
    )
    return _sup_evidence(lp, alpha)


def _union_lp_equality(f, h, x_bar, eps, eps_prime, xstar, ray=None, max_beta=None):
    n = f.n
    b = _LpBuilder()
    lam = b.vars(len(f.pieces), lower=_ZERO)
    kap = b.vars(len(h.pieces), lower=_ZERO)
    domains = _domain_blocks([f, h])
    eta = [b.vars(len(rows), lower=_ZERO) for rows, _ in domains]
    alpha = b.var(lower=_ZERO)
    beta = b.var(lower=_ZERO)
    t = b.var(lower=_ZERO) if ray is not None else None

    fx = f.value(x_bar)
    hx = h.value(x_bar)
    for j in range(n):
        coeffs = {lam[i]: f.pieces[i].a[j] for i in range(len(lam))}
        for k, kv in enumerate(kap):
            coeffs[kv] = h.pieces[k].a[j]
        for (rows, _), etas in zip(domains, eta):
            for r, er in enumerate(etas):
                coeffs[er] = coeffs.get(er, _ZERO) + rows[r][j]
        if ray is not None:
            coeffs[t] = -ray[j]
        b.row(coeffs, "=", xstar[j])
    b.row({alpha: _ONE, **{i: -_ONE for i in lam}}, "=", _ZERO)
    b.row({beta: _ONE, **{kv: -_ONE for kv in kap}}, "=", _ZERO)
    budget = {lam[i]: f.pieces[i].b for i in range(len(lam))}
    for k, kv in enumerate(kap):
        budget[kv] = h.pieces[k].b
    for (rows, rhs), etas in zip(domains, eta):
        for r, er in enumerate(etas):
            budget[er] = budget.get(er, _ZERO) - rhs[r]
    budget[alpha] = -(fx - eps)
    budget[beta] = budget.get(beta, _ZERO) - hx
    if ray is not None:
        budget[t] = _dot(ray, x_bar)
    b.row(budget, ">=", -_dot(xstar, x_bar) - eps_prime)
    if max_beta is not None:
        b.row({beta: _ONE}, "<=", rat(max_beta))
    return b.lp(), alpha, t


def union_member_equality(
    f, h, x_bar, eps, eps_prime, xstar, max_beta=None
) -> MembershipEvidence:
    """Equality-constraint membership: alpha > 0, beta >= 0 with x* in
    d_{alpha*eps+eps'}(alpha f + beta h)(x_bar)."""
    if not f.is_finite_at(x_bar):
        raise Inapplicable("point-off-domain")
    if h.value(x_bar) != 0:
        raise Inapplicable("point-not-on-boundary")
    lp, alpha, _ = _union_lp_equality(
        f, h, x_bar, rat(eps), rat(eps_prime), xstar, max_beta=max_beta
    )
    return _sup_evidence(lp, alpha)


def _convex_lp(f, h, x_bar, eps) -> LinearProgram:
    n = f.n
    b = _LpBuilder()
    lam = b.vars(len(f.pieces), lower=_ZERO)
    kap = b.vars(len(h.pieces), lower=_ZERO)
    domains = _domain_blocks([f, h])
    eta = [b.vars(len(rows), lower=_ZERO) for rows, _ in domains]
    beta = b.var(lower=_ZERO)
    for j in range(n):
        coeffs = {lam[i]: f.pieces[i].a[j] for i in range(len(lam))}
        for k, kv in enumerate(kap):
            coeffs[kv] = h.pieces[k].a[j]
        for (rows, _), etas in zip(domains, eta):
            for r, er in enumerate(etas):
                coeffs[er] = coeffs.get(er, _ZERO) + rows[r][j]
        b.row(coeffs, "=", _ZERO)
    b.row({i: _ONE for i in lam}, "=", _ONE)
    b.row({beta: _ONE, **{kv: -_ONE for kv in kap}}, "=", _ZERO)
    budget = {lam[i]: f.pieces[i].b for i in range(len(lam))}
    for k, kv in enumerate(kap):
        budget[kv] = h.pieces[k].b
    for (rows, rhs), etas in zip(domains, eta):
        for r, er in enumerate(etas):
            budget[er] = budget.get(er, _ZERO) - rhs[r]
    budget[beta] = budget.get(beta, _ZERO) - h.value(x_bar)
    b.row(budget, ">=", f.value(x_bar) - eps)
    return b.lp()


def convex_case_member(f, h, x_bar, eps) -> MembershipEvidence:
    """The trivial convex characterization 0 in U_{beta>=0} d_eps(f+beta h)(x_bar)."""
    if not f.is_finite_at(x_bar) or not h.is_finite_at(x_bar):
        raise Inapplicable("point-off-domain")
    lp = _convex_lp(f, h, x_bar, rat(eps))
    out = lp_solve(lp)
    if isinstance(out, Infeasible):
        return MembershipEvidence(False, None, lp, out)
    witness = out.x if isinstance(out, Optimal) else out.point
    return MembershipEvidence(True, None, lp, out, witness)


# -- applicability gates -------------------------------------------------------


def _inf_over_region(f: PolyhedralConvexFunction, region):
    """inf of f over {x : phi(x) <= 0 for phi in region} as an extended value;
    None when the region (intersected with dom f) is empty."""
    n = f.n
    b = _LpBuilder()
    x = b.vars(n)
    t = b.var()
    for piece in f.pieces:
        b.row({**{x[j]: piece.a[j] for j in range(n)}, t: -_ONE}, "<=", -piece.b)
    fns = [f] + list(region or [])
    for fn in fns:
        if fn.domain is not None:
            for row, rhs in zip(fn.domain.a, fn.domain.b):
                b.row({x[j]: row[j] for j in range(n)}, "<=", rhs)
    for phi in region or []:
        for piece in phi.pieces:
            b.row({x[j]: piece.a[j] for j in range(n)}, "<=", -piece.b)
    out = lp_solve(b.lp(objective={t: _ONE}))
    if isinstance(out, Infeasible):
        return None
    if isinstance(out, Unbounded):
        return NEG_INF
    return out.value


def essential_check(f, region, x_bar, eps) -> bool:
    """inf of f over the region is strictly below f(x_bar) - eps.

    `region` is None for the whole space, or a list of polyhedral functions
    phi constraining phi(x) <= 0. An infeasible region yields False.
    """
    if not f.is_finite_at(x_bar):
        raise Inapplicable("point-off-domain")
    inf_val = _inf_over_region(f, region)
    if inf_val is None:
        return False
    if inf_val == NEG_INF:
        return True
    return inf_val < f.value(x_bar) - rat(eps)


def slater_check(G, f) -> bool:
    """Is there x0 in dom f and dom G with every g_j(x0) < 0?

    Decided by maximizing a common slack tau with every piece of every g_j
    bounded by -tau; strict feasibility means a positive supremum.
    """
    G = tuple(G)
    if not G:
        return True
    n = f.n
    b = _LpBuilder()
    x = b.vars(n)
    tau = b.var()
    for fn in (f, *G):
        if fn.domain is not None:
            for row, rhs in zip(fn.domain.a, fn.domain.b):
                b.row({x[j]: row[j] for j in range(n)}, "<=", rhs)
    for g in G:
        for piece in g.pieces:
            b.row(
                {**{x[j]: piece.a[j] for j in range(n)}, tau: _ONE},
                "<=",
                -piece.b,
            )
    res = lp_max_component(b.lp(), tau)
    return res.value == INF or (res.value != NEG_INF and res.value > 0)


# -- verdicts -------------------------------------------------------------------


@dataclass(frozen=True)
class CheckRecord:
    eps_prime: Fraction
    generator: tuple
    kind: str  # "vertex" or "ray"
    accepted: bool
    evidence: MembershipEvidence


@dataclass(frozen=True)
class CertificateVerdict:
    tag: str
    mode: str
    reason: str | None = None
    witness_eps_prime: Fraction | None = None
    witness_xstar: tuple | None = None
    witness_evidence: MembershipEvidence | None = None
    gates: tuple = ()
    log: tuple = ()
    info: tuple = ()

    @property
    def witness(self):
        if self.tag != REFUTED:
            return None
        return (self.witness_eps_prime, self.witness_xstar)


def _membership_lp(mode, problem: ReverseProblem, eps_prime, xstar, ray=None):
    """Deterministic LP rebuild for a logged check (used for replay)."""
    f, h = problem.objective, problem.reverse
    x_bar, eps = problem.point, problem.epsilon
    if mode == "rop":
        lp, alpha, t = _union_lp_rop(f, x_bar, eps, eps_prime, xstar, ray=ray)
    elif mode == "constrained":
        lp, alpha, t = _union_lp_constrained(
            f, problem.constraints, x_bar, eps, eps_prime, xstar, ray=ray
        )
    elif mode == "equality":
        lp, alpha, t = _union_lp_equality(f, h, x_bar, eps, eps_prime, xstar, ray=ray)
    else:
        raise InputError(f"no membership LP for mode {mode!r}")
    return lp, alpha, t


def _mode_member(mode, problem, eps_prime, xstar) -> MembershipEvidence:
    lp, alpha, _ = _membership_lp(mode, problem, eps_prime, xstar)
    return _sup_evidence(lp, alpha)


def _mode_ray_check(mode, problem, eps_prime, base, ray) -> MembershipEvidence:
    lp, _alpha, t = _membership_lp(mode, problem, eps_prime, base, ray=ray)
    res = lp_max_component(lp, t)
    accepted = res.value == INF
    witness = res.outcome.point if accepted else None
    return MembershipEvidence(accepted, res.value, lp, res.outcome, witness)


def verify(problem: ReverseProblem, mode: str, sweep: EpsPrimeSweep | None = None):
    """Run the applicability gates and the per-(eps', generator) inclusion
    checks; first failure refutes with an exact witness."""
    if mode not in MODES:
        raise InputError(f"unknown mode {mode!r}")
    f, h = problem.objective, problem.reverse
    x_bar, eps = problem.point, problem.epsilon
    gates = []
    info = []

    if not f.is_finite_at(x_bar):
        return CertificateVerdict(
            INAPPLICABLE, mode, reason="point-off-domain", gates=(("dom-f", False),)
        )
    gates.append(("dom-f", True))

    if mode == "convex":
        hx = h.value(x_bar)
        if hx == INF or hx > 0:
            gates.append(("h<=0", False))
            return CertificateVerdict(
                INAPPLICABLE, mode, reason="point-off-domain", gates=tuple(gates)
            )
        gates.append(("h<=0", True))
        ev = convex_case_member(f, h, x_bar, eps)
        record = CheckRecord(_ZERO, (_ZERO,) * problem.n, "vertex", ev.member, ev)
        if ev.member:
            return CertificateVerdict(
                CERTIFIED, mode, gates=tuple(gates), log=(record,)
            )
        return CertificateVerdict(
            REFUTED,
            mode,
            witness_eps_prime=_ZERO,
            witness_xstar=(_ZERO,) * problem.n,
            witness_evidence=ev,
            gates=tuple(gates),
            log=(record,),
        )

    if h.value(x_bar) != 0:
        gates.append(("h=0", False))
        return CertificateVerdict(
            INAPPLICABLE, mode, reason="point-not-on-boundary", gates=tuple(gates)
        )
    gates.append(("h=0", True))

    if mode == "constrained":
        for g in problem.constraints:
            gx = g.value(x_bar)
            if gx == INF or gx > 0:
                gates.append(("G<=0", False))
                return CertificateVerdict(
                    INAPPLICABLE, mode, reason="point-off-domain", gates=tuple(gates)
                )
        gates.append(("G<=0", True))

    region = {
        "rop": None,
        "equality": (h,),
        "constrained": tuple(problem.constraints),
    }[mode]
    if not essential_check(f, region, x_bar, eps):
        gates.append(("essential", False))
        # The point is then an unconstrained eps-minimizer candidate; report
        # the trivial characterization informationally.
        zero = (_ZERO,) * problem.n
        info.append(
            ("zero-in-subdiff-f", subdiff_member(SubdiffQuery(f, x_bar, eps), zero))
        )
        return CertificateVerdict(
            INAPPLICABLE,
            mode,
            reason="essential-assumption-fails",
            gates=tuple(gates),
            info=tuple(info),
        )
    gates.append(("essential", True))

    if mode == "constrained":
        if not slater_check(problem.constraints, f):
            gates.append(("slater", False))
            return CertificateVerdict(
                INAPPLICABLE, mode, reason="slater-fails", gates=tuple(gates)
            )
        gates.append(("slater", True))

    if sweep is None:
        sweep = default_sweep(eps)
    log = []
    for eps_prime in sweep.materialize():
        vrep = subdiff_vrep(SubdiffQuery(h, x_bar, eps_prime))
        assert not vrep.is_empty(), "hypothesis (H') holds for polyhedral data"
        for vert in vrep.vertices:
            ev = _mode_member(mode, problem, eps_prime, vert)
            log.append(CheckRecord(eps_prime, vert, "vertex", ev.member, ev))
            if not ev.member:
                return CertificateVerdict(
                    REFUTED,
                    mode,
                    witness_eps_prime=eps_prime,
                    witness_xstar=vert,
                    witness_evidence=ev,
                    gates=tuple(gates),
                    log=tuple(log),
                )
        base = vrep.vertices[0]
        for ray in vrep.rays:
            ev = _mode_ray_check(mode, problem, eps_prime, base, ray)
            log.append(CheckRecord(eps_prime, ray, "ray", ev.member, ev))
            if not ev.member:
                # The ray leaves the union at t = sup; exhibit a concrete
                # subgradient beyond it and refute on that point.
                t_out = (ev.sup if ev.sup != NEG_INF else _ZERO) + 1
                xstar = tuple(b + t_out * r for b, r in zip(base, ray))
                point_ev = _mode_member(mode, problem, eps_prime, xstar)
                assert not point_ev.member
                log.append(CheckRecord(eps_prime, xstar, "vertex", False, point_ev))
                return CertificateVerdict(
                    REFUTED,
                    mode,
                    witness_eps_prime=eps_prime,
                    witness_xstar=xstar,
                    witness_evidence=point_ev,
                    gates=tuple(gates),
                    log=tuple(log),
                )
    return CertificateVerdict(CERTIFIED, mode, gates=tuple(gates), log=tuple(log))


def falsify(
    problem: ReverseProblem, mode: str, sweep: EpsPrimeSweep | None = None, seed: int = 0
) -> CertificateVerdict:
    """verify() on a dense breakpoint sweep; the verdict's `witness` property
    carries the first (eps', x*) refutation pair, if any."""
    if sweep is None:
        region = {
            "rop": None,
            "equality": (problem.reverse,),
            "constrained": tuple(problem.constraints),
            "convex": None,
        }[mode]
        slack = None
        if problem.objective.is_finite_at(problem.point):
            inf_val = _inf_over_region(problem.objective, region)
            if inf_val is None or inf_val == NEG_INF:
                slack = None
            else:
                slack = problem.objective.value(problem.point) - inf_val
        sweep = dense_sweep(problem.epsilon, slack, seed=seed)
    return verify(problem, mode, sweep)
