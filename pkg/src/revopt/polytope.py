"""Exact polyhedral geometry: H-to-V conversion, projection, membership.

The enumerator is the double description method run on the homogenization
cone {(x,t) : Ax - bt <= 0, t >= 0}, with rows inserted in lexicographic
order and an explicit lineality basis so unbounded and degenerate inputs are
handled exactly. Rays are kept as primitive integer vectors internally, which
keeps the arithmetic in machine integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .lp import Infeasible, LinearProgram, lp_solve
from .model import HPolyhedron, InputError

__all__ = ["VPolytope", "vertex_enumerate", "project", "h_member", "vpoly_member"]

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class VPolytope:
    """conv(vertices) + cone(rays); empty iff both lists are empty."""

    n: int
    vertices: tuple[tuple[Fraction, ...], ...]
    rays: tuple[tuple[Fraction, ...], ...]

    def is_empty(self) -> bool:
        return not self.vertices and not self.rays


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _primitive(vec) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector (same ray)."""
    denom = 1
    for v in vec:
        denom = denom * v.denominator // gcd(denom, v.denominator)
    ints = [int(v * denom) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints)


def _normalize_ray(vec) -> tuple[Fraction, ...]:
    """First nonzero coordinate scaled to absolute value 1."""
    lead = next((v for v in vec if v != 0), None)
    if lead is None:
        raise InputError("zero vector is not a ray")
    scale = _ONE / abs(Fraction(lead))
    return tuple(scale * Fraction(v) for v in vec)


class _DoubleDescription:
    """Incremental generators of {y : m . y <= 0 for inserted rows m}."""

    def __init__(self, dim: int):
        self.dim = dim
        self.lin = [
            tuple(1 if k == j else 0 for k in range(dim)) for j in range(dim)
        ]
        self.rays = []  # (primitive int vector, frozenset of tight row ids)
        self.count = 0

    def insert(self, m: tuple[int, ...]):
        k = self.count
        self.count += 1
        hit = next((i for i, l in enumerate(self.lin) if _dot(m, l) != 0), None)
        if hit is not None:
            l0 = self.lin.pop(hit)
            v0 = _dot(m, l0)
            if v0 > 0:
                l0 = tuple(-c for c in l0)
                v0 = -v0
            self.lin = [
                _primitive_int(tuple(-v0 * a + _dot(m, l) * b for a, b in zip(l, l0)))
                for l in self.lin
            ]
            new_rays = []
            for vec, zset in self.rays:
                val = _dot(m, vec)
                adj = tuple(-v0 * a + val * b for a, b in zip(vec, l0))
                new_rays.append((_primitive_int(adj), zset | {k}))
            new_rays.append((_primitive_int(l0), frozenset(range(k))))
            self.rays = new_rays
            return
        vals = [_dot(m, vec) for vec, _ in self.rays]
        keep = []
        pos, neg = [], []
        for (vec, zset), v in zip(self.rays, vals):
            if v == 0:
                keep.append((vec, zset | {k}))
            elif v < 0:
                keep.append((vec, zset))
                neg.append((vec, zset, v))
            else:
                pos.append((vec, zset, v))
        for pvec, pz, pv in pos:
            for nvec, nz, nv in neg:
                common = pz & nz
                if not self._adjacent(pvec, nvec, common):
                    continue
                combo = tuple(pv * a - nv * b for a, b in zip(nvec, pvec))
                # pv > 0 > nv, so this is a positive combination of the pair.
                if any(combo):
                    keep.append((_primitive_int(combo), common | {k}))
        self.rays = keep

    def _adjacent(self, pvec, nvec, common) -> bool:
        for vec, zset in self.rays:
            if vec is pvec or vec is nvec:
                continue
            if common <= zset:
                return False
        return True


def _primitive_int(ints: tuple[int, ...]) -> tuple[int, ...]:
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        return tuple(v // g for v in ints)
    return tuple(ints)


def vertex_enumerate(poly: HPolyhedron) -> VPolytope:
    """Exact generator representation; empty lists iff the polyhedron is empty.

    Emptiness falls out of the homogenization: the polyhedron is empty exactly
    when no generator of the cone has a positive homogenizing coordinate.
    """
    n = poly.n
    rows = [
        _primitive(tuple(row) + (-rhs,)) for row, rhs in zip(poly.a, poly.b)
    ]
    rows.append(tuple([0] * n + [-1]))  # homogenization: t >= 0
    rows.sort()
    dd = _DoubleDescription(n + 1)
    for m in rows:
        dd.insert(m)
    gens = [vec for vec, _ in dd.rays]
    for l in dd.lin:
        gens.append(l)
        gens.append(tuple(-c for c in l))
    vertices = set()
    rays = set()
    for g in gens:
        t = g[n]
        if t > 0:
            vertices.add(tuple(Fraction(c, t) for c in g[:n]))
        elif any(g[:n]):
            rays.add(_normalize_ray(g[:n]))
    if not vertices:
        return VPolytope(n, (), ())
    return VPolytope(n, tuple(sorted(vertices)), tuple(sorted(rays)))


def h_member(poly: HPolyhedron, x) -> bool:
    """Exact membership by row evaluation; empty row list means the whole space."""
    return poly.contains(x)


def vpoly_member(vp: VPolytope, x) -> bool:
    """Is x in conv(vertices) + cone(rays)? Decided by one feasibility LP.

    One-dimensional bodies are intervals, so that case is pure comparison.
    """
    if len(x) != vp.n:
        raise InputError("membership: dimension mismatch")
    if not vp.vertices:
        return False
    if vp.n == 1:
        lo = min(v[0] for v in vp.vertices)
        hi = max(v[0] for v in vp.vertices)
        if (Fraction(1),) in vp.rays:
            hi = None
        if (Fraction(-1),) in vp.rays:
            lo = None
        return (lo is None or lo <= x[0]) and (hi is None or x[0] <= hi)
    nv, nr = len(vp.vertices), len(vp.rays)
    nvar = nv + nr
    rows = []
    for j in range(vp.n):
        coeffs = tuple(v[j] for v in vp.vertices) + tuple(r[j] for r in vp.rays)
        rows.append((coeffs, "=", x[j]))
    rows.append((tuple([_ONE] * nv + [_ZERO] * nr), "=", _ONE))
    lp = LinearProgram(
        nvar, (_ZERO,) * nvar, rows=tuple(rows), lower=(_ZERO,) * nvar
    )
    return not isinstance(lp_solve(lp), Infeasible)


def _cone_member(target, rays) -> bool:
    if not any(target):
        return True
    if not rays:
        return False
    n = len(target)
    rows = [
        (tuple(r[j] for r in rays), "=", target[j]) for j in range(n)
    ]
    lp = LinearProgram(
        len(rays),
        (_ZERO,) * len(rays),
        rows=tuple(rows),
        lower=(_ZERO,) * len(rays),
    )
    return not isinstance(lp_solve(lp), Infeasible)


def project(poly: HPolyhedron, keep) -> VPolytope:
    """Generator form of the coordinate projection onto the `keep` indices.

    Lifted generators are enumerated, projected, then pruned: a generator is
    dropped when it is a convex-plus-conic combination of the others.
    """
    keep = tuple(keep)
    for j in keep:
        if not 0 <= j < poly.n:
            raise InputError(f"projection index {j} out of range")
    lifted = vertex_enumerate(poly)
    if lifted.is_empty():
        return VPolytope(len(keep), (), ())
    verts = sorted({tuple(v[j] for j in keep) for v in lifted.vertices})
    rays = sorted(
        {
            _normalize_ray(pr)
            for pr in (tuple(r[j] for j in keep) for r in lifted.rays)
            if any(pr)
        }
    )
    # Prune non-extreme rays, then vertices, one at a time (order is lex).
    kept_rays = list(rays)
    i = 0
    while i < len(kept_rays):
        others = kept_rays[:i] + kept_rays[i + 1 :]
        if _cone_member(kept_rays[i], others):
            kept_rays.pop(i)
        else:
            i += 1
    kept_verts = list(verts)
    i = 0
    while i < len(kept_verts):
        others = kept_verts[:i] + kept_verts[i + 1 :]
        trial = VPolytope(len(keep), tuple(others), tuple(kept_rays))
        if others and vpoly_member(trial, kept_verts[i]):
            kept_verts.pop(i)
        else:
            i += 1
    return VPolytope(len(keep), tuple(kept_verts), tuple(kept_rays))
