"""Float engine for the enveloping Lie group, its exponential section,
coset projection, the Bol loop composition, and 3-web sampling.

Chart convention: a group element is written

    g = exp(x1 e1 + x2 e2 + x4 e4) * exp(x3 e3)

and in these coordinates the composition law is

    z1 = x1 + y1 + (x4 Y2 - x2 Y4) / 2
    z2 = x2 + Y2
    z3 = x3 + y3
    z4 = x4 + Y4          with (Y2, Y4) = Phi(x3)(y2, y4)

where Phi(t) = exp(t ad(e3)) restricted to the (e2, e4) plane.  The trig
flavor of Phi is forced by the structure constants, not a convention:
ad(e3) has real eigenvalues +-1 when [e3,e4] = -e2 (minus type,
hyperbolic Phi) and imaginary ones +-i when [e3,e4] = +e2 (plus type,
circular Phi).  The one-parameter commutator tests pin this down.

The group exponential in this chart is

    exp(w1,w2,w3,w4) = ( w1 + (w2^2 + sigma w4^2) a(w3) / 2,
                         w2 b(w3) + sigma w4 c(w3),
                         w3,
                         -w2 c(w3) + w4 b(w3) )

with sigma = +1 circular, -1 hyperbolic, and

    circular:    a = (v - sin v)/v^2,  b = sin v / v,  c = (1 - cos v)/v
    hyperbolic:  a = (sinh v - v)/v^2, b = sinh v / v, c = (cosh v - 1)/v.

B = exp<e1,e2,e3> is the local section of left cosets G mod H, with
H = exp<e4 + x e1 + y e2 + z e3> the one-parameter subgroup of the chart.
Projection onto B parallel to H solves the defining equation

    g = exp_B(t, u, v)  Delta  exp_H(alpha)

by Newton iteration; that solve is the ground truth against which every
tabulated closed form is audited (see bolalg.displays).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

from .enveloping import Sign
from .linalg import NoConvergenceError, newton_root, solve_float


class GroupPoint(NamedTuple):
    x1: float
    x2: float
    x3: float
    x4: float


class LoopPoint(NamedTuple):
    t: float
    u: float
    v: float


GROUP_IDENTITY = GroupPoint(0.0, 0.0, 0.0, 0.0)
LOOP_IDENTITY = LoopPoint(0.0, 0.0, 0.0)


class OffSectionError(ValueError):
    """Input point is not on the exponential section within tolerance."""


class ProjectionError(RuntimeError):
    """Coset projection failed to converge; point is outside the chart."""


@dataclass(frozen=True)
class LoopChart:
    """One of the four web cases: sign (trig flavor of the group) and the
    subgroup case (1: h = <e4 + e3>, 2: h = <e4 + y e2>, y >= 0).

    corrupt_projection replaces the subgroup factor exp(alpha h) by the raw
    coordinate line (0,...,alpha h,...); that line is not a subgroup, so
    the projected composition stops being a Bol loop.  It exists as the
    negative control for the left-Bol tests.
    """

    sign: Sign
    case: int
    y: float = 0.0
    radius: float = 0.5
    newton_tol: float = 1e-12
    section_tol: float = 1e-9
    corrupt_projection: bool = False

    def __post_init__(self):
        if self.case not in (1, 2):
            raise ValueError("case must be 1 or 2")
        if self.case == 2 and self.y < 0:
            raise ValueError("case 2 needs y >= 0")

    @property
    def v_max(self) -> float:
        # keeps circular denominators away from zero; same bound is kept
        # for the hyperbolic side so charts sample symmetric regions
        return math.pi / 2

    def h_params(self) -> tuple[float, float, float]:
        return (0.0, 0.0, 1.0) if self.case == 1 else (0.0, self.y, 0.0)


_CHART_NAMES = ("minus1", "minus2", "plus1", "plus2")


def chart_by_name(name: str, y: float = 0.0, **kw) -> LoopChart:
    if name not in _CHART_NAMES:
        raise ValueError("unknown chart %r (expected one of %s)" % (name, ", ".join(_CHART_NAMES)))
    sign = Sign.MINUS if name.startswith("minus") else Sign.PLUS
    case = int(name[-1])
    return LoopChart(sign=sign, case=case, y=y if case == 2 else 0.0, **kw)


def _sigma(sign: Sign) -> float:
    return 1.0 if sign is Sign.PLUS else -1.0


def _cs(sign: Sign):
    return (math.cos, math.sin) if sign is Sign.PLUS else (math.cosh, math.sinh)


_SERIES_CUT = 1e-4


def section_coeffs(sign: Sign, v: float) -> tuple[float, float, float]:
    """(a, b, c) of the module docstring, with 6th-order series below the
    removable singularity cut."""
    if abs(v) < _SERIES_CUT:
        w = v * v
        if sign is Sign.PLUS:
            a = v / 6.0 - v * w / 120.0 + v * w * w / 5040.0
            b = 1.0 - w / 6.0 + w * w / 120.0
            c = v / 2.0 - v * w / 24.0 + v * w * w / 720.0
        else:
            a = v / 6.0 + v * w / 120.0 + v * w * w / 5040.0
            b = 1.0 + w / 6.0 + w * w / 120.0
            c = v / 2.0 + v * w / 24.0 + v * w * w / 720.0
        return a, b, c
    if sign is Sign.PLUS:
        return ((v - math.sin(v)) / (v * v), math.sin(v) / v, (1.0 - math.cos(v)) / v)
    return ((math.sinh(v) - v) / (v * v), math.sinh(v) / v, (math.cosh(v) - 1.0) / v)


def _section_coeffs_d(sign: Sign, v: float) -> tuple[float, float]:
    """(b', c') for the scalar Newton solve."""
    if abs(v) < _SERIES_CUT:
        w = v * v
        if sign is Sign.PLUS:
            return (-v / 3.0 + v * w / 30.0, 0.5 - w / 8.0 + w * w / 144.0)
        return (v / 3.0 + v * w / 30.0, 0.5 + w / 8.0 + w * w / 144.0)
    C, S = _cs(sign)
    return ((C(v) * v - S(v)) / (v * v), (S(v) * v - (C(v) - 1.0)) / (v * v))


def _phi(sign: Sign, t: float, y2: float, y4: float) -> tuple[float, float]:
    C, S = _cs(sign)
    s = _sigma(sign)
    return (y2 * C(t) + s * y4 * S(t), -y2 * S(t) + y4 * C(t))


def group_compose(a: GroupPoint, b: GroupPoint, sign: Sign) -> GroupPoint:
    """The composition law Delta of the module docstring."""
    for x in (*a, *b):
        if not math.isfinite(x):
            raise ValueError("non-finite group coordinate")
    Y2, Y4 = _phi(sign, a.x3, b.x2, b.x4)
    return GroupPoint(a.x1 + b.x1 + 0.5 * (a.x4 * Y2 - a.x2 * Y4),
                      a.x2 + Y2,
                      a.x3 + b.x3,
                      a.x4 + Y4)


def group_inverse(a: GroupPoint, sign: Sign) -> GroupPoint:
    """Closed-form two-sided inverse: x3 negates, the (x2,x4) block is
    conjugated back, the central coordinate negates outright."""
    m2, m4 = _phi(sign, -a.x3, a.x2, a.x4)
    return GroupPoint(-a.x1, -m2, -a.x3, -m4)


def exp_G(w: Sequence[float], sign: Sign) -> GroupPoint:
    """Group exponential of w1 e1 + w2 e2 + w3 e3 + w4 e4 in the chart."""
    w1, w2, w3, w4 = (float(x) for x in w)
    a, b, c = section_coeffs(sign, w3)
    s = _sigma(sign)
    return GroupPoint(w1 + 0.5 * (w2 * w2 + s * w4 * w4) * a,
                      w2 * b + s * w4 * c,
                      w3,
                      -w2 * c + w4 * b)


def exp_B(p: LoopPoint, sign: Sign) -> GroupPoint:
    """Exponential section point of t e1 + u e2 + v e3."""
    return exp_G((p[0], p[1], p[2], 0.0), sign)


def exp_H(chart: LoopChart, alpha: float) -> GroupPoint:
    """exp(alpha (e4 + x e1 + y e2 + z e3)) for the chart's subgroup."""
    hx, hy, hz = chart.h_params()
    return exp_G((alpha * hx, alpha * hy, alpha * hz, alpha), chart.sign)


def _h_factor(chart: LoopChart, alpha: float) -> GroupPoint:
    if chart.corrupt_projection:
        hx, hy, hz = chart.h_params()
        return GroupPoint(alpha * hx, alpha * hy, alpha * hz, alpha)
    return exp_H(chart, alpha)


def exp_inv(g: GroupPoint, sign: Sign, tol: float = 1e-9) -> LoopPoint:
    """Inverse of exp_B by sequential inversion: v from x3 directly, then u
    from x2, then t from x1.  Rejects points off the section."""
    v = g.x3
    a, b, c = section_coeffs(sign, v)
    if abs(b) < 1e-12:
        raise OffSectionError("x3 outside the invertible range of the section")
    u = g.x2 / b
    t = g.x1 - 0.5 * u * u * a
    resid = abs(-u * c - g.x4)
    if resid > tol * max(1.0, abs(g.x2), abs(g.x4)):
        raise OffSectionError("point is off the section by %.3e" % resid)
    return LoopPoint(t, u, v)


def _project_case1(g: GroupPoint, chart: LoopChart) -> tuple[float, float, float, float]:
    """h = <e4 + e3>: alpha = x3 - v and v solves a scalar relation.

    With P(v) = g2 - C(v) + C(g3) and Q(v) = S(g3) - S(v) - g4 the two
    section equations are u b(v) = P(v), u c(v) = Q(v); eliminating u gives
    R(v) = P(v) c(v) - Q(v) b(v) = 0, solved by Newton from v0 = g3.
    """
    sign = chart.sign
    C, S = _cs(sign)
    g2, g3, g4 = g.x2, g.x3, g.x4
    cg3, sg3 = C(g3), S(g3)
    dC = (lambda v: -math.sin(v)) if sign is Sign.PLUS else math.sinh

    def R(v):
        a, b, c = section_coeffs(sign, v)
        return (g2 - C(v) + cg3) * c - (sg3 - S(v) - g4) * b

    def Rp(v):
        a, b, c = section_coeffs(sign, v)
        bp, cp = _section_coeffs_d(sign, v)
        P = g2 - C(v) + cg3
        Q = sg3 - S(v) - g4
        return -dC(v) * c + P * cp + C(v) * b - Q * bp

    try:
        v = newton_root(R, Rp, g3, tol=chart.newton_tol, max_iter=60)
    except NoConvergenceError as exc:
        raise ProjectionError("scalar projection relation did not converge: %s" % exc)
    a, b, c = section_coeffs(sign, v)
    u = (g2 - C(v) + cg3) / b
    alpha = g3 - v
    return u, v, alpha, a


def _project_case2(g: GroupPoint, chart: LoopChart) -> tuple[float, float, float, float]:
    """h = <e4 + y e2>: the subgroup has no e3 component, so v = x3 exactly
    and (u, alpha) solve a 2x2 linear system."""
    sign = chart.sign
    v = g.x3
    a, b, c = section_coeffs(sign, v)
    p2, p4 = _phi(sign, v, chart.y, 1.0)
    det = b * p4 + c * p2
    if abs(det) < 1e-12:
        raise ProjectionError("projection system singular at v = %r" % v)
    u = (g.x2 * p4 - p2 * g.x4) / det
    alpha = (b * g.x4 + c * g.x2) / det
    return u, v, alpha, a


def _project_newton(g: GroupPoint, chart: LoopChart) -> tuple[float, float, float, float]:
    """Damped 4-unknown Newton on the defining equation
    exp_B(t,u,v) Delta h_factor(alpha) = g.  Ground-truth path; also the
    only path for corrupted charts."""
    sign = chart.sign
    scale = 1.0 + max(abs(x) for x in g)

    def F(q):
        gp = group_compose(exp_B(LoopPoint(q[0], q[1], q[2]), sign),
                           _h_factor(chart, q[3]), sign)
        return [gp[i] - g[i] for i in range(4)]

    q = [g.x1, g.x2, g.x3, 0.0]
    fq = F(q)
    for _ in range(80):
        err = max(abs(x) for x in fq)
        if err < 1e-13 * scale:
            return q[1], q[2], q[3], section_coeffs(sign, q[2])[0]
        J = []
        for j in range(4):
            h = 1e-7 * max(1.0, abs(q[j]))
            qp = list(q)
            qm = list(q)
            qp[j] += h
            qm[j] -= h
            fp, fm = F(qp), F(qm)
            J.append([(fp[i] - fm[i]) / (2.0 * h) for i in range(4)])
        Jt = [[J[j][i] for j in range(4)] for i in range(4)]
        step = solve_float(Jt, fq)
        lam = 1.0
        while lam > 1.0 / 512:
            qn = [q[k] - lam * step[k] for k in range(4)]
            fn = F(qn)
            if max(abs(x) for x in fn) < err:
                q, fq = qn, fn
                break
            lam *= 0.5
        else:
            raise ProjectionError("projection Newton stalled")
    raise ProjectionError("projection Newton did not converge")


def _project_coords(g: GroupPoint, chart: LoopChart) -> tuple[float, float, float, float]:
    """Returns (t, u, v, alpha) with g = exp_B(t,u,v) Delta h_factor(alpha),
    verified by recomposition to the chart's section tolerance."""
    if chart.corrupt_projection:
        u, v, alpha, a = _project_newton(g, chart)
    elif chart.case == 1:
        u, v, alpha, a = _project_case1(g, chart)
    else:
        u, v, alpha, a = _project_case2(g, chart)
    H = _h_factor(chart, alpha)
    b2, b4 = _project_b24(u, v, chart.sign)
    Y2, Y4 = _phi(chart.sign, v, H.x2, H.x4)
    t = g.x1 - 0.5 * u * u * a - H.x1 - 0.5 * (b4 * Y2 - b2 * Y4)
    gg = group_compose(exp_B(LoopPoint(t, u, v), chart.sign), H, chart.sign)
    scale = 1.0 + max(abs(x) for x in g)
    err = max(abs(gg[i] - g[i]) for i in range(4))
    if err > chart.section_tol * scale:
        raise ProjectionError("projection residual %.3e exceeds tolerance" % err)
    return t, u, v, alpha


def _project_b24(u: float, v: float, sign: Sign) -> tuple[float, float]:
    a, b, c = section_coeffs(sign, v)
    return u * b, -u * c


def project_to_section(g: GroupPoint, chart: LoopChart) -> tuple[GroupPoint, float]:
    """Unique decomposition g = b Delta exp(alpha h); returns (b, alpha)."""
    t, u, v, alpha = _project_coords(g, chart)
    return exp_B(LoopPoint(t, u, v), chart.sign), alpha


def loop_compose(a: LoopPoint, b: LoopPoint, chart: LoopChart) -> LoopPoint:
    """The loop composition a * b = exp_inv(Pi_B(exp_B(a) Delta exp_B(b)))."""
    g = group_compose(exp_B(a, chart.sign), exp_B(b, chart.sign), chart.sign)
    t, u, v, _ = _project_coords(g, chart)
    return LoopPoint(t, u, v)


def check_left_bol(a: LoopPoint, b: LoopPoint, c: LoopPoint, chart: LoopChart) -> float:
    """sup-norm residual of a*(b*(a*c)) against (a*(b*a))*c."""
    star = lambda x, y: loop_compose(x, y, chart)
    lhs = star(a, star(b, star(a, c)))
    rhs = star(star(a, star(b, a)), c)
    return max(abs(l - r) for l, r in zip(lhs, rhs))


def tangent_bilinear(chart: LoopChart, xi: Sequence[float], eta: Sequence[float],
                     eps: float = 1e-3) -> tuple[float, float, float]:
    """Estimate of the tangent bilinear operation xi.eta = [xi,eta]_B from
    the loop commutator, Richardson-extrapolated over eps and eps/2.

    ((e xi) * (e eta) - (e eta) * (e xi)) / e^2 converges at first order;
    the extrapolated value at second order.
    """
    if not (1e-4 <= eps <= 1e-1):
        raise ValueError("eps out of the supported range [1e-4, 1e-1]")

    def com(e):
        p = LoopPoint(e * xi[0], e * xi[1], e * xi[2])
        q = LoopPoint(e * eta[0], e * eta[1], e * eta[2])
        pq = loop_compose(p, q, chart)
        qp = loop_compose(q, p, chart)
        return tuple((x - y) / (e * e) for x, y in zip(pq, qp))

    r1 = com(eps)
    r2 = com(eps / 2.0)
    return tuple(2.0 * b - a for a, b in zip(r1, r2))


def group_commutator_estimate(sign: Sign, i: int, j: int, eps: float = 1e-3) -> tuple:
    """(exp(e ei) exp(e ej) exp(e ei)^-1 exp(e ej)^-1) / e^2: recovers the
    bracket [ei, ej] up to O(eps).  Indices are 0-based over e1..e4."""
    a = exp_G(tuple(eps if k == i else 0.0 for k in range(4)), sign)
    b = exp_G(tuple(eps if k == j else 0.0 for k in range(4)), sign)
    k = group_compose(group_compose(a, b, sign),
                      group_compose(group_inverse(a, sign), group_inverse(b, sign), sign),
                      sign)
    return tuple(x / (eps * eps) for x in k)


WEB_CSV_HEADER = "a_t,a_u,a_v,b_t,b_u,b_v,ab_t,ab_u,ab_v"


def web_grid(n: int, radius: float = 0.25) -> list[LoopPoint]:
    """Deterministic lattice: n points on the diagonal segment s (1,1,1),
    s in [-radius, radius]."""
    if n < 1:
        raise ValueError("grid size must be >= 1")
    if n == 1:
        return [LOOP_IDENTITY]
    vals = [-radius + 2.0 * radius * k / (n - 1) for k in range(n)]
    return [LoopPoint(s, s, s) for s in vals]


def sample_web(chart: LoopChart, n: int, radius: float = 0.25) -> list[tuple]:
    """All pairs (a, b, a*b) over the lattice; |grid|^2 rows of 9 floats.

    The three families a = const, b = const, a*b = const are the web
    foliations; emit the rows as CSV for external plotting.
    """
    pts = web_grid(n, radius)
    rows = []
    for a in pts:
        for b in pts:
            ab = loop_compose(a, b, chart)
            rows.append((*a, *b, *ab))
    return rows


def web_rows_to_csv(rows: Sequence[tuple]) -> str:
    """17-significant-digit decimal CSV with LF line endings."""
    lines = [WEB_CSV_HEADER]
    for row in rows:
        lines.append(",".join("%.17g" % x for x in row))
    return "\n".join(lines) + "\n"
