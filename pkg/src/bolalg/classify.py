"""Automorphism action, isomorphism and isotopy canonical forms.

The trilinear automorphism group, obtained by solving the morphism
equations exhaustively (see tests), is

    A = [[eps b^2, s eps f b, d],
         [0,       b,         f],
         [0,       0,         eps]]      b != 0, eps = +-1, f, d free,

with s = +1 for the minus type and s = -1 for the plus type.  Extended to
the enveloping algebra by A e4 = eps b e4, it acts on the subalgebra
parameters by

    x' = (x b^2 + s y f b + eps z d) / b
    y' = eps (y b + z f) / b
    z' = z / b

which reduces every (x,y,z) to one of (0,0,1), (0,|y|,0), (1,0,0), (0,0,0).

Isotopy composes one inner automorphism Ad(exp xi), xi in B, with the
group above.  On the line direction e4 + y e2 the Ad action is a Moebius
map in y: hyperbolic (y -> (y - tanh p)/(1 - y tanh p)) for the minus
type, circular (y -> (y + tan p)/(1 - y tan p)) for the plus type.  The
|y| < 1 / = 1 / > 1 strata are therefore invariant for the minus type,
while the plus type mixes all y.  canonical_form_isotopy returns these
computed classes; deviations of the tabulated representative lists from
them are logged as findings.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .enveloping import Sign, SubalgebraParams, g4
from .linalg import Mat, frac, mat_exp
from . import linalg


class ChartExitError(ValueError):
    """Transformed subalgebra line has no e4 component; it left the chart."""


@dataclass(frozen=True)
class AutoParams:
    """Parameters (b, f, d, eps) of one automorphism-family element."""

    b: Fraction
    f: Fraction = Fraction(0)
    d: Fraction = Fraction(0)
    eps: int = 1

    def __post_init__(self):
        object.__setattr__(self, "b", frac(self.b))
        object.__setattr__(self, "f", frac(self.f))
        object.__setattr__(self, "d", frac(self.d))
        if self.b == 0:
            raise ValueError("b must be nonzero")
        if self.eps not in (1, -1):
            raise ValueError("eps must be +-1")


IDENTITY_AUTO = AutoParams(b=Fraction(1))


def auto_matrix(p: AutoParams, sign: Sign = Sign.MINUS) -> Mat:
    """3x3 automorphism of the type-V trilinear structure (see module doc).

    The (0,1) entry carries the sign correction s*eps forced by the
    morphism equations; the tabulated display "f b" is its eps=+1 slice
    for the minus type.
    """
    s = sign.trilinear_coeff
    e = Fraction(p.eps)
    z = Fraction(0)
    return Mat([[e * p.b * p.b, s * e * p.f * p.b, p.d],
                [z, p.b, p.f],
                [z, z, e]])


def extend_to_G(p: AutoParams, sign: Sign = Sign.MINUS) -> Mat:
    """Extension to the enveloping algebra: acts as auto_matrix on B and as
    eps*b on e4 (A e4 = A[e2,e3] = [A e2, A e3])."""
    M = auto_matrix(p, sign)
    z = Fraction(0)
    rows = [list(M.rows[i]) + [z] for i in range(3)]
    rows.append([z, z, z, Fraction(p.eps) * p.b])
    return Mat(rows)


def action_on_params(p: AutoParams, s: SubalgebraParams) -> SubalgebraParams:
    """Image parameters of A(h_{x,y,z}), renormalized to unit e4 coefficient.

    Computed by applying the extended matrix to the direction vector, so
    A(h_s) = h_{s'} holds by construction; the closed-form transcription is
    a cross-check in the tests.
    """
    w = extend_to_G(p, s.sign).apply(s.h_vector())
    c = w[3]  # equals eps*b, never zero
    return SubalgebraParams(s.sign, w[0] / c, w[1] / c, w[2] / c)


# canonical-form kinds
ISO_Z = "iso_z"              # representative (0, 0, 1)
ISO_Y_FAMILY = "iso_y_family"  # representative (0, y, 0), y >= 0 (0 = zero algebra)
ISO_X = "iso_x"              # representative (1, 0, 0); no tabulated counterpart

REP_NEG_E3 = "neg_e3"        # e2.e3 = -e3
REP_NEG_E2 = "neg_e2"        # e2.e3 = -e2 (minus type, |y| = 1 stratum)
REP_TRIVIAL = "trivial"      # zero bilinear operation
REP_Y_EXTERIOR = "y_exterior"  # minus type, |y| > 1 stratum; no tabulated representative


@dataclass(frozen=True)
class ClassLabel:
    kind: str
    sign: Sign
    parameter: Fraction | None = None
    rep: tuple | None = None
    printed_aliases: tuple[str, ...] = ()


def canonical_form_iso(s: SubalgebraParams) -> tuple[ClassLabel, AutoParams]:
    """Isomorphism canonical form with a single witness group element.

    z != 0        -> (0,0,1)
    z = 0, y != 0 -> (0,|y|,0)
    z = y = 0, x != 0 -> (1,0,0)   (class absent from the tabulated list)
    zero          -> (0,0,0)
    """
    sgn = s.sign
    st = sgn.trilinear_coeff
    x, y, z = s.x, s.y, s.z
    if z != 0:
        wit = AutoParams(b=z, f=-y, d=-x * z + st * y * y, eps=1)
        label = ClassLabel(ISO_Z, sgn, rep=(Fraction(0), Fraction(0), Fraction(1)))
    elif y != 0:
        eps = 1 if y > 0 else -1
        wit = AutoParams(b=Fraction(1), f=-st * x / y, d=Fraction(0), eps=eps)
        label = ClassLabel(ISO_Y_FAMILY, sgn, parameter=abs(y),
                           rep=(Fraction(0), abs(y), Fraction(0)))
    elif x != 0:
        wit = AutoParams(b=Fraction(1) / x)
        label = ClassLabel(ISO_X, sgn, rep=(Fraction(1), Fraction(0), Fraction(0)))
    else:
        wit = IDENTITY_AUTO
        label = ClassLabel(ISO_Y_FAMILY, sgn, parameter=Fraction(0),
                           rep=(Fraction(0), Fraction(0), Fraction(0)))
    return label, wit


def ad_matrix(xi: Sequence, sign: Sign) -> Mat:
    """Adjoint operator of xi = u e1 + v e2 + p e3 on the enveloping
    algebra, in the basis e1..e4, built from the structure constants."""
    if len(xi) != 3:
        raise ValueError("xi must be (u, v, p) in B coordinates")
    exact = all(isinstance(c, (int, Fraction)) for c in xi)
    zero = Fraction(0) if exact else 0.0
    coef = [frac(c) if exact else float(c) for c in xi]
    cols = [[zero] * 4 for _ in range(4)]
    for (i, j, k), c in g4(sign).bracket.items():
        if i < 3 and coef[i] != 0:
            cols[j][k] += coef[i] * (c if exact else float(c))
    return Mat.from_cols(cols)


def Ad(xi: Sequence, sign: Sign, tol: float = 1e-13) -> Mat:
    """exp(ad xi) as a float matrix."""
    return mat_exp(ad_matrix(tuple(float(c) for c in xi), sign), tol)


@dataclass(frozen=True)
class FloatParams:
    sign: Sign
    x: float
    y: float
    z: float

    def triple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


def isotopy_transform(xi: Sequence, s: SubalgebraParams | FloatParams) -> FloatParams:
    """Direction parameters of Ad(exp xi)(h_s), renormalized to unit e4
    coefficient.  Raises ChartExitError when that coefficient vanishes."""
    M = Ad(xi, s.sign)
    h = (float(s.x), float(s.y), float(s.z), 1.0)
    w = M.apply(h)
    if abs(w[3]) < 1e-12:
        raise ChartExitError("transformed line has no e4 component")
    return FloatParams(s.sign, w[0] / w[3], w[1] / w[3], w[2] / w[3])


_MINUS_ALIASES = {
    REP_NEG_E3: ("e2.e3 = -e3",),
    REP_NEG_E2: ("e2.e3 = -e2", "e2.e3 = -e1 - e2"),
    REP_TRIVIAL: ("trivial bilinear operation",),
    REP_Y_EXTERIOR: (),
}
_PLUS_ALIASES = {
    REP_NEG_E3: ("e2.e3 = -e3",),
    REP_TRIVIAL: ("trivial bilinear operation", "e2.e3 = e2"),
}


def canonical_form_isotopy(s: SubalgebraParams) -> ClassLabel:
    """Isotopy class of the algebra of s, decided exactly on the strata
    described in the module docstring."""
    iso, _ = canonical_form_iso(s)
    sgn = s.sign
    if iso.kind == ISO_Z:
        kind = REP_NEG_E3
        param = None
        rep = (Fraction(0), Fraction(0), Fraction(1))
    elif sgn is Sign.PLUS:
        kind = REP_TRIVIAL
        param = None
        rep = (Fraction(0), Fraction(0), Fraction(0))
    elif iso.kind == ISO_X:
        kind = REP_TRIVIAL
        param = None
        rep = (Fraction(0), Fraction(0), Fraction(0))
    else:
        y = iso.parameter
        if y == 1:
            kind, param = REP_NEG_E2, None
            rep = (Fraction(0), Fraction(1), Fraction(0))
        elif y < 1:
            kind, param = REP_TRIVIAL, None
            rep = (Fraction(0), Fraction(0), Fraction(0))
        else:
            kind, param = REP_Y_EXTERIOR, y
            rep = (Fraction(0), y, Fraction(0))
    aliases = (_MINUS_ALIASES if sgn is Sign.MINUS else _PLUS_ALIASES)[kind]
    return ClassLabel(kind, sgn, parameter=param, rep=rep, printed_aliases=aliases)


def stratum_of_floats(sign: Sign, x: float, y: float, z: float,
                      tol: float = 1e-8) -> str:
    """Float version of the class decision, used by the grid search."""
    scale = max(1.0, abs(x), abs(y), abs(z))
    if abs(z) > tol * scale:
        return REP_NEG_E3
    if sign is Sign.PLUS:
        return REP_TRIVIAL
    t = abs(y)
    if abs(t - 1.0) <= tol * max(1.0, t):
        return REP_NEG_E2
    return REP_TRIVIAL if t < 1.0 else REP_Y_EXTERIOR


@dataclass(frozen=True)
class OrbitGrid:
    """Finite search grid: one automorphism element composed with one
    Ad(exp xi)."""

    b_values: tuple = (Fraction(1), Fraction(2), Fraction(-1), Fraction(1, 2))
    f_values: tuple = (Fraction(-1), Fraction(0), Fraction(1))
    d_values: tuple = (Fraction(0), Fraction(1))
    eps_values: tuple = (1, -1)
    u_values: tuple = (0.0, 0.7)
    v_values: tuple = (-1.0, -0.3, 0.0, 0.3, 1.0)
    p_values: tuple = (-0.9, -0.25, 0.0, 0.25, 0.9)
    tol: float = 1e-8


def orbit_search(s: SubalgebraParams, grid: OrbitGrid | None = None) -> frozenset[str]:
    """Brute-force isotopy_transform o action_on_params over the grid;
    returns every class label reached within the grid tolerance."""
    grid = grid or OrbitGrid()
    reached = set()
    autos = [AutoParams(b, f, d, e)
             for b in grid.b_values for f in grid.f_values
             for d in grid.d_values for e in grid.eps_values]
    xis = [(u, v, p) for u in grid.u_values for v in grid.v_values
           for p in grid.p_values]
    for a in autos:
        s1 = action_on_params(a, s)
        for xi in xis:
            try:
                t = isotopy_transform(xi, s1)
            except ChartExitError:
                continue
            reached.add(stratum_of_floats(s.sign, t.x, t.y, t.z, grid.tol))
    return frozenset(reached)
