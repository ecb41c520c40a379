"""Enveloping pairs (G, h) and the Bol operations they induce.

G is a 4-dimensional solvable Lie algebra with brackets

    [e2,e3] = e4,   [e2,e4] = -e1,   [e3,e4] = -+ e2

(upper sign: minus type, lower: plus type), B = <e1,e2,e3> and
h_{x,y,z} = <e4 + x e1 + y e2 + z e3>.  Projecting the bracket onto B
parallel to h gives the bilinear operation, the double bracket gives the
trilinear one:

    a.b = [a,b]_B        (a,b,c) = [[a,b],c]

which for h_{x,y,z} is exactly the family

    e2.e3 = -x e1 - y e2 - z e3,  (e2,e3,e2) = e1,  (e2,e3,e3) = +- e2.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import AlgebraSpec, LieAlgebraSpec, bracket_eval
from .linalg import (Mat, SingularMatrixError, Tensor3, Tensor4, frac, fvec,
                     rank_exact, solve_linear, vsub, vunit, vzero)


class Sign(str, enum.Enum):
    MINUS = "minus"
    PLUS = "plus"

    @property
    def trilinear_coeff(self) -> Fraction:
        """Coefficient s in (e2,e3,e3) = s e2: +1 for minus, -1 for plus."""
        return Fraction(1 if self is Sign.MINUS else -1)


class EnvelopingError(ValueError):
    """A pair violates direct-sum / subalgebra / double-bracket closure."""

    def __init__(self, msg, triple=None):
        super().__init__(msg)
        self.triple = triple


def g4(sign: Sign) -> LieAlgebraSpec:
    """The dim-4 enveloping Lie algebra for the given type sign."""
    s = sign.trilinear_coeff  # [e3,e4] = -s e2
    e = {
        (1, 2, 3): Fraction(1), (2, 1, 3): Fraction(-1),   # [e2,e3] = e4
        (1, 3, 0): Fraction(-1), (3, 1, 0): Fraction(1),   # [e2,e4] = -e1
        (2, 3, 1): -s, (3, 2, 1): s,                       # [e3,e4] = -s e2
    }
    return LieAlgebraSpec(4, Tensor3(4, e), label="g4(%s)" % sign.value)


@dataclass(frozen=True)
class SubalgebraParams:
    """Line h_{x,y,z} = <e4 + x e1 + y e2 + z e3>, with the type sign."""

    sign: Sign
    x: Fraction
    y: Fraction
    z: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", frac(self.x))
        object.__setattr__(self, "y", frac(self.y))
        object.__setattr__(self, "z", frac(self.z))

    def h_vector(self) -> tuple:
        return (self.x, self.y, self.z, Fraction(1))

    def triple(self) -> tuple:
        return (self.x, self.y, self.z)


@dataclass(frozen=True)
class EnvelopingPair:
    """Lie algebra G, coordinate subspace B, spanning vectors of h.

    The dataclass itself is plain data so that diagnostic pairs violating
    the invariants can still be constructed and reported on; `checked`
    validates eagerly.
    """

    G: LieAlgebraSpec
    B_indices: tuple[int, ...]
    h_basis: tuple[tuple, ...]

    def __post_init__(self):
        object.__setattr__(self, "B_indices", tuple(self.B_indices))
        object.__setattr__(self, "h_basis", tuple(fvec(h) for h in self.h_basis))

    @classmethod
    def checked(cls, G: LieAlgebraSpec, B_indices, h_basis) -> "EnvelopingPair":
        pair = cls(G, B_indices, h_basis)
        rep = check_enveloping(pair)
        if not rep.ok:
            raise EnvelopingError("invalid enveloping pair: %r" % (rep.failures,),
                                  triple=next((f[1] for f in rep.failures if f[0] == "prop4"), None))
        return pair

    def basis_matrix(self) -> Mat:
        cols = [vunit(self.G.dim, i) for i in self.B_indices] + list(self.h_basis)
        return Mat.from_cols(cols)


def family_pair(params: SubalgebraParams) -> EnvelopingPair:
    return EnvelopingPair(g4(params.sign), (0, 1, 2), (params.h_vector(),))


@dataclass(frozen=True)
class EnvelopingReport:
    direct_sum: bool
    h_subalgebra: bool
    prop4: bool
    failures: tuple = ()

    @property
    def ok(self) -> bool:
        return self.direct_sum and self.h_subalgebra and self.prop4


def _in_span(v: Sequence, basis: Sequence[Sequence]) -> bool:
    if all(x == 0 for x in v):
        return True
    if not basis:
        return False
    rows = [list(b) for b in basis]
    return rank_exact(Mat(rows + [list(v)])) == rank_exact(Mat(rows))


def check_enveloping(pair: EnvelopingPair) -> EnvelopingReport:
    """Exact verification of the three pair conditions: G = B + h as vector
    spaces, h closed under the bracket, and [[B,B],B] inside B."""
    G = pair.G
    fails = []
    dim = G.dim
    if len(pair.B_indices) + len(pair.h_basis) != dim:
        fails.append(("direct_sum", "dimension count"))
        direct = False
    else:
        try:
            M = pair.basis_matrix()
            direct = rank_exact(M) == dim
        except ValueError:
            direct = False
        if not direct:
            fails.append(("direct_sum", "B and h intersect"))
    sub = True
    for i, hi in enumerate(pair.h_basis):
        for j, hj in enumerate(pair.h_basis):
            br = bracket_eval(G, hi, hj)
            if not _in_span(br, pair.h_basis):
                sub = False
                fails.append(("h_subalgebra", (i, j)))
    prop4 = True
    bset = set(pair.B_indices)
    units = [vunit(dim, i) for i in pair.B_indices]
    for i, bi in enumerate(units):
        for j, bj in enumerate(units):
            for k, bk in enumerate(units):
                dbl = bracket_eval(G, bracket_eval(G, bi, bj), bk)
                if any(dbl[t] != 0 for t in range(dim) if t not in bset):
                    prop4 = False
                    fails.append(("prop4", (pair.B_indices[i], pair.B_indices[j],
                                            pair.B_indices[k])))
    return EnvelopingReport(direct, sub, prop4, tuple(fails))


def project_B(pair: EnvelopingPair, v: Sequence) -> tuple:
    """Component of v in B for the decomposition v = b + h, solved exactly.

    A singular basis matrix means the pair invariants are violated.
    """
    G = pair.G
    v = fvec(v)
    try:
        coef = solve_linear(pair.basis_matrix(), v)
    except SingularMatrixError as exc:
        raise EnvelopingError("projection undefined: %s" % exc) from exc
    out = list(vzero(G.dim))
    for c, idx in zip(coef[:len(pair.B_indices)], pair.B_indices):
        out[idx] = c
    return tuple(out)


def induced_bol(pair: EnvelopingPair, label: str = "") -> AlgebraSpec:
    """Bol algebra on B with a.b = [a,b]_B and (a,b,c) = [[a,b],c].

    The double-bracket closure is validated first; the induced trilinear
    operation is ill-defined on B without it.
    """
    rep = check_enveloping(pair)
    if not rep.prop4:
        bad = next(f[1] for f in rep.failures if f[0] == "prop4")
        raise EnvelopingError("double bracket leaves B at %r" % (bad,), triple=bad)
    if not rep.ok:
        raise EnvelopingError("invalid enveloping pair: %r" % (rep.failures,))
    G = pair.G
    bidx = pair.B_indices
    n = len(bidx)
    pos = {g: b for b, g in enumerate(bidx)}
    units = [vunit(G.dim, i) for i in bidx]
    bil = {}
    tri = {}
    for i in range(n):
        for j in range(n):
            br = bracket_eval(G, units[i], units[j])
            pb = project_B(pair, br)
            for gidx, val in enumerate(pb):
                if val != 0:
                    bil[(i, j, pos[gidx])] = val
            for k in range(n):
                dbl = bracket_eval(G, br, units[k])
                for gidx, val in enumerate(dbl):
                    if val != 0:
                        tri[(i, j, k, pos[gidx])] = val
    return AlgebraSpec(n, Tensor3(n, bil), Tensor4(n, tri), label=label)


def sabinin_triple(pair: EnvelopingPair, a: Sequence, b: Sequence, c: Sequence) -> tuple:
    """<a,b,c> = -1/2 [[a,b],c] + 1/2 [[a,b]_B, c]_B for a,b,c in B."""
    G = pair.G
    a, b, c = fvec(a), fvec(b), fvec(c)
    ab = bracket_eval(G, a, b)
    first = bracket_eval(G, ab, c)
    second = project_B(pair, bracket_eval(G, project_B(pair, ab), c))
    half = Fraction(1, 2)
    return tuple(-half * f + half * s for f, s in zip(first, second))


def family_bol(params: SubalgebraParams) -> AlgebraSpec:
    """The classified family, written out directly from its table:

        e2.e3 = -x e1 - y e2 - z e3
        (e2,e3,e2) = e1,  (e2,e3,e3) = s e2   (s = +1 minus / -1 plus)

    Equality with induced_bol(family_pair(params)) is a tested invariant.
    """
    x, y, z = params.x, params.y, params.z
    s = params.sign.trilinear_coeff
    bil = {}
    for k, val in enumerate((-x, -y, -z)):
        if val != 0:
            bil[(1, 2, k)] = val
            bil[(2, 1, k)] = -val
    tri = {
        (1, 2, 1, 0): Fraction(1), (2, 1, 1, 0): Fraction(-1),
        (1, 2, 2, 1): s, (2, 1, 2, 1): -s,
    }
    return AlgebraSpec(3, Tensor3(3, bil), Tensor4(3, tri),
                       label="family(%s; x=%s, y=%s, z=%s)" % (params.sign.value, x, y, z))


def derived_subspace_dim(L: LieAlgebraSpec, indices: Sequence[int]) -> int:
    """dim of span{[e_i, e_j] : i, j in indices} inside L."""
    rows = []
    units = [vunit(L.dim, i) for i in indices]
    for i, a in enumerate(units):
        for b in units[i + 1:]:
            br = bracket_eval(L, a, b)
            if not all(t == 0 for t in br):
                rows.append(list(br))
    if not rows:
        return 0
    return rank_exact(Mat(rows))
