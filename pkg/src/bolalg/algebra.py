"""Structure-constant algebras and exact axiom checking.

An algebra here is a basis e_0 .. e_{n-1} together with sparse structure
constants for an antisymmetric bilinear operation x.y and a trilinear
operation (x,y,z).  The axioms checked:

  antisym      x.x = 0
  skew12       (x,y,z) = -(y,x,z)
  cyclic       (x,y,z) + (y,z,x) + (z,x,y) = 0
  identity2    (x,y,z).w - (x,y,w).z + (z,w,x.y) - (x,y,z.w) + (x.y).(z.w) = 0
  derivation   (x,y,(z,w,t)) = ((x,y,z),w,t) + (z,(x,y,w),t) + (z,w,(x,y,t))

together with the Jacobi identity for Lie brackets.  Multilinearity makes
verification on basis tuples equivalent to full verification, so every
check runs over basis indices only, with exact Fraction arithmetic.
Reports collect every failing tuple instead of failing fast.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .linalg import (Mat, Tensor3, Tensor4, fvec, is_invertible, vadd, viszero,
                     vscale, vsub, vunit, vzero)


@dataclass(frozen=True)
class AlgebraSpec:
    """Bilinear + trilinear structure constants on a fixed basis."""

    dim: int
    bilinear: Tensor3
    trilinear: Tensor4
    label: str = ""

    def __post_init__(self):
        if self.bilinear.dim != self.dim or self.trilinear.dim != self.dim:
            raise ValueError("tensor dimension does not match algebra dimension")

    @classmethod
    def zero(cls, dim: int, label: str = "") -> "AlgebraSpec":
        return cls(dim, Tensor3(dim), Tensor4(dim), label)


@dataclass(frozen=True)
class LieAlgebraSpec:
    dim: int
    bracket: Tensor3
    label: str = ""

    def __post_init__(self):
        if self.bracket.dim != self.dim:
            raise ValueError("tensor dimension does not match algebra dimension")


def _eval3(t: Tensor3, a: Sequence, b: Sequence) -> tuple:
    dim = t.dim
    out = list(vzero(dim))
    for (i, j, k), c in t.items():
        coeff = a[i] * b[j]
        if coeff != 0:
            out[k] += coeff * c
    return tuple(out)


def _eval4(t: Tensor4, a: Sequence, b: Sequence, c: Sequence) -> tuple:
    dim = t.dim
    out = list(vzero(dim))
    for (i, j, k, l), d in t.items():
        coeff = a[i] * b[j] * c[k]
        if coeff != 0:
            out[l] += coeff * d
    return tuple(out)


def bilinear_eval(alg: AlgebraSpec, a: Sequence, b: Sequence) -> tuple:
    """x.y extended bilinearly from the structure constants."""
    if len(a) != alg.dim or len(b) != alg.dim:
        raise ValueError("vector dimension mismatch")
    return _eval3(alg.bilinear, a, b)


def trilinear_eval(alg: AlgebraSpec, a: Sequence, b: Sequence, c: Sequence) -> tuple:
    """(x,y,z) extended trilinearly from the structure constants."""
    if len(a) != alg.dim or len(b) != alg.dim or len(c) != alg.dim:
        raise ValueError("vector dimension mismatch")
    return _eval4(alg.trilinear, a, b, c)


def bracket_eval(L: LieAlgebraSpec, a: Sequence, b: Sequence) -> tuple:
    if len(a) != L.dim or len(b) != L.dim:
        raise ValueError("vector dimension mismatch")
    return _eval3(L.bracket, a, b)


def _antisym_failures(t: Tensor3, dim: int) -> list:
    bad = []
    for i in range(dim):
        for j in range(i, dim):
            lhs = _eval3(t, vunit(dim, i), vunit(dim, j))
            rhs = _eval3(t, vunit(dim, j), vunit(dim, i))
            if not viszero(vadd(lhs, rhs)):
                bad.append(("antisymmetry", i, j))
    return bad


@dataclass(frozen=True)
class LieReport:
    antisymmetry: bool
    jacobi: bool
    failures: tuple = ()

    @property
    def ok(self) -> bool:
        return self.antisymmetry and self.jacobi


def check_lie(L: LieAlgebraSpec) -> LieReport:
    """Antisymmetry on all basis pairs, Jacobi on all basis triples, exact."""
    dim = L.dim
    fails = _antisym_failures(L.bracket, dim)
    n_anti = len(fails)
    units = [vunit(dim, i) for i in range(dim)]

    def br(a, b):
        return _eval3(L.bracket, a, b)

    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                s = vadd(vadd(br(units[i], br(units[j], units[k])),
                              br(units[j], br(units[k], units[i]))),
                         br(units[k], br(units[i], units[j])))
                if not viszero(s):
                    fails.append(("jacobi", i, j, k))
    return LieReport(antisymmetry=n_anti == 0,
                     jacobi=len(fails) == n_anti,
                     failures=tuple(fails))


@dataclass(frozen=True)
class LtsReport:
    skew12: bool
    cyclic: bool
    derivation: bool
    failures: tuple = ()

    @property
    def ok(self) -> bool:
        return self.skew12 and self.cyclic and self.derivation


def check_lts(alg: AlgebraSpec) -> LtsReport:
    """Lie-triple-system axioms for the trilinear operation.

    skew12 is enforced even though some presentations omit it: without it
    the classified families are not triple systems at all.
    """
    dim = alg.dim
    t = alg.trilinear
    units = [vunit(dim, i) for i in range(dim)]
    fails = []
    for i in range(dim):
        for j in range(i, dim):
            for k in range(dim):
                s = vadd(_eval4(t, units[i], units[j], units[k]),
                         _eval4(t, units[j], units[i], units[k]))
                if not viszero(s):
                    fails.append(("skew12", i, j, k))
    n_skew = len(fails)
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                s = vadd(vadd(_eval4(t, units[i], units[j], units[k]),
                              _eval4(t, units[j], units[k], units[i])),
                         _eval4(t, units[k], units[i], units[j]))
                if not viszero(s):
                    fails.append(("cyclic", i, j, k))
    n_cyc = len(fails) - n_skew
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                for m in range(dim):
                    for w in range(dim):
                        lhs = _eval4(t, units[i], units[j],
                                     _eval4(t, units[k], units[m], units[w]))
                        rhs = vadd(vadd(
                            _eval4(t, _eval4(t, units[i], units[j], units[k]), units[m], units[w]),
                            _eval4(t, units[k], _eval4(t, units[i], units[j], units[m]), units[w])),
                            _eval4(t, units[k], units[m],
                                   _eval4(t, units[i], units[j], units[w])))
                        if not viszero(vsub(lhs, rhs)):
                            fails.append(("derivation", i, j, k, m, w))
    return LtsReport(skew12=n_skew == 0,
                     cyclic=n_cyc == 0,
                     derivation=len(fails) == n_skew + n_cyc,
                     failures=tuple(fails))


@dataclass(frozen=True)
class BolReport:
    lts: LtsReport
    antisym_bilinear: bool
    identity2: bool
    failures: tuple = ()

    @property
    def ok(self) -> bool:
        return self.lts.ok and self.antisym_bilinear and self.identity2


def check_bol(alg: AlgebraSpec) -> BolReport:
    """Full Bol-algebra check: LTS axioms plus the mixed identity.

    identity2 on basis tuples (x,y,z,w):
      (x,y,z).w - (x,y,w).z + (z,w,x.y) - (x,y,z.w) + (x.y).(z.w) = 0
    """
    dim = alg.dim
    lts = check_lts(alg)
    anti = _antisym_failures(alg.bilinear, dim)
    units = [vunit(dim, i) for i in range(dim)]
    fails = list(anti)
    n_anti = len(anti)

    def mul(a, b):
        return _eval3(alg.bilinear, a, b)

    def tri(a, b, c):
        return _eval4(alg.trilinear, a, b, c)

    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                for m in range(dim):
                    x, y, z, w = units[i], units[j], units[k], units[m]
                    xy = mul(x, y)
                    s = mul(tri(x, y, z), w)
                    s = vsub(s, mul(tri(x, y, w), z))
                    s = vadd(s, tri(z, w, xy))
                    s = vsub(s, tri(x, y, mul(z, w)))
                    s = vadd(s, mul(xy, mul(z, w)))
                    if not viszero(s):
                        fails.append(("identity2", i, j, k, m))
    return BolReport(lts=lts,
                     antisym_bilinear=n_anti == 0,
                     identity2=len(fails) == n_anti,
                     failures=tuple(fails))


@dataclass(frozen=True)
class PseudoDerivationWitness:
    """Operator Pi_{xy} = (x,y,.) with companion x.y, as a matrix on the basis."""

    pair: tuple[int, int]
    companion: tuple
    operator: Mat


@dataclass(frozen=True)
class PseudoDerivationReport:
    pseudo: bool
    derivation: bool
    witnesses: tuple = ()
    failures: tuple = ()

    @property
    def ok(self) -> bool:
        return self.pseudo and self.derivation


def check_pseudo_derivation(alg: AlgebraSpec) -> PseudoDerivationReport:
    """Check that every Pi_{xy} is a pseudo-derivation of the bilinear
    operation with companion x.y, and a derivation of the trilinear one.

    Deliberately built through the operator matrices rather than the raw
    identity expansion, so it is an independent code path from check_bol.
    """
    dim = alg.dim
    units = [vunit(dim, i) for i in range(dim)]

    def mul(a, b):
        return _eval3(alg.bilinear, a, b)

    def tri(a, b, c):
        return _eval4(alg.trilinear, a, b, c)

    fails = []
    witnesses = []
    n_pseudo_fail = 0
    for i in range(dim):
        for j in range(i + 1, dim):
            x, y = units[i], units[j]
            comp = mul(x, y)
            op = Mat.from_cols([tri(x, y, units[k]) for k in range(dim)])
            ok_pair = True
            for k in range(dim):
                for m in range(dim):
                    kap, zet = units[k], units[m]
                    lhs = op.apply(mul(kap, zet))
                    rhs = vadd(vadd(mul(op.apply(kap), zet), mul(kap, op.apply(zet))),
                               vsub(tri(kap, zet, comp), mul(mul(kap, zet), comp)))
                    if not viszero(vsub(lhs, rhs)):
                        fails.append(("pseudo", (i, j), (k, m)))
                        ok_pair = False
            for k in range(dim):
                for m in range(dim):
                    for w in range(dim):
                        lhs = op.apply(tri(units[k], units[m], units[w]))
                        rhs = vadd(vadd(tri(op.apply(units[k]), units[m], units[w]),
                                        tri(units[k], op.apply(units[m]), units[w])),
                                   tri(units[k], units[m], op.apply(units[w])))
                        if not viszero(vsub(lhs, rhs)):
                            fails.append(("operator-derivation", (i, j), (k, m, w)))
                            ok_pair = False
            if ok_pair:
                witnesses.append(PseudoDerivationWitness((i, j), comp, op))
    n_pseudo_fail = sum(1 for f in fails if f[0] == "pseudo")
    n_der_fail = len(fails) - n_pseudo_fail
    return PseudoDerivationReport(pseudo=n_pseudo_fail == 0,
                                  derivation=n_der_fail == 0,
                                  witnesses=tuple(witnesses),
                                  failures=tuple(fails))


def make_isocline(dim: int, alpha: Sequence, beta: Mat) -> AlgebraSpec:
    """Algebra with x.y = alpha(x) y - alpha(y) x and
    (x,y,z) = beta(x,z) y - beta(y,z) x, for a linear form alpha and a
    symmetric bilinear form beta.  Both operations keep every plane
    (2-dimensional subspace) inside itself.
    """
    alpha = fvec(alpha)
    if len(alpha) != dim or beta.n != dim or beta.m != dim:
        raise ValueError("alpha/beta dimension mismatch")
    if beta != beta.transpose():
        raise ValueError("beta must be symmetric")
    bil = {}
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                v = (alpha[i] if j == k else Fraction(0)) - (alpha[j] if i == k else Fraction(0))
                if v != 0:
                    bil[(i, j, k)] = v
    tri = {}
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                for l in range(dim):
                    v = (beta[i, k] if j == l else Fraction(0)) - (beta[j, k] if i == l else Fraction(0))
                    if v != 0:
                        tri[(i, j, k, l)] = v
    return AlgebraSpec(dim, Tensor3(dim, bil), Tensor4(dim, tri), label="isocline")


def is_morphism(A: Mat, src: AlgebraSpec, dst: AlgebraSpec) -> bool:
    """A is an isomorphism from src onto dst: invertible, and on all basis
    tuples A(a.b) = Aa.Ab and A(a,b,c) = (Aa,Ab,Ac)."""
    if src.dim != dst.dim or A.n != src.dim or A.m != src.dim:
        raise ValueError("dimension mismatch")
    if not is_invertible(A):
        return False
    dim = src.dim
    units = [vunit(dim, i) for i in range(dim)]
    cols = [A.apply(u) for u in units]
    for i in range(dim):
        for j in range(dim):
            lhs = A.apply(_eval3(src.bilinear, units[i], units[j]))
            rhs = _eval3(dst.bilinear, cols[i], cols[j])
            if lhs != rhs:
                return False
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                lhs = A.apply(_eval4(src.trilinear, units[i], units[j], units[k]))
                rhs = _eval4(dst.trilinear, cols[i], cols[j], cols[k])
                if lhs != rhs:
                    return False
    return True
