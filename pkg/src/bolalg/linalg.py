"""Exact-rational and small dense float linear algebra.

The algebra layer works over ``fractions.Fraction`` so that every axiom
check is an exact equality, never a tolerance.  The loop layer reuses the
same matrix/vector helpers with float entries.  All values are immutable
after construction and all operations are pure functions.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

Rational = Fraction


class SingularMatrixError(ValueError):
    """Exact linear solve hit a rank-deficient matrix."""


class NoConvergenceError(RuntimeError):
    """An iterative root search exhausted its budget."""


def frac(x) -> Fraction:
    """Coerce ints, strings like '-3/4' and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("exact layer does not accept floats: %r" % (x,))
    return Fraction(x)


def fvec(xs: Iterable) -> tuple[Fraction, ...]:
    return tuple(frac(x) for x in xs)


def vadd(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vsub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vscale(c, u: Sequence) -> tuple:
    return tuple(c * a for a in u)


def vzero(n: int) -> tuple:
    return (Fraction(0),) * n


def vunit(n: int, i: int) -> tuple:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def viszero(u: Sequence) -> bool:
    return all(a == 0 for a in u)


def vmaxabs(u: Sequence[float]) -> float:
    return max(abs(a) for a in u) if u else 0.0


class Mat:
    """Immutable dense matrix with homogeneous scalar entries.

    Entries may be Fraction (exact layer) or float (loop layer); the two
    must not be mixed inside one matrix.
    """

    __slots__ = ("rows", "n", "m")

    def __init__(self, rows: Iterable[Iterable]):
        rs = tuple(tuple(r) for r in rows)
        if not rs or any(len(r) != len(rs[0]) for r in rs):
            raise ValueError("matrix rows must be nonempty and equal length")
        object.__setattr__(self, "rows", rs)
        object.__setattr__(self, "n", len(rs))
        object.__setattr__(self, "m", len(rs[0]))

    def __setattr__(self, *_):
        raise AttributeError("Mat is immutable")

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls([[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "Mat":
        m = n if m is None else m
        return cls([[Fraction(0)] * m for _ in range(n)])

    @classmethod
    def from_cols(cls, cols: Sequence[Sequence]) -> "Mat":
        n = len(cols[0])
        return cls([[cols[j][i] for j in range(len(cols))] for i in range(n)])

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def __getitem__(self, ij: tuple[int, int]):
        return self.rows[ij[0]][ij[1]]

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.m != other.n:
            raise ValueError("shape mismatch")
        ot = list(zip(*other.rows))
        return Mat([[sum(a * b for a, b in zip(row, oc)) for oc in ot] for row in self.rows])

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.m:
            raise ValueError("shape mismatch")
        return tuple(sum(a * x for a, x in zip(row, v)) for row in self.rows)

    def transpose(self) -> "Mat":
        return Mat(zip(*self.rows))

    def scale(self, c) -> "Mat":
        return Mat([[c * a for a in row] for row in self.rows])

    def add(self, other: "Mat") -> "Mat":
        return Mat([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def to_float(self) -> "Mat":
        return Mat([[float(a) for a in row] for row in self.rows])

    def inf_norm(self) -> float:
        return max(sum(abs(a) for a in row) for row in self.rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return "Mat(%r)" % (self.rows,)


def rank_exact(A: Mat) -> int:
    """Rank over the rationals by fraction-free-ish Gaussian elimination."""
    rows = [list(r) for r in A.rows]
    n, m = len(rows), len(rows[0])
    rank = 0
    col = 0
    while rank < n and col < m:
        piv = next((r for r in range(rank, n) if rows[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        for r in range(rank + 1, n):
            if rows[r][col] != 0:
                fac = rows[r][col] / prow[col]
                rows[r] = [a - fac * b for a, b in zip(rows[r], prow)]
        rank += 1
        col += 1
    return rank


def is_invertible(A: Mat) -> bool:
    return A.n == A.m and rank_exact(A) == A.n


def solve_linear(A: Mat, b: Sequence) -> tuple:
    """Solve A x = b exactly over the rationals.

    Raises SingularMatrixError on rank deficiency; the caller decides what a
    singular system means (for example a degenerate subalgebra position).
    """
    if A.n != A.m:
        raise ValueError("solve_linear needs a square matrix")
    n = A.n
    aug = [list(r) + [frac(b[i]) if not isinstance(b[i], Fraction) else b[i]]
           for i, r in enumerate(A.rows)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            raise SingularMatrixError("singular at column %d" % c)
        aug[c], aug[piv] = aug[piv], aug[c]
        prow = aug[c]
        inv = Fraction(1) / prow[c]
        aug[c] = [a * inv for a in prow]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                fac = aug[r][c]
                aug[r] = [a - fac * p for a, p in zip(aug[r], aug[c])]
    return tuple(aug[r][n] for r in range(n))


def solve_float(A: Sequence[Sequence[float]], b: Sequence[float]) -> list[float]:
    """Small dense float solve with partial pivoting."""
    n = len(b)
    aug = [list(A[i]) + [b[i]] for i in range(n)]
    for c in range(n):
        piv = max(range(c, n), key=lambda r: abs(aug[r][c]))
        if abs(aug[piv][c]) < 1e-300:
            raise SingularMatrixError("float solve: pivot underflow at %d" % c)
        aug[c], aug[piv] = aug[piv], aug[c]
        pc = aug[c][c]
        aug[c] = [a / pc for a in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0.0:
                fac = aug[r][c]
                aug[r] = [a - fac * p for a, p in zip(aug[r], aug[c])]
    return [aug[r][n] for r in range(n)]


def mat_exp(A: Mat, tol: float = 1e-13) -> Mat:
    """Matrix exponential by scaling and squaring around a Taylor core.

    Sized for the 4x4 float matrices of this package.  The series truncates
    exactly on nilpotent input (e.g. A^2 = 0 gives I + A).
    """
    if any(not math.isfinite(a) for row in A.rows for a in row):
        raise ValueError("mat_exp: non-finite entry")
    if A.n != A.m:
        raise ValueError("mat_exp needs a square matrix")
    norm = A.inf_norm()
    s = 0
    while norm > 0.5:
        norm /= 2.0
        s += 1
    B = A.scale(0.5 ** s) if s else A
    acc = Mat.identity(A.n).to_float()
    term = acc
    for k in range(1, 40):
        term = (term @ B).scale(1.0 / k)
        acc = acc.add(term)
        if term.inf_norm() < tol:
            break
    else:
        raise NoConvergenceError("mat_exp series did not reach tolerance")
    for _ in range(s):
        acc = acc @ acc
    return acc


def newton_root(f: Callable[[float], float],
                fprime: Callable[[float], float],
                x0: float,
                tol: float = 1e-12,
                max_iter: int = 50,
                bracket: tuple[float, float] | None = None) -> float:
    """Safeguarded scalar Newton iteration.

    A derivative below 1e-14, or a step escaping the caller-supplied
    bracket, falls back to bisection on that bracket.  Raises
    NoConvergenceError after max_iter or when no fallback is available.
    """
    lo, hi = (None, None)
    flo = fhi = None
    if bracket is not None:
        lo, hi = min(bracket), max(bracket)
    x = float(x0)
    for _ in range(max_iter):
        fx = f(x)
        if abs(fx) < tol:
            return x
        d = fprime(x)
        use_bisect = abs(d) < 1e-14
        if not use_bisect:
            step = fx / d
            nxt = x - step
            if bracket is not None and not (lo <= nxt <= hi):
                use_bisect = True
            else:
                x = nxt
                continue
        if use_bisect:
            if bracket is None:
                raise NoConvergenceError("derivative vanished and no bracket given")
            if flo is None:
                flo, fhi = f(lo), f(hi)
                if flo == 0.0:
                    return lo
                if fhi == 0.0:
                    return hi
                if flo * fhi > 0:
                    raise NoConvergenceError("bracket does not straddle a root")
            mid = 0.5 * (lo + hi)
            fmid = f(mid)
            if abs(fmid) < tol:
                return mid
            if flo * fmid <= 0:
                hi, fhi = mid, fmid
            else:
                lo, flo = mid, fmid
            x = 0.5 * (lo + hi)
    fx = f(x)
    if abs(fx) < tol:
        return x
    raise NoConvergenceError("newton_root: no convergence after %d iterations" % max_iter)


class Tensor3:
    """Sparse rank-3 tensor of structure constants c^k_{ij} over Fraction.

    Keys are (i, j, k) with i, j the operand indices and k the output
    component.  Absent entries are zero.
    """

    __slots__ = ("dim", "_e")

    def __init__(self, dim: int, entries: Mapping[tuple[int, int, int], object] | None = None):
        if dim <= 0:
            raise ValueError("dim must be positive")
        e = {}
        for key, val in (entries or {}).items():
            i, j, k = key
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise ValueError("tensor index %r out of range for dim %d" % (key, dim))
            v = frac(val)
            if v != 0:
                e[(i, j, k)] = v
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "_e", e)

    def __setattr__(self, *_):
        raise AttributeError("Tensor3 is immutable")

    def get(self, i: int, j: int, k: int) -> Fraction:
        return self._e.get((i, j, k), Fraction(0))

    def items(self):
        return sorted(self._e.items())

    def is_zero(self) -> bool:
        return not self._e

    def __eq__(self, other) -> bool:
        return isinstance(other, Tensor3) and self.dim == other.dim and self._e == other._e

    def __hash__(self) -> int:
        return hash((self.dim, frozenset(self._e.items())))

    def __repr__(self) -> str:
        return "Tensor3(dim=%d, %d entries)" % (self.dim, len(self._e))


class Tensor4:
    """Sparse rank-4 tensor d^l_{ijk}; see Tensor3."""

    __slots__ = ("dim", "_e")

    def __init__(self, dim: int, entries: Mapping[tuple[int, int, int, int], object] | None = None):
        if dim <= 0:
            raise ValueError("dim must be positive")
        e = {}
        for key, val in (entries or {}).items():
            i, j, k, l = key
            if not all(0 <= t < dim for t in (i, j, k, l)):
                raise ValueError("tensor index %r out of range for dim %d" % (key, dim))
            v = frac(val)
            if v != 0:
                e[(i, j, k, l)] = v
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "_e", e)

    def __setattr__(self, *_):
        raise AttributeError("Tensor4 is immutable")

    def get(self, i: int, j: int, k: int, l: int) -> Fraction:
        return self._e.get((i, j, k, l), Fraction(0))

    def items(self):
        return sorted(self._e.items())

    def is_zero(self) -> bool:
        return not self._e

    def __eq__(self, other) -> bool:
        return isinstance(other, Tensor4) and self.dim == other.dim and self._e == other._e

    def __hash__(self) -> int:
        return hash((self.dim, frozenset(self._e.items())))

    def __repr__(self) -> str:
        return "Tensor4(dim=%d, %d entries)" % (self.dim, len(self._e))
