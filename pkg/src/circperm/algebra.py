"""Exact polynomial/matrix algebra and recurrence machinery.

Everything is arbitrary-precision rational (Fraction); no floating point
enters any value that is asserted exactly.  Floats appear only in the
dominant-root estimate, which carries an explicit error bound.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import AnnihilationError, InconsistencyError, NoRecurrenceError

Matrix = Sequence[Sequence]


@dataclass(frozen=True)
class Polynomial:
    """Coefficients ascending by degree; trimmed so the leading one is nonzero."""

    coeffs: tuple[Fraction, ...]

    @staticmethod
    def from_list(cs) -> "Polynomial":
        cs = [Fraction(c) for c in cs]
        while cs and cs[-1] == 0:
            cs.pop()
        return Polynomial(tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if not self.coeffs or not other.coeffs:
            return Polynomial(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(tuple(out))

    def eval_matrix(self, m: Matrix) -> list[list[Fraction]]:
        """Horner evaluation at a square matrix."""
        dim = len(m)
        acc = [[Fraction(0)] * dim for _ in range(dim)]
        for c in reversed(self.coeffs):
            nxt = [[c if i == j else Fraction(0) for j in range(dim)] for i in range(dim)]
            for i in range(dim):
                row = acc[i]
                for k in range(dim):
                    a = row[k]
                    if a:
                        mk = m[k]
                        ni = nxt[i]
                        for j in range(dim):
                            if mk[j]:
                                ni[j] += a * mk[j]
            acc = nxt
        return acc

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if i > 0 and abs(c) == 1:
                piece = mono
            elif i == 0:
                piece = str(abs(c))
            else:
                piece = f"{abs(c)}{mono}"
            parts.append(("-" if c < 0 else "+") + piece)
        s = "".join(parts)
        return s[1:] if s.startswith("+") else "-" + s[1:]


def char_poly(matrix: Matrix) -> Polynomial:
    """Monic characteristic polynomial det(xI - M) by Faddeev-LeVerrier.

    The per-step division by k is exact (the c_k are the genuine
    coefficients), so the scheme is deterministic and rational-exact.
    """
    dim = len(matrix)
    if dim == 0:
        return Polynomial.from_list([1])
    m = [[Fraction(v) for v in row] for row in matrix]
    coeffs = [Fraction(0)] * (dim + 1)
    coeffs[dim] = Fraction(1)
    mk = [row[:] for row in m]
    for k in range(1, dim + 1):
        ck = -sum(mk[i][i] for i in range(dim)) / k
        coeffs[dim - k] = ck
        if k == dim:
            break
        for i in range(dim):
            mk[i][i] += ck
        mk = [[sum(m[i][t] * mk[t][j] for t in range(dim)) for j in range(dim)]
              for i in range(dim)]
    return Polynomial(tuple(coeffs))


def verify_annihilates(poly: Polynomial, blocks: Sequence[Matrix]) -> None:
    """Raise unless poly(B) = 0 for every block (exact matrix evaluation)."""
    for b in blocks:
        val = poly.eval_matrix(b)
        if any(any(v != 0 for v in row) for row in val):
            raise AnnihilationError("annihilator does not kill a diagonal block")


def annihilator_from_blocks(blocks: Sequence[Matrix]) -> Polynomial:
    """Product of the blocks' characteristic polynomials, repeated factors
    included once; verified to annihilate every block."""
    factors: list[Polynomial] = []
    for b in blocks:
        cp = char_poly(b)
        if cp not in factors:
            factors.append(cp)
    out = Polynomial.from_list([1])
    for f in factors:
        out = out * f
    verify_annihilates(out, blocks)
    return out


@dataclass(frozen=True)
class Recurrence:
    """T(n) = sum_j coeffs[j-1] * T(n-j), valid for n >= base + order."""

    order: int
    coeffs: tuple[Fraction, ...]
    base: int
    initials: tuple

    def __str__(self):
        terms = []
        for j, c in enumerate(self.coeffs, start=1):
            if c == 0:
                continue
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            terms.append(("-" if c < 0 else "+") + f"{mag}T(n-{j})")
        rhs = " ".join(terms).lstrip("+") or "0"
        return f"T(n) = {rhs}"


def _solve_consistent(rows: list[list[Fraction]], rhs: list[Fraction],
                      unknowns: int) -> Optional[list[Fraction]]:
    """Any exact solution of rows * c = rhs, or None when inconsistent.
    Free variables are set to zero."""
    aug = [row[:] + [r] for row, r in zip(rows, rhs)]
    m = len(aug)
    pivots: list[tuple[int, int]] = []
    r = 0
    for col in range(unknowns):
        piv = next((i for i in range(r, m) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        pv = aug[r][col]
        aug[r] = [v / pv for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append((r, col))
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][unknowns] != 0:
            return None
    sol = [Fraction(0)] * unknowns
    for row, col in pivots:
        sol[col] = aug[row][unknowns]
    return sol


def min_recurrence(terms: Sequence, base: int, degree_cap: int,
                   guard: int = 4) -> Recurrence:
    """Minimal-order exact linear recurrence fitted to `terms`.

    Works up from order 1, solving the (overdetermined) Hankel-window system
    over the fit region exactly and re-validating on `guard` held-out terms;
    the returned order is the smallest that reproduces everything.
    """
    if guard < 4:
        raise InconsistencyError("guard must be at least 4")
    terms = [Fraction(t) if not isinstance(t, int) else t for t in terms]
    if len(terms) < 2 * degree_cap + guard:
        raise InconsistencyError(
            f"need at least {2 * degree_cap + guard} terms, got {len(terms)}")
    fit_len = len(terms) - guard
    for d in range(1, degree_cap + 1):
        rows = [[Fraction(terms[j - l]) for l in range(1, d + 1)]
                for j in range(d, fit_len)]
        rhs = [Fraction(terms[j]) for j in range(d, fit_len)]
        sol = _solve_consistent(rows, rhs, d)
        if sol is None:
            continue
        if all(sum(c * terms[j - l - 1] for l, c in enumerate(sol)) == terms[j]
               for j in range(d, len(terms))):
            return Recurrence(d, tuple(sol), base, tuple(terms[:d]))
    raise NoRecurrenceError(
        f"no recurrence of order <= {degree_cap} fits {len(terms)} terms")


def eval_recurrence(rec: Recurrence, n: int):
    """Exact T(n) by linear iteration; extends backward below the base when
    the trailing coefficient is invertible."""
    vals = list(rec.initials)
    if n >= rec.base:
        idx = n - rec.base
        while len(vals) <= idx:
            nxt = sum(c * vals[len(vals) - j] for j, c in enumerate(rec.coeffs, 1))
            vals.append(nxt)
        v = vals[idx]
    else:
        cd = rec.coeffs[-1]
        if cd == 0:
            raise InconsistencyError("cannot extend backward: trailing coefficient 0")
        back = list(rec.initials)
        for _ in range(rec.base - n):
            # window holds T(m..m+d-1); the relation at m+d-1 solves T(m-1)
            top = back[rec.order - 1]
            acc = top - sum(rec.coeffs[j - 1] * back[rec.order - 1 - j]
                            for j in range(1, rec.order))
            back.insert(0, Fraction(acc, 1) / cd)
            back.pop()
        v = back[0]
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    return v


@dataclass(frozen=True)
class GrowthEstimate:
    """Dominant growth of a recurrence: largest-modulus real characteristic
    root when it dominates, else the empirical modulus of a non-real pair."""

    dominant_root: Optional[float]
    modulus: float
    error_bound: float
    note: str
    residual_bound: float


def recurrence_char_poly(rec: Recurrence) -> Polynomial:
    cs = [-c for c in reversed(rec.coeffs)] + [Fraction(1)]
    return Polynomial.from_list(cs)


def _real_roots(poly: Polynomial, tol: Fraction) -> list[Fraction]:
    """Real roots found by exact sign scanning plus bisection.

    Grid-based isolation: adequate for the well-separated characteristic
    roots that arise here; growth() cross-checks against the empirical term
    ratio and downgrades the report when they disagree.
    """
    bound = Fraction(1) + max(abs(c) for c in poly.coeffs) / abs(poly.coeffs[-1])
    grid = 1024
    xs = [-bound + 2 * bound * Fraction(i, grid) for i in range(grid + 1)]
    vals = [poly(x) for x in xs]
    roots: list[Fraction] = []
    for i in range(grid):
        a, fa = xs[i], vals[i]
        b, fb = xs[i + 1], vals[i + 1]
        if fa == 0:
            roots.append(a)
            continue
        if fa * fb < 0:
            while b - a > tol:
                mid = (a + b) / 2
                fm = poly(mid)
                if fm == 0:
                    a = b = mid
                    break
                if fa * fm < 0:
                    b = mid
                else:
                    a, fa = mid, fm
            roots.append((a + b) / 2)
    if vals[-1] == 0:
        roots.append(xs[-1])
    return roots


def _log2_fraction(fr: Fraction) -> float:
    """log2 of a positive rational whose parts may exceed float range."""
    num, den = fr.numerator, fr.denominator
    shift = num.bit_length() - den.bit_length()
    if shift >= 0:
        den <<= shift
    else:
        num <<= -shift
    return shift + math.log2(num / den)


def growth(rec: Recurrence, tol: float = 1e-9) -> GrowthEstimate:
    """Dominant-root estimate with certified bracketing to `tol`."""
    poly = recurrence_char_poly(rec)
    roots = _real_roots(poly, Fraction(tol) / 4)
    best: Optional[Fraction] = None
    for r in roots:
        if best is None or abs(r) > abs(best) or (abs(r) == abs(best) and r > best):
            best = r

    # empirical modulus from far-out term ratios (even window: sign-safe)
    window, far = 24, 240
    vals = list(rec.initials)
    while len(vals) < far + 1:
        vals.append(sum(c * vals[len(vals) - j] for j, c in enumerate(rec.coeffs, 1)))
    num, den = vals[far], vals[far - window]
    emp: Optional[float] = None
    if den != 0 and num != 0:
        emp = 2.0 ** (_log2_fraction(abs(Fraction(num) / Fraction(den))) / window)

    if best is not None and (emp is None or abs(abs(float(best)) - emp) <= 1e-3 * max(1.0, emp)):
        res = max(abs(poly(best - Fraction(tol))), abs(poly(best + Fraction(tol))))
        return GrowthEstimate(float(best), abs(float(best)), tol,
                              "largest-modulus real root", float(res))
    return GrowthEstimate(None, emp if emp is not None else 0.0, 1e-6,
                          "non-real dominant pair (modulus from term ratios)", 0.0)
