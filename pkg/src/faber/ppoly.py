"""Exact piecewise-polynomial algebra and the univariate spline building blocks.

Everything downstream (wavelets, lifted kernels, cardinal interpolants) is
assembled from the :class:`PiecewisePolynomial` container defined here.
Segments are stored in shifted-monomial form: on ``[b[i], b[i+1])`` the value
is ``sum_c coefs[i, c] * (x - b[i])**c``.  Anchoring each segment at its left
breakpoint keeps evaluation well conditioned up to the degree-5 kernels used
at order six.  All breakpoints in this package are dyadic rationals, so
merging grids is exact in floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import binom

from ._kernels import ppoly_eval

__all__ = [
    "PiecewisePolynomial",
    "CoefficientSequence",
    "NumericalGuardError",
    "bspline",
    "bspline_derivative",
    "chui_wang",
    "lift_kernel",
    "dual_coefficients",
    "cardinal_coefficients",
    "inner_product",
]


class NumericalGuardError(RuntimeError):
    """A numerical safeguard tripped (ill conditioning, unreachable tolerance)."""


def _shift_basis_matrix(degree: int, delta: float) -> np.ndarray:
    """Matrix S with p(x) = sum_i c_i (x-a)^i  =>  sum_i (S c)_i (x-a-delta)^i."""
    # (x-a)^i = ((x-a-delta) + delta)^i expanded binomially.
    n = degree + 1
    mat = np.zeros((n, n))
    for i in range(n):
        for r in range(i + 1):
            mat[r, i] = binom(i, r) * delta ** (i - r)
    return mat


class PiecewisePolynomial:
    """Compactly supported piecewise polynomial with half-open segments.

    Parameters
    ----------
    breaks : array_like
        Strictly increasing breakpoints, length ``K + 1``.
    coefs : array_like
        Shape ``(K, degree + 1)``.  Row ``i`` holds the local monomial
        coefficients on ``[breaks[i], breaks[i+1])``, lowest power first,
        anchored at ``breaks[i]``.

    The function is identically zero outside ``[breaks[0], breaks[-1])``;
    evaluation at a breakpoint uses the segment to its right, matching the
    half-open indicator convention of the order-1 B-spline.
    """

    __slots__ = ("breaks", "coefs")

    def __init__(self, breaks, coefs):
        breaks = np.ascontiguousarray(breaks, dtype=float)
        coefs = np.atleast_2d(np.ascontiguousarray(coefs, dtype=float))
        if breaks.ndim != 1 or breaks.size < 2:
            raise ValueError("need at least two breakpoints")
        if np.any(np.diff(breaks) <= 0):
            raise ValueError("breakpoints must be strictly increasing")
        if coefs.shape[0] != breaks.size - 1:
            raise ValueError("coefficient rows must match segment count")
        self.breaks = breaks
        self.coefs = coefs

    # -- basic queries ----------------------------------------------------

    @property
    def degree(self) -> int:
        return self.coefs.shape[1] - 1

    @property
    def support(self) -> tuple[float, float]:
        return float(self.breaks[0]), float(self.breaks[-1])

    def __call__(self, x):
        x_arr = np.ascontiguousarray(x, dtype=float)
        out = ppoly_eval(self.breaks, self.coefs, x_arr.ravel())
        out = out.reshape(x_arr.shape)
        return float(out) if np.isscalar(x) or x_arr.shape == () else out

    def sample_max(self, per_segment: int = 64) -> float:
        """Upper estimate of ``max |f|`` from dense per-segment sampling."""
        best = 0.0
        for i in range(len(self.coefs)):
            t = np.linspace(self.breaks[i], self.breaks[i + 1], per_segment, endpoint=False)
            vals = np.polynomial.polynomial.polyval(t - self.breaks[i], self.coefs[i])
            best = max(best, float(np.max(np.abs(vals))))
        return best

    # -- algebra ----------------------------------------------------------

    @classmethod
    def indicator(cls, a: float, b: float) -> "PiecewisePolynomial":
        return cls([a, b], [[1.0]])

    @classmethod
    def zero(cls) -> "PiecewisePolynomial":
        return cls([0.0, 1.0], [[0.0]])

    def is_zero(self) -> bool:
        return not np.any(self.coefs)

    def _padded(self, degree: int) -> np.ndarray:
        if self.degree >= degree:
            return self.coefs
        pad = degree - self.degree
        return np.pad(self.coefs, [(0, 0), (0, pad)])

    def __neg__(self) -> "PiecewisePolynomial":
        return PiecewisePolynomial(self.breaks, -self.coefs)

    def __rmul__(self, c: float) -> "PiecewisePolynomial":
        return PiecewisePolynomial(self.breaks, float(c) * self.coefs)

    __mul__ = __rmul__

    def __sub__(self, other: "PiecewisePolynomial") -> "PiecewisePolynomial":
        return self + (-other)

    def __add__(self, other: "PiecewisePolynomial") -> "PiecewisePolynomial":
        degree = max(self.degree, other.degree)
        grid = np.union1d(self.breaks, other.breaks)
        rows = np.zeros((grid.size - 1, degree + 1))
        for f in (self, other):
            coefs = f._padded(degree)
            idx = np.searchsorted(f.breaks, grid[:-1], side="right") - 1
            for seg, left in enumerate(grid[:-1]):
                i = idx[seg]
                if i < 0 or i >= len(coefs):
                    continue
                delta = left - f.breaks[i]
                if delta == 0.0:
                    rows[seg] += coefs[i]
                else:
                    rows[seg] += _shift_basis_matrix(degree, delta) @ coefs[i]
        return PiecewisePolynomial(grid, rows).trimmed()

    def trimmed(self, tol: float = 0.0) -> "PiecewisePolynomial":
        """Drop leading/trailing segments whose coefficients are all ``<= tol``."""
        scale = np.max(np.abs(self.coefs)) if self.coefs.size else 0.0
        thresh = tol * scale
        keep = np.any(np.abs(self.coefs) > thresh, axis=1)
        if not np.any(keep):
            return PiecewisePolynomial(self.breaks[:2], np.zeros((1, 1)))
        lo = int(np.argmax(keep))
        hi = len(keep) - int(np.argmax(keep[::-1]))
        return PiecewisePolynomial(self.breaks[lo : hi + 1], self.coefs[lo:hi])

    def shift(self, s: float) -> "PiecewisePolynomial":
        """Translate: returns x -> f(x - s)."""
        return PiecewisePolynomial(self.breaks + s, self.coefs)

    def dilate(self, a: float) -> "PiecewisePolynomial":
        """Dilate: returns x -> f(a * x) for a > 0."""
        if a <= 0:
            raise ValueError("dilation factor must be positive")
        powers = a ** np.arange(self.coefs.shape[1])
        return PiecewisePolynomial(self.breaks / a, self.coefs * powers)

    def derivative(self, order: int = 1) -> "PiecewisePolynomial":
        f = self
        for _ in range(order):
            if f.degree == 0:
                f = PiecewisePolynomial(f.breaks, np.zeros((len(f.coefs), 1)))
                continue
            powers = np.arange(1, f.degree + 1)
            f = PiecewisePolynomial(f.breaks, f.coefs[:, 1:] * powers)
        return f

    def antiderivative(self, order: int = 1, tail_tol: float = 1e-9) -> "PiecewisePolynomial":
        """Antiderivative vanishing at the left support end.

        The input must integrate to (numerically) zero, otherwise the result
        would carry a constant tail that this compact representation cannot
        hold; in that case a :class:`NumericalGuardError` is raised.
        """
        f = self
        for _ in range(order):
            widths = np.diff(f.breaks)
            powers = np.arange(1, f.degree + 2)
            raised = f.coefs / powers
            seg_increments = np.sum(raised * widths[:, None] ** powers[None, :], axis=1)
            consts = np.concatenate(([0.0], np.cumsum(seg_increments)))
            scale = max(np.max(np.abs(consts)), np.max(np.abs(f.coefs)), 1e-300)
            if abs(consts[-1]) > tail_tol * scale:
                raise NumericalGuardError(
                    "antiderivative is not compactly supported "
                    f"(tail value {consts[-1]:.3e}); integrand must have zero mean"
                )
            rows = np.concatenate([consts[:-1, None], raised], axis=1)
            f = PiecewisePolynomial(f.breaks, rows)
        return f

    def integral(self) -> float:
        widths = np.diff(self.breaks)
        total = 0.0
        for row, w in zip(self.coefs, widths):
            powers = np.arange(1, row.size + 1)
            total += float(np.sum(row * w**powers / powers))
        return total

    def moment(self, power: int) -> float:
        """Exact ``integral of x**power * f(x)``."""
        total = 0.0
        for i, row in enumerate(self.coefs):
            a = self.breaks[i]
            w = self.breaks[i + 1] - a
            # x^power = (t + a)^power in the local variable t = x - a.
            xpoly = np.array([binom(power, r) * a ** (power - r) for r in range(power + 1)])
            prod = np.convolve(row, xpoly)
            powers = np.arange(1, prod.size + 1)
            total += float(np.sum(prod * w**powers / powers))
        return total

    def inner(self, other: "PiecewisePolynomial") -> float:
        """Exact L2 inner product, integrating segment products in closed form."""
        lo = max(self.breaks[0], other.breaks[0])
        hi = min(self.breaks[-1], other.breaks[-1])
        if lo >= hi:
            return 0.0
        grid = np.union1d(self.breaks, other.breaks)
        grid = grid[(grid >= lo) & (grid <= hi)]
        total = 0.0
        for left, right in zip(grid[:-1], grid[1:]):
            i = np.searchsorted(self.breaks, left, side="right") - 1
            jj = np.searchsorted(other.breaks, left, side="right") - 1
            if not (0 <= i < len(self.coefs) and 0 <= jj < len(other.coefs)):
                continue
            a = _shift_basis_matrix(self.degree, left - self.breaks[i]) @ self.coefs[i]
            b = _shift_basis_matrix(other.degree, left - other.breaks[jj]) @ other.coefs[jj]
            prod = np.convolve(a, b)
            powers = np.arange(1, prod.size + 1)
            total += float(np.sum(prod * (right - left) ** powers / powers))
        return total


@dataclass(frozen=True)
class CoefficientSequence:
    """Finite symmetric-window coefficient table indexed by ``n in [-W, W]``.

    ``kind`` records provenance: ``"dual"`` for biorthogonal wavelet
    expansion coefficients, ``"cardinal"`` for cardinal-spline interpolation
    coefficients.  ``meta`` carries the solve diagnostics (condition number,
    residual).
    """

    values: np.ndarray
    window: int
    kind: str
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (2 * self.window + 1,):
            raise ValueError("values must have length 2 * window + 1")
        object.__setattr__(self, "values", vals)

    def __getitem__(self, n: int) -> float:
        if abs(n) > self.window:
            return 0.0
        return float(self.values[n + self.window])

    def items(self, tol: float = 0.0):
        """Yield ``(n, value)`` pairs with ``|value| > tol``."""
        for i, v in enumerate(self.values):
            if abs(v) > tol:
                yield i - self.window, float(v)

    def nonzero_window(self, tol: float) -> int:
        """Smallest W' with ``|values[n]| <= tol`` for all ``|n| > W'``."""
        idx = np.nonzero(np.abs(self.values) > tol)[0]
        if idx.size == 0:
            return 0
        return int(max(abs(idx[0] - self.window), abs(idx[-1] - self.window)))

    def filter_array(self, tol: float = 0.0) -> tuple[np.ndarray, int]:
        """Dense filter values and the offset of index 0, tails below tol cut."""
        w = self.nonzero_window(tol)
        lo = self.window - w
        return self.values[lo : self.window + w + 1].copy(), w


# -- B-splines ------------------------------------------------------------


def bspline(m: int) -> PiecewisePolynomial:
    """Order-``m`` B-spline with integer knots, built by convolution recursion.

    ``N_1`` is the half-open unit indicator; ``N_m = N_{m-1} * N_1`` has
    support ``[0, m]`` and degree ``m - 1``.
    """
    if m < 1:
        raise ValueError("B-spline order must be >= 1")
    f = PiecewisePolynomial.indicator(0.0, 1.0)
    for _ in range(m - 1):
        f = (f - f.shift(1.0)).antiderivative()
    return f


def bspline_derivative(m: int, r: int, x) -> float:
    """r-th derivative of ``N_m`` at ``x`` via the difference recursion.

    Uses ``N_m' = N_{m-1} - N_{m-1}(. - 1)`` applied ``r`` times, which keeps
    the result an exact piecewise polynomial.  Requires ``r <= m - 1``.
    """
    if r < 0:
        raise ValueError("derivative order must be >= 0")
    if r >= m:
        raise ValueError(f"derivative order {r} not representable for N_{m} (need r <= {m - 1})")
    base = bspline(m - r)
    combo = PiecewisePolynomial([0.0, 1.0], [[0.0]])
    for i in range(r + 1):
        combo = combo + ((-1.0) ** i * binom(r, i)) * base.shift(float(i))
    return combo(x)


def chui_wang(m: int) -> PiecewisePolynomial:
    """Compactly supported semi-orthogonal spline wavelet of order ``m``.

    psi_m(x) = 2^(1-m) * sum_{l=0}^{2m-2} (-1)^l N_2m(l+1) N_2m^(m)(2x - l),
    supported on ``[0, 2m-1]`` with ``m`` vanishing moments.
    """
    if m < 1:
        raise ValueError("wavelet order must be >= 1")
    n2m = bspline(2 * m)
    dm = n2m.derivative(m)
    acc = PiecewisePolynomial([0.0, 1.0], [[0.0]])
    for l in range(2 * m - 1):
        w = (-1.0) ** l * n2m(float(l + 1))
        if w == 0.0:
            continue
        acc = acc + w * dm.shift(float(l)).dilate(2.0)
    return (2.0 ** (1 - m)) * acc


def lift_kernel(m: int) -> PiecewisePolynomial:
    """Order-``2m`` lifted wavelet kernel: the m-fold antiderivative of psi_m.

    Integration constants are fixed so the result vanishes left of its
    support; the vanishing moments of psi_m make it vanish on the right as
    well, giving support ``[0, 2m-1]`` and smoothness ``C^{2m-2}``.
    """
    if m < 2:
        raise ValueError("lifted kernel needs order >= 2 (order 1 is the hat system)")
    return chui_wang(m).antiderivative(order=m)


def inner_product(f: PiecewisePolynomial, g: PiecewisePolynomial) -> float:
    """Exact integral of ``f * g`` over the line."""
    return f.inner(g)


# -- coefficient solves ----------------------------------------------------


def _toeplitz_solve(band: np.ndarray, band_offset: int, window: int, label: str,
                    cond_limit: float = 1e12) -> tuple[np.ndarray, float]:
    """Solve the symmetric banded Toeplitz system ``T c = e_0`` on [-W, W].

    ``band[i]`` holds the diagonal value at offset ``i - band_offset``.
    Returns the solution (length ``2W + 1``) and the condition estimate.
    """
    size = 2 * window + 1
    mat = np.zeros((size, size))
    for off in range(-band_offset, band_offset + 1):
        val = band[off + band_offset]
        if val != 0.0:
            mat += val * np.eye(size, k=off)
    cond = float(np.linalg.cond(mat))
    if not np.isfinite(cond) or cond > cond_limit:
        raise NumericalGuardError(
            f"{label} system is ill conditioned (cond ~ {cond:.3e}, limit {cond_limit:.1e})"
        )
    rhs = np.zeros(size)
    rhs[window] = 1.0
    sol = np.linalg.solve(mat, rhs)
    return sol, cond


def dual_coefficients(m: int, window: int = 40, tol: float = 1e-8) -> CoefficientSequence:
    """Expansion coefficients of the dual wavelet over integer shifts of psi_m.

    Solves the truncated biorthogonality system
    ``sum_n a_n <psi_m(.-n), psi_m(.-k)> = delta_{k,0}`` for ``|k| <= window``
    and checks the residual against ``tol``.  The coefficients decay
    exponentially, so moderate windows already push truncation error far
    below double precision.
    """
    if m < 1:
        raise ValueError("order must be >= 1")
    psi = chui_wang(m)
    half = 2 * m - 2
    gram = np.array([psi.inner(psi.shift(float(i))) for i in range(-half, half + 1)])
    sol, cond = _toeplitz_solve(gram, half, window, f"dual wavelet Gram (m={m})")
    # Residual of the solved rows (interior rows are the meaningful ones).
    resid = 0.0
    for k in range(-window, window + 1):
        acc = sum(sol[n + window] * gram[k - n + half] for n in range(max(-window, k - half), min(window, k + half) + 1))
        resid = max(resid, abs(acc - (1.0 if k == 0 else 0.0)))
    if resid > tol:
        raise NumericalGuardError(
            f"dual coefficient residual {resid:.3e} exceeds tol {tol:.1e}; increase the window"
        )
    return CoefficientSequence(sol, window, "dual", {"cond": cond, "residual": resid, "m": m})


def cardinal_coefficients(order: int, window: int = 40) -> CoefficientSequence:
    """Interpolation coefficients of the cardinal spline of a given order.

    Solves ``sum_n c_n N_order(j + order/2 - n) = delta_{j,0}`` truncated to
    ``|j|, |n| <= window``.  With these, ``L(x) = sum_n c_n N(x + order/2 - n)``
    interpolates the Kronecker delta on the integers.
    """
    if order < 2:
        raise ValueError("cardinal spline order must be >= 2")
    n = bspline(order)
    center = order / 2.0
    half = (order - 1) // 2 if order % 2 == 0 else order // 2
    band = np.array([n(center + i) for i in range(-half, half + 1)])
    sol, cond = _toeplitz_solve(band, half, window, f"cardinal interpolation (order={order})")
    return CoefficientSequence(sol, window, "cardinal", {"cond": cond, "order": order})
