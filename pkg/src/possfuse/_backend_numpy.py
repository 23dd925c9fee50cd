"""Pure-NumPy implementations of the numeric kernels.

Reference backend: every public function here has a numba-compiled twin in
``_backend_numba`` with an identical signature. Selection happens in
``possfuse._kernels`` via the ``POSSFUSE_BACKEND`` environment variable.

All functions take and return contiguous float64 arrays.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import NumericsError

# ---------------------------------------------------------------------------
# Error function.
#
# Rational approximations from W. J. Cody, "Rational Chebyshev approximation
# for the error function", Math. Comp. 23 (1969), pp. 631-637, with the
# coefficient set tabulated in the netlib SPECFUN routine CALERF.  Maximum
# absolute error is below 1e-16 on the real line, well inside the 1e-12
# contract of chisq1_cdf.
# ---------------------------------------------------------------------------

_ERF_A = (3.16112374387056560e0, 1.13864154151050156e2,
          3.77485237685302021e2, 3.20937758913846947e3)
_ERF_A4 = 1.85777706184603153e-1
_ERF_B = (2.36012909523441209e1, 2.44024637934444173e2,
          1.28261652607737228e3, 2.84423683343917062e3)
_ERF_C = (5.64188496988670089e-1, 8.88314979438837594e0,
          6.61191906371416295e1, 2.98635138197400131e2,
          8.81952221241769090e2, 1.71204761263407058e3,
          2.05107837782607147e3, 1.23033935479799725e3)
_ERF_C8 = 2.15311535474403846e-8
_ERF_D = (1.57449261107098347e1, 1.17693950891312499e2,
          5.37181101862009858e2, 1.62138957456669019e3,
          3.29079923573345963e3, 4.36261909014324716e3,
          3.43936767414372164e3, 1.23033935480374942e3)
_ERF_P = (3.05326634961232344e-1, 3.60344899949804439e-1,
          1.25781726111229246e-1, 1.60837851487422766e-2,
          6.58749161529837803e-4)
_ERF_P5 = 1.63153871373020978e-2
_ERF_Q = (2.56852019228982242e0, 1.87295284992346047e0,
          5.27905102951428412e-1, 6.05183413124413191e-2,
          2.33520497626869185e-3)
_INV_SQRT_PI = 5.6418958354775628695e-1
_SQRT2 = math.sqrt(2.0)


def erf_vec(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    y = np.abs(x)
    out = np.empty_like(y)

    small = y <= 0.46875
    if small.any():
        ys = y[small]
        z = ys * ys
        xnum = _ERF_A4 * z
        xden = z
        for a, b in zip(_ERF_A[:3], _ERF_B[:3]):
            xnum = (xnum + a) * z
            xden = (xden + b) * z
        out[small] = ys * (xnum + _ERF_A[3]) / (xden + _ERF_B[3])

    mid = (y > 0.46875) & (y <= 4.0)
    if mid.any():
        ym = y[mid]
        xnum = _ERF_C8 * ym
        xden = ym
        for c, d in zip(_ERF_C[:7], _ERF_D[:7]):
            xnum = (xnum + c) * ym
            xden = (xden + d) * ym
        erfc = (xnum + _ERF_C[7]) / (xden + _ERF_D[7])
        ysq = np.floor(ym * 16.0) / 16.0
        delta = (ym - ysq) * (ym + ysq)
        erfc = np.exp(-ysq * ysq) * np.exp(-delta) * erfc
        out[mid] = 1.0 - erfc

    big = y > 4.0
    if big.any():
        yb = y[big]
        z = 1.0 / (yb * yb)
        xnum = _ERF_P5 * z
        xden = z
        for p, q in zip(_ERF_P[:4], _ERF_Q[:4]):
            xnum = (xnum + p) * z
            xden = (xden + q) * z
        r = z * (xnum + _ERF_P[4]) / (xden + _ERF_Q[4])
        r = (_INV_SQRT_PI - r) / yb
        ysq = np.floor(yb * 16.0) / 16.0
        delta = (yb - ysq) * (yb + ysq)
        erfc = np.exp(-ysq * ysq) * np.exp(-delta) * r
        erfc = np.where(yb >= 26.543, 0.0, erfc)
        out[big] = 1.0 - erfc

    return np.where(x < 0.0, -out, out)


def normal_cdf_vec(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    return 0.5 * (1.0 + erf_vec(x / _SQRT2))


# ---------------------------------------------------------------------------
# Irwin-Hall distribution (sum of K iid Uniform(0,1)).
#
# Exact alternating sums; terms are accumulated with Neumaier compensation
# because the summands grow combinatorially with K while the result stays in
# [0,1].  The K <= 60 guard lives in the public wrapper.
# ---------------------------------------------------------------------------


def _ih_signed_coeffs(K: int, pdf: bool) -> np.ndarray:
    fact = math.factorial(K - 1 if pdf else K)
    return np.array(
        [((-1) ** j) * math.comb(K, j) / fact for j in range(K + 1)],
        dtype=np.float64,
    )


def irwin_hall_cdf_vec(x: np.ndarray, K: int) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    coef = _ih_signed_coeffs(K, pdf=False)
    xc = np.clip(x, 0.0, float(K))
    s = np.zeros_like(xc)
    comp = np.zeros_like(xc)
    for j in range(K + 1):
        term = np.where(xc >= j, coef[j] * (xc - j) ** K, 0.0)
        t = s + term
        comp += np.where(np.abs(s) >= np.abs(term), (s - t) + term, (term - t) + s)
        s = t
    out = np.clip(s + comp, 0.0, 1.0)
    out = np.where(x <= 0.0, 0.0, out)
    return np.where(x >= K, 1.0, out)


def irwin_hall_pdf_vec(x: np.ndarray, K: int) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    coef = _ih_signed_coeffs(K, pdf=True)
    s = np.zeros_like(x)
    comp = np.zeros_like(x)
    for j in range(K + 1):
        term = np.where(x >= j, coef[j] * (x - j) ** (K - 1), 0.0)
        t = s + term
        comp += np.where(np.abs(s) >= np.abs(term), (s - t) + term, (term - t) + s)
        s = t
    out = np.maximum(s + comp, 0.0)
    inside = (x >= 0.0) & (x <= K)
    return np.where(inside, out, 0.0)


# ---------------------------------------------------------------------------
# Upper tail of Gamma(K, 1) for integer K: the finite Poisson sum
# Q(K, x) = exp(-x) * sum_{j<K} x^j / j!.  For x beyond the exp underflow
# range the terms are assembled in log space instead.
# ---------------------------------------------------------------------------

_EXP_SAFE = 700.0


def gamma_upper_vec(x: np.ndarray, K: int) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    out = np.empty_like(x)

    small = x < _EXP_SAFE
    if small.any():
        xs = x[small]
        term = np.exp(-xs)
        s = term.copy()
        for j in range(1, K):
            term = term * xs / j
            s = s + term
        out[small] = s

    large = ~small
    if large.any():
        xl = x[large]
        logx = np.log(xl)
        s = np.zeros_like(xl)
        for j in range(K):
            s += np.exp(-xl + j * logx - math.lgamma(j + 1))
        out[large] = s

    out = np.clip(out, 0.0, 1.0)
    return np.where(x <= 0.0, 1.0, out)


# ---------------------------------------------------------------------------
# Root pair for the Gamma(n,1) pivot of the exponential relative likelihood.
#
# phi(w) = n*log(w/n) + n - w is the log relative likelihood of the pivot;
# it increases on (0, n], peaks at phi(n) = 0 and decreases on [n, inf).
# Given logr <= 0, the two roots of phi(w) = logr are bracketed by
# [1e-12*n, n] and [n, n + 50*sqrt(n)]; the upper offset is doubled while it
# fails to bracket (rare, extreme inputs) and gives up after 64 doublings.
# Mass below the lower floor is < 1e-30 and is pinned at the floor.
# ---------------------------------------------------------------------------

_ROOT_TOL = 1e-10
_MAX_BRACKET_DOUBLINGS = 64


def _phi(w, n: float):
    return n * np.log(w / n) + n - w


def pivot_roots_vec(logr: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    logr = np.minimum(np.asarray(logr, dtype=np.float64), 0.0)
    nf = float(n)
    floor = 1e-12 * nf
    at_peak = logr >= 0.0  # r = 1: both roots sit at the mode exactly

    a = np.full_like(logr, floor)
    b = np.full_like(logr, nf)
    pinned = _phi(floor, nf) > logr
    guard = 0
    while float(np.max(b - a)) > _ROOT_TOL:
        mid = 0.5 * (a + b)
        lt = _phi(mid, nf) < logr
        a = np.where(lt, mid, a)
        b = np.where(lt, b, mid)
        guard += 1
        if guard > 200:
            raise NumericsError("lower pivot root bisection failed to converge")
    wlo = np.where(pinned, floor, 0.5 * (a + b))

    offset = 50.0 * math.sqrt(nf)
    hi = np.full_like(logr, nf + offset)
    for _ in range(_MAX_BRACKET_DOUBLINGS):
        unbracketed = _phi(hi, nf) > logr
        if not unbracketed.any():
            break
        offset *= 2.0
        hi = np.where(unbracketed, nf + offset, hi)
    else:
        raise NumericsError(
            "upper pivot root bracket not found below n + 50*sqrt(n)*2^64; "
            "the requested relative likelihood level is out of reach"
        )

    a = np.full_like(logr, nf)
    b = hi
    guard = 0
    while float(np.max(b - a)) > _ROOT_TOL:
        mid = 0.5 * (a + b)
        gt = _phi(mid, nf) > logr
        a = np.where(gt, mid, a)
        b = np.where(gt, b, mid)
        guard += 1
        if guard > 200:
            raise NumericsError("upper pivot root bisection failed to converge")
    whi = 0.5 * (a + b)
    wlo = np.where(at_peak, nf, wlo)
    whi = np.where(at_peak, nf, whi)
    return wlo, whi


def pivot_prob_vec(logr: np.ndarray, n: int) -> np.ndarray:
    """Two-sided pivot probability P{phi(W) <= logr} for W ~ Gamma(n, 1)."""
    logr = np.minimum(np.asarray(logr, dtype=np.float64), 0.0)
    wlo, whi = pivot_roots_vec(logr, n)
    lower_mass = 1.0 - gamma_upper_vec(wlo, n)
    upper_mass = gamma_upper_vec(whi, n)
    out = np.clip(lower_mass + upper_mass, 0.0, 1.0)
    return np.where(logr >= 0.0, 1.0, out)


# ---------------------------------------------------------------------------
# Alpha-cut measures: total length of {theta: contour(theta) > alpha} on a
# grid, cell by cell, with optional linear-interpolation refinement of the
# crossing points.
# ---------------------------------------------------------------------------


def alpha_cut_measures_vec(
    grid: np.ndarray, values: np.ndarray, alphas: np.ndarray, interpolate: bool
) -> np.ndarray:
    grid = np.asarray(grid, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    alphas = np.asarray(alphas, dtype=np.float64)

    h = np.diff(grid)
    vl = values[:-1]
    vr = values[1:]
    dv = vr - vl
    dv_safe = np.where(dv == 0.0, 1.0, dv)

    out = np.empty_like(alphas)
    for i, alpha in enumerate(alphas):
        la = vl > alpha
        ra = vr > alpha
        full = np.sum(h[la & ra])
        if interpolate:
            left_only = la & ~ra
            right_only = ~la & ra
            lo_len = np.sum(np.where(left_only, h * (alpha - vl) / dv_safe, 0.0))
            ro_len = np.sum(np.where(right_only, h * (vr - alpha) / dv_safe, 0.0))
            out[i] = full + lo_len + ro_len
        else:
            out[i] = full
    return out
