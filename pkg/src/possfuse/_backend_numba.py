"""Numba-compiled twins of the kernels in ``_backend_numpy``.

Importing this module requires numba. Each public function matches the
NumPy backend's signature and semantics; parity is enforced by the kernel
test suite. fastmath stays disabled so results are IEEE-reproducible.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .errors import NumericsError

# Cody (1969) rational approximation constants, netlib SPECFUN CALERF set.
# See _backend_numpy for the citation.
_ERF_A = np.array([3.16112374387056560e0, 1.13864154151050156e2,
                   3.77485237685302021e2, 3.20937758913846947e3])
_ERF_A4 = 1.85777706184603153e-1
_ERF_B = np.array([2.36012909523441209e1, 2.44024637934444173e2,
                   1.28261652607737228e3, 2.84423683343917062e3])
_ERF_C = np.array([5.64188496988670089e-1, 8.88314979438837594e0,
                   6.61191906371416295e1, 2.98635138197400131e2,
                   8.81952221241769090e2, 1.71204761263407058e3,
                   2.05107837782607147e3, 1.23033935479799725e3])
_ERF_C8 = 2.15311535474403846e-8
_ERF_D = np.array([1.57449261107098347e1, 1.17693950891312499e2,
                   5.37181101862009858e2, 1.62138957456669019e3,
                   3.29079923573345963e3, 4.36261909014324716e3,
                   3.43936767414372164e3, 1.23033935480374942e3])
_ERF_P = np.array([3.05326634961232344e-1, 3.60344899949804439e-1,
                   1.25781726111229246e-1, 1.60837851487422766e-2,
                   6.58749161529837803e-4])
_ERF_P5 = 1.63153871373020978e-2
_ERF_Q = np.array([2.56852019228982242e0, 1.87295284992346047e0,
                   5.27905102951428412e-1, 6.05183413124413191e-2,
                   2.33520497626869185e-3])
_INV_SQRT_PI = 5.6418958354775628695e-1
_SQRT2 = np.sqrt(2.0)

_EXP_SAFE = 700.0
_ROOT_TOL = 1e-10
_MAX_BRACKET_DOUBLINGS = 64


@njit(cache=True)
def _erf_scalar(x):
    y = abs(x)
    if y <= 0.46875:
        z = y * y
        xnum = _ERF_A4 * z
        xden = z
        for i in range(3):
            xnum = (xnum + _ERF_A[i]) * z
            xden = (xden + _ERF_B[i]) * z
        return x * (xnum + _ERF_A[3]) / (xden + _ERF_B[3])
    if y <= 4.0:
        xnum = _ERF_C8 * y
        xden = y
        for i in range(7):
            xnum = (xnum + _ERF_C[i]) * y
            xden = (xden + _ERF_D[i]) * y
        erfc = (xnum + _ERF_C[7]) / (xden + _ERF_D[7])
        ysq = np.floor(y * 16.0) / 16.0
        delta = (y - ysq) * (y + ysq)
        erfc = np.exp(-ysq * ysq) * np.exp(-delta) * erfc
    else:
        if y >= 26.543:
            erfc = 0.0
        else:
            z = 1.0 / (y * y)
            xnum = _ERF_P5 * z
            xden = z
            for i in range(4):
                xnum = (xnum + _ERF_P[i]) * z
                xden = (xden + _ERF_Q[i]) * z
            r = z * (xnum + _ERF_P[4]) / (xden + _ERF_Q[4])
            r = (_INV_SQRT_PI - r) / y
            ysq = np.floor(y * 16.0) / 16.0
            delta = (y - ysq) * (y + ysq)
            erfc = np.exp(-ysq * ysq) * np.exp(-delta) * r
    res = 1.0 - erfc
    if x < 0.0:
        return -res
    return res


@njit(cache=True)
def erf_vec(x):
    out = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        out[i] = _erf_scalar(x[i])
    return out


@njit(cache=True)
def normal_cdf_vec(x):
    out = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        out[i] = 0.5 * (1.0 + _erf_scalar(x[i] / _SQRT2))
    return out


@njit(cache=True)
def _ih_signed_coeffs(K, pdf):
    # binomials built by recurrence; exact in float64 up to K = 60 within
    # the accuracy the alternating sum itself can deliver
    coef = np.empty(K + 1)
    binom = 1.0
    fact = 1.0
    top = K - 1 if pdf else K
    for m in range(2, top + 1):
        fact *= m
    for j in range(K + 1):
        coef[j] = binom / fact if j % 2 == 0 else -binom / fact
        binom = binom * (K - j) / (j + 1)
    return coef


@njit(cache=True)
def irwin_hall_cdf_vec(x, K):
    coef = _ih_signed_coeffs(K, False)
    out = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        xi = x[i]
        if xi <= 0.0:
            out[i] = 0.0
            continue
        if xi >= K:
            out[i] = 1.0
            continue
        s = 0.0
        comp = 0.0
        for j in range(int(xi) + 1):
            term = coef[j] * (xi - j) ** K
            t = s + term
            if abs(s) >= abs(term):
                comp += (s - t) + term
            else:
                comp += (term - t) + s
            s = t
        r = s + comp
        if r < 0.0:
            r = 0.0
        elif r > 1.0:
            r = 1.0
        out[i] = r
    return out


@njit(cache=True)
def irwin_hall_pdf_vec(x, K):
    coef = _ih_signed_coeffs(K, True)
    out = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        xi = x[i]
        if xi < 0.0 or xi > K:
            out[i] = 0.0
            continue
        s = 0.0
        comp = 0.0
        for j in range(min(int(xi), K) + 1):
            term = coef[j] * (xi - j) ** (K - 1)
            t = s + term
            if abs(s) >= abs(term):
                comp += (s - t) + term
            else:
                comp += (term - t) + s
            s = t
        r = s + comp
        out[i] = r if r > 0.0 else 0.0
    return out


@njit(cache=True)
def _gamma_upper_scalar(x, K):
    if x <= 0.0:
        return 1.0
    if x < _EXP_SAFE:
        term = np.exp(-x)
        s = term
        for j in range(1, K):
            term = term * x / j
            s = s + term
    else:
        logx = np.log(x)
        lgam = 0.0
        s = 0.0
        for j in range(K):
            if j > 0:
                lgam += np.log(float(j))
            s += np.exp(-x + j * logx - lgam)
    if s < 0.0:
        return 0.0
    if s > 1.0:
        return 1.0
    return s


@njit(cache=True)
def gamma_upper_vec(x, K):
    out = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        out[i] = _gamma_upper_scalar(x[i], K)
    return out


@njit(cache=True)
def _phi_scalar(w, n):
    return n * np.log(w / n) + n - w


@njit(cache=True)
def _pivot_roots_scalar(logr, nf):
    if logr >= 0.0:
        # r = 1: both roots sit at the mode exactly
        return nf, nf
    floor = 1e-12 * nf

    if _phi_scalar(floor, nf) > logr:
        # mass below the floor is < 1e-30; pin
        wlo = floor
    else:
        a = floor
        b = nf
        while b - a > _ROOT_TOL:
            mid = 0.5 * (a + b)
            if _phi_scalar(mid, nf) < logr:
                a = mid
            else:
                b = mid
        wlo = 0.5 * (a + b)

    offset = 50.0 * np.sqrt(nf)
    hi = nf + offset
    doublings = 0
    while _phi_scalar(hi, nf) > logr:
        offset *= 2.0
        hi = nf + offset
        doublings += 1
        if doublings > _MAX_BRACKET_DOUBLINGS:
            return wlo, -1.0
    a = nf
    b = hi
    while b - a > _ROOT_TOL:
        mid = 0.5 * (a + b)
        if _phi_scalar(mid, nf) > logr:
            a = mid
        else:
            b = mid
    whi = 0.5 * (a + b)
    return wlo, whi


@njit(cache=True)
def _pivot_roots_impl(logr, n):
    nf = float(n)
    wlo = np.empty(logr.shape[0])
    whi = np.empty(logr.shape[0])
    ok = True
    for i in range(logr.shape[0]):
        lo, hi = _pivot_roots_scalar(logr[i], nf)
        wlo[i] = lo
        whi[i] = hi
        if hi < 0.0:
            ok = False
    return wlo, whi, ok


def pivot_roots_vec(logr, n):
    wlo, whi, ok = _pivot_roots_impl(np.ascontiguousarray(logr, dtype=np.float64), n)
    if not ok:
        raise NumericsError(
            "upper pivot root bracket not found below n + 50*sqrt(n)*2^64; "
            "the requested relative likelihood level is out of reach"
        )
    return wlo, whi


@njit(cache=True)
def _pivot_prob_impl(logr, n):
    nf = float(n)
    out = np.empty(logr.shape[0])
    ok = True
    for i in range(logr.shape[0]):
        wlo, whi = _pivot_roots_scalar(logr[i], nf)
        if whi < 0.0:
            ok = False
            out[i] = np.nan
            continue
        p = (1.0 - _gamma_upper_scalar(wlo, n)) + _gamma_upper_scalar(whi, n)
        if p < 0.0:
            p = 0.0
        elif p > 1.0:
            p = 1.0
        out[i] = p
    return out, ok


def pivot_prob_vec(logr, n):
    out, ok = _pivot_prob_impl(np.ascontiguousarray(logr, dtype=np.float64), n)
    if not ok:
        raise NumericsError(
            "upper pivot root bracket not found below n + 50*sqrt(n)*2^64; "
            "the requested relative likelihood level is out of reach"
        )
    return out


@njit(cache=True)
def alpha_cut_measures_vec(grid, values, alphas, interpolate):
    out = np.empty(alphas.shape[0])
    m = grid.shape[0]
    for a in range(alphas.shape[0]):
        alpha = alphas[a]
        total = 0.0
        for i in range(m - 1):
            vl = values[i]
            vr = values[i + 1]
            h = grid[i + 1] - grid[i]
            la = vl > alpha
            ra = vr > alpha
            if la and ra:
                total += h
            elif interpolate and la and not ra:
                total += h * (alpha - vl) / (vr - vl)
            elif interpolate and ra and not la:
                total += h * (vr - alpha) / (vr - vl)
        out[a] = total
    return out
