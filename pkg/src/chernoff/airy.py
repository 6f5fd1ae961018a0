"""Airy function evaluation in double precision with tracked error bounds.

Three regimes cover the plane: the Maclaurin series near the origin, the
large-|z| asymptotic expansion in the sector |arg z| <= 2*pi/3, and the
rotation identity

    Ai(z) = -e^{-2*pi*i/3} Ai(z e^{-2*pi*i/3}) - e^{+2*pi*i/3} Ai(z e^{+2*pi*i/3})

for the sector around the negative real axis.  In an overlap band both
candidates are computed and the one with the smaller tracked bound wins.
Every evaluation carries an absolute error bound accumulated from series
tails, first omitted asymptotic terms, and rounding of the tracked
magnitude sums -- nothing is assumed accurate by fiat.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import AccuracyUnreachable, OverflowDomain

# Ai(0) = 3^{-2/3}/Gamma(2/3), Ai'(0) = -3^{-1/3}/Gamma(1/3)
_AI0 = 0.35502805388781723926006318600418317639797917419918
_AIP0 = -0.25881940379280679840518356018920396347909113835493
_SQRT3 = math.sqrt(3.0)
_SQRT_PI = math.sqrt(math.pi)
_TWO_THIRDS = 2.0 / 3.0
_EPS = 2.220446049250313e-16

_ROT_P = cmath.exp(2j * cmath.pi / 3.0)
_ROT_M = cmath.exp(-2j * cmath.pi / 3.0)

_SERIES_ONLY_RADIUS = 4.5   # below: series alone suffices
_SERIES_MAX_RADIUS = 9.0    # above: asymptotics alone; in between: take the better
_SECTOR = 2.0 * math.pi / 3.0

_DEFAULT_TARGET = 1e-12


@dataclass(frozen=True)
class AiryEval:
    """One Ai evaluation: value, derivative, and a certified absolute bound."""

    ai: complex
    ai_prime: complex
    abs_error_bound: float


def _series_sums(z: complex):
    """Maclaurin partial sums of f, g, f', g' with tail + rounding bounds.

    Ai = Ai(0) f + Ai'(0) g and Bi = sqrt(3) (Ai(0) f - Ai'(0) g) where
    f = sum z^{3n} prod 1/((3k)(3k-1)) and g = sum z^{3n+1} prod 1/((3k+1)(3k)).
    Compensated summation keeps the rounding term proportional to the
    magnitude sums, which is what the bounds track.
    """
    z2 = z * z
    z3 = z2 * z
    az3 = abs(z3)

    tf = 1.0 + 0.0j
    tg = z
    tfp = 0.5 * z2        # first nonzero f' term (n = 1)
    tgp = 1.0 + 0.0j

    sf, cf = tf, 0.0j
    sg, cg = tg, 0.0j
    sfp, cfp = 0.0j, 0.0j
    sgp, cgp = tgp, 0.0j
    af, ag, afp, agp = 1.0, abs(z), 0.0, 1.0

    n = 0
    while n < 400:
        n += 1
        tf = tf * z3 / ((3 * n) * (3 * n - 1))
        tg = tg * z3 / ((3 * n + 1) * (3 * n))
        if n >= 2:
            tfp = tfp * z3 / ((3 * n - 1) * (3 * n - 3))
        tgp = tgp * z3 / ((3 * n) * (3 * n - 2))

        y = tf - cf
        t = sf + y
        cf = (t - sf) - y
        sf = t
        y = tg - cg
        t = sg + y
        cg = (t - sg) - y
        sg = t
        y = tfp - cfp
        t = sfp + y
        cfp = (t - sfp) - y
        sfp = t
        y = tgp - cgp
        t = sgp + y
        cgp = (t - sgp) - y
        sgp = t

        af += abs(tf)
        ag += abs(tg)
        afp += abs(tfp)
        agp += abs(tgp)

        ratio = az3 / ((3 * n + 3) * (3 * n + 2))
        if ratio < 0.5:
            biggest = max(abs(tf), abs(tg), abs(tfp), abs(tgp))
            scale = max(af, ag, afp, agp)
            if biggest < 1e-17 * scale:
                break

    # geometric tail bound: next term <= |t| * ratio / (1 - ratio), ratio < 1/2
    tail = 2.0 * max(abs(tf), abs(tg), abs(tfp), abs(tgp))
    ef = tail + 4.0 * _EPS * af
    eg = tail + 4.0 * _EPS * ag
    efp = tail + 4.0 * _EPS * afp
    egp = tail + 4.0 * _EPS * agp
    return sf, sg, sfp, sgp, ef, eg, efp, egp


def _series_pair(z: complex):
    sf, sg, sfp, sgp, ef, eg, efp, egp = _series_sums(z)
    ai = _AI0 * sf + _AIP0 * sg
    aip = _AI0 * sfp + _AIP0 * sgp
    e_ai = _AI0 * ef + abs(_AIP0) * eg + 2.0 * _EPS * abs(ai)
    e_aip = _AI0 * efp + abs(_AIP0) * egp + 2.0 * _EPS * abs(aip)
    return ai, aip, e_ai, e_aip


def _asym_pair(z: complex):
    """Poincare expansion of Ai, Ai' for |arg z| <= 2*pi/3, |z| >= 4.5.

    Sums u_k (-zeta)^{-k} and v_k (-zeta)^{-k} to optimal truncation; the
    bound charges three times the first omitted term (the sector constant)
    plus rounding over the magnitude sums and the exp/prefactor evaluation.
    """
    w = cmath.sqrt(z)
    q = cmath.sqrt(w)                 # z^{1/4}, principal branch
    zeta = _TWO_THIRDS * z * w
    if -zeta.real > 705.0:
        raise OverflowDomain(f"Ai({z!r}) overflows double precision")

    minus_inv = -1.0 / zeta
    su = 1.0 + 0.0j
    sv = 1.0 + 0.0j
    asum_u = 1.0
    asum_v = 1.0
    u = 1.0
    powk = 1.0 + 0.0j
    prev = math.inf
    trunc = 0.0
    k = 0
    while k < 60:
        k += 1
        u = u * ((6 * k - 5) * (6 * k - 3) * (6 * k - 1)) / (216.0 * k * (2 * k - 1))
        v = u * (6 * k + 1) / (1.0 - 6 * k)
        powk = powk * minus_inv
        tu = u * powk
        tv = v * powk
        atu = abs(tu)
        if atu >= prev:
            trunc = atu           # first omitted term, divergence onset
            break
        su += tu
        sv += tv
        asum_u += atu
        asum_v += abs(tv)
        if atu < 1e-18 * abs(su):
            trunc = atu
            break
        prev = atu
    else:
        trunc = prev

    pref = cmath.exp(-zeta) / (2.0 * _SQRT_PI * q)
    ai = pref * su
    aip = -cmath.exp(-zeta) * q / (2.0 * _SQRT_PI) * sv

    apref = abs(pref)
    round_scale = (2.0 * abs(zeta) + 10.0) * _EPS
    e_ai = apref * (3.0 * trunc + 6.0 * _EPS * asum_u) + round_scale * abs(ai)
    apref_p = abs(q) * abs(cmath.exp(-zeta)) / (2.0 * _SQRT_PI)
    e_aip = apref_p * (3.0 * trunc + 6.0 * _EPS * asum_v) + round_scale * abs(aip)
    return ai, aip, e_ai, e_aip


def _conn_pair(z: complex):
    """Rotation identity for |arg z| > 2*pi/3; both rotated points land in
    the asymptotic sector with nonnegative Re zeta, so nothing overflows."""
    am, amp, eam, eamp = _asym_pair(z * _ROT_M)
    ap, app, eap, eapp = _asym_pair(z * _ROT_P)
    ai = -(_ROT_M * am + _ROT_P * ap)
    aip = -(_ROT_P * amp + _ROT_M * app)
    e_ai = 1.5 * (eam + eap) + 4.0 * _EPS * (abs(am) + abs(ap))
    e_aip = 1.5 * (eamp + eapp) + 4.0 * _EPS * (abs(amp) + abs(app))
    return ai, aip, e_ai, e_aip


def _ai_pair(z: complex):
    """Best-effort (Ai, Ai', bound): no target, never raises below overflow."""
    z = complex(z)
    r = abs(z)
    best = None
    if r <= _SERIES_MAX_RADIUS:
        ai, aip, ea, eap = _series_pair(z)
        best = (ai, aip, max(ea, eap))
    if r > _SERIES_ONLY_RADIUS:
        try:
            # math.atan2, not cmath.phase: the latter raises OverflowError on
            # subnormal angles with this libm
            if abs(math.atan2(z.imag, z.real)) <= _SECTOR + 1e-14:
                ai, aip, ea, eap = _asym_pair(z)
            else:
                ai, aip, ea, eap = _conn_pair(z)
            cand = (ai, aip, max(ea, eap))
            if best is None or cand[2] < best[2]:
                best = cand
        except OverflowDomain:
            if best is None:
                raise
    ai, aip, bound = best
    if z.imag == 0.0:
        # arithmetic dust from rotated branches; the value is real
        bound += abs(ai.imag) + abs(aip.imag)
        ai = complex(ai.real, 0.0)
        aip = complex(aip.real, 0.0)
    return ai, aip, bound


def airy_ai(z, target_abs_err: float = _DEFAULT_TARGET) -> AiryEval:
    """Evaluate Ai(z) and Ai'(z) with a certified absolute error bound.

    Raises AccuracyUnreachable if the tracked bound exceeds `target_abs_err`
    (e.g. huge |Ai| on the imaginary axis cannot meet a small absolute
    target in doubles) and OverflowDomain if the value itself overflows.
    On the real axis the returned imaginary parts are exactly zero.
    """
    if not (isinstance(target_abs_err, (int, float)) and math.isfinite(target_abs_err)
            and target_abs_err > 0.0):
        raise ValueError("target_abs_err must be a positive finite real")
    zc = complex(z)
    if not (math.isfinite(zc.real) and math.isfinite(zc.imag)):
        raise ValueError("z must be finite")
    ai, aip, bound = _ai_pair(zc)
    if bound > target_abs_err:
        raise AccuracyUnreachable(
            f"Ai({zc}): tracked bound {bound:.3e} exceeds target {target_abs_err:.3e}")
    return AiryEval(ai=ai, ai_prime=aip, abs_error_bound=bound)


def _bi_series(x: float):
    sf, sg, sfp, sgp, ef, eg, efp, egp = _series_sums(complex(x))
    bi = _SQRT3 * (_AI0 * sf.real - _AIP0 * sg.real)
    bip = _SQRT3 * (_AI0 * sfp.real - _AIP0 * sgp.real)
    e_bi = _SQRT3 * (_AI0 * ef + abs(_AIP0) * eg) + 2.0 * _EPS * abs(bi)
    e_bip = _SQRT3 * (_AI0 * efp + abs(_AIP0) * egp) + 2.0 * _EPS * abs(bip)
    return bi, bip, e_bi, e_bip


def _bi_asym_pos(x: float):
    # Bi(x) ~ e^{zeta}/(sqrt(pi) x^{1/4}) * sum u_k zeta^{-k}, x real > 0
    zeta = _TWO_THIRDS * x * math.sqrt(x)
    if zeta > 705.0:
        raise OverflowDomain(f"Bi({x}) overflows double precision")
    inv = 1.0 / zeta
    s = 1.0
    asum = 1.0
    u = 1.0
    powk = 1.0
    prev = math.inf
    trunc = 0.0
    k = 0
    while k < 60:
        k += 1
        u = u * ((6 * k - 5) * (6 * k - 3) * (6 * k - 1)) / (216.0 * k * (2 * k - 1))
        powk *= inv
        t = u * powk
        at = abs(t)
        if at >= prev:
            trunc = at
            break
        s += t
        asum += at
        if at < 1e-18 * abs(s):
            trunc = at
            break
        prev = at
    else:
        trunc = prev
    pref = math.exp(zeta) / (_SQRT_PI * x ** 0.25)
    bi = pref * s
    e = pref * (3.0 * trunc + 6.0 * _EPS * asum) + (2.0 * zeta + 10.0) * _EPS * abs(bi)
    return bi, e


def _bi_conn_neg(x: float):
    # Bi(z) = e^{i pi/6} Ai(z e^{2 pi i/3}) + e^{-i pi/6} Ai(z e^{-2 pi i/3})
    z = complex(x)
    ap, _, eap, _ = _asym_pair(z * _ROT_P)
    am, _, eam, _ = _asym_pair(z * _ROT_M)
    val = cmath.exp(1j * math.pi / 6.0) * ap + cmath.exp(-1j * math.pi / 6.0) * am
    e = 1.5 * (eap + eam) + 4.0 * _EPS * (abs(ap) + abs(am)) + abs(val.imag)
    return val.real, e


def airy_bi(x: float, target_abs_err: float = _DEFAULT_TARGET) -> float:
    """Bi on the real axis with the same error-bound discipline as airy_ai."""
    if not (isinstance(target_abs_err, (int, float)) and math.isfinite(target_abs_err)
            and target_abs_err > 0.0):
        raise ValueError("target_abs_err must be a positive finite real")
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("x must be finite")
    r = abs(x)
    best = None
    if r <= _SERIES_MAX_RADIUS:
        bi, _, e, _ = _bi_series(x)
        best = (bi, e)
    if r > _SERIES_ONLY_RADIUS:
        try:
            cand = _bi_asym_pos(x) if x > 0 else _bi_conn_neg(x)
            if best is None or cand[1] < best[1]:
                best = cand
        except OverflowDomain:
            if best is None:
                raise
    bi, bound = best
    if bound > target_abs_err:
        raise AccuracyUnreachable(
            f"Bi({x}): tracked bound {bound:.3e} exceeds target {target_abs_err:.3e}")
    return bi


def _bi_pair(x: float):
    """(Bi, Bi', bound) on the real axis; derivative only where the series
    holds, which covers the Wronskian window used by the checks."""
    if abs(x) > _SERIES_MAX_RADIUS:
        raise ValueError("_bi_pair is series-based; |x| <= 9 required")
    bi, bip, e_bi, e_bip = _bi_series(x)
    return bi, bip, max(e_bi, e_bip)


_ZERO_MAX_N = 100


def airy_zero(n: int) -> float:
    """The n-th negative zero a_n of Ai, n = 1..100 (a_1 = -2.33810741...)."""
    if isinstance(n, bool) or not isinstance(n, int):
        raise ValueError("n must be an integer")
    if not 1 <= n <= _ZERO_MAX_N:
        raise ValueError(f"n must be in [1, {_ZERO_MAX_N}]")
    return _airy_zero_cached(n)


@lru_cache(maxsize=None)
def _airy_zero_cached(n: int) -> float:
    t = 3.0 * math.pi * (4 * n - 1) / 8.0
    t2 = t * t
    guess = -(t ** _TWO_THIRDS) * (
        1.0 + 5.0 / 48.0 / t2 - 5.0 / 36.0 / (t2 * t2)
        + 77125.0 / 82944.0 / (t2 * t2 * t2))

    def f(x: float) -> float:
        return _ai_pair(complex(x))[0].real

    spacing = math.pi / math.sqrt(-guess)
    half = 0.3 * spacing
    lo, hi = guess - half, guess + half
    flo, fhi = f(lo), f(hi)
    expand = 0
    while flo * fhi > 0.0 and expand < 6:
        half *= 2.0
        lo, hi = guess - half, guess + half
        flo, fhi = f(lo), f(hi)
        expand += 1
    if flo * fhi > 0.0:
        raise AccuracyUnreachable(f"could not bracket Airy zero #{n}")

    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if hi - lo < 4.0 * _EPS * abs(mid):
            break
        fm = f(mid)
        if fm == 0.0:
            lo = hi = mid
            break
        if flo * fm < 0.0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm

    x = 0.5 * (lo + hi)
    for _ in range(2):            # Newton polish: quadratic near a simple zero
        ai, aip, _ = _ai_pair(complex(x))
        if aip.real != 0.0:
            x -= ai.real / aip.real
    return x
