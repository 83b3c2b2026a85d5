"""Certified interval enclosures for ln, exp and integer roots.

Everything downstream that must compare a rational number against a
transcendental quantity (the e^{±eps} accuracy windows, mostly) goes
through this module.  The enclosures are plain pairs (lo, hi) of exact
rationals with lo <= f(x) <= hi; refining doubles the working precision
until the question at hand is decided.  Termination of the predicates
rests on the classical fact that e^t is irrational for rational t != 0,
so a rational can never sit exactly on the boundary.

No floating point is used anywhere except in log2_approx, which is an
explicitly non-certified helper for picking trial exponents (its result
is always verified by exact arithmetic at the call site).
"""

from __future__ import annotations

import math
from functools import lru_cache

from .rationals import Rat, rat

try:
    from gmpy2 import iroot as _g_iroot, isqrt as _g_isqrt, mpz as _mpz

    def _isqrt(n):
        return int(_g_isqrt(_mpz(n)))

    def _iroot(n, k):
        r, exact = _g_iroot(_mpz(n), k)
        return int(r), bool(exact)
except ImportError:  # pragma: no cover
    def _isqrt(n):
        return math.isqrt(n)

    def _iroot(n, k):
        if n == 0:
            return 0, True
        r = int(round(n ** (1.0 / k)))
        while r ** k > n:
            r -= 1
        while (r + 1) ** k <= n:
            r += 1
        return r, r ** k == n


def _num_den(q):
    q = rat(q)
    return int(q.numerator), int(q.denominator)


def log2_approx(q) -> float:
    """Rough float log2 of a positive rational of any size.  Not certified."""
    num, den = _num_den(q)
    if num <= 0:
        raise ValueError("log2_approx needs a positive argument")
    shift = num.bit_length() - den.bit_length()
    if shift > 0:
        den <<= shift
    else:
        num <<= -shift
    # now num/den in [1/2, 2); take 64-bit heads for the mantissa part
    top = max(num.bit_length() - 64, 0)
    return shift + math.log2((num >> top) / (den >> top))


def log_approx(q) -> float:
    """Rough float natural log of a positive rational.  Not certified."""
    return log2_approx(q) * math.log(2.0)


def _round_rel(q, w: int):
    """Dyadic lo <= q <= hi with relative gap below 2**(1-w), q > 0."""
    num, den = _num_den(q)
    s = num.bit_length() - den.bit_length() - w
    if s >= 0:
        m = num // (den << s)
    else:
        m = (num << -s) // den
    lo = Rat(m) * Rat(2) ** s
    if s >= 0:
        exact = (m << s) * den == num
    else:
        exact = m * den == (num << -s)
    if exact:
        return lo, lo
    return lo, Rat(m + 1) * Rat(2) ** s


def _round_out(lo, hi, w: int):
    """Widen an interval outward onto the dyadic grid of step 2**-w."""
    scale = Rat(2) ** w
    nl, dl = _num_den(lo * scale)
    fl = nl // dl
    nh, dh = _num_den(hi * scale)
    fh = -((-nh) // dh)
    return fl / scale, fh / scale


def _round_out_rel(lo, hi, prec: int):
    """Outward rounding keeping ~prec significant bits; needs 0 < lo <= hi."""
    num, den = _num_den(hi)
    e = num.bit_length() - den.bit_length()
    return _round_out(lo, hi, prec - e)


def _atanh_enclosure(t, prec: int):
    """Enclosure of atanh(t) for |t| <= 1/2, via the odd-power series."""
    t = rat(t)
    t2 = t * t
    term = t
    total = Rat(0)
    k = 0
    tol = Rat(1, 1 << (prec + 2))
    while True:
        total += term / (2 * k + 1)
        k += 1
        term *= t2
        tail = abs(term) / ((2 * k + 1) * (1 - t2))
        if tail < tol:
            return total - tail, total + tail


@lru_cache(maxsize=None)
def _ln2_enclosure(prec: int):
    lo, hi = _atanh_enclosure(Rat(1, 3), prec + 2)
    return 2 * lo, 2 * hi


def _ln_reduced(num: int, den: int, prec: int):
    """Enclosure of ln(num/den) for num/den in (2/3, 4/3]."""
    if num == den:
        return Rat(0), Rat(0)
    t = Rat(num - den, num + den)  # |t| <= 1/5 on this range
    lo, hi = _atanh_enclosure(t, prec + 2)
    return 2 * lo, 2 * hi


def _ln_core(num: int, den: int, prec: int):
    # scale into (2/3, 4/3] by powers of two: q = m * 2^e
    e = num.bit_length() - den.bit_length()  # q / 2^e lies in [1/2, 2)
    if e >= 0:
        scaled_den = den << e
    else:
        num, scaled_den = num << -e, den
    if 3 * num > 4 * scaled_den:
        e += 1
        scaled_den <<= 1
    elif 3 * num <= 2 * scaled_den:
        e -= 1
        num <<= 1
    # round the mantissa ratio so the series runs on small numbers
    w = prec + 6
    q_lo, q_hi = _round_rel(Rat(num, scaled_den), w)
    lo1, _ = _ln_reduced(*_num_den(q_lo), prec + 4)
    _, hi1 = _ln_reduced(*_num_den(q_hi), prec + 4)
    if e:
        l2lo, l2hi = _ln2_enclosure(prec + 4 + abs(e).bit_length())
        if e > 0:
            lo1, hi1 = lo1 + e * l2lo, hi1 + e * l2hi
        else:
            lo1, hi1 = lo1 + e * l2hi, hi1 + e * l2lo
    return _round_out(lo1, hi1, prec)


@lru_cache(maxsize=2048)
def _ln_core_cached(num: int, den: int, prec: int):
    return _ln_core(num, den, prec)


def ln_lo_hi(q, prec: int = 64):
    """Exact rationals (lo, hi) with lo <= ln(q) <= hi, width <= 2**(2-prec)."""
    num, den = _num_den(q)
    if num <= 0:
        raise ValueError("ln_lo_hi needs a positive argument")
    if num == den:
        return Rat(0), Rat(0)
    if num.bit_length() + den.bit_length() <= 8192:
        return _ln_core_cached(num, den, prec)
    return _ln_core(num, den, prec)


def _exp_reduced(x, prec: int):
    """Enclosure of exp(x) for |x| <= 1/2, via the Taylor series."""
    x = rat(x)
    term = Rat(1)
    total = Rat(0)
    k = 0
    tol = Rat(1, 1 << (prec + 2))
    while True:
        total += term
        k += 1
        term = term * x / k
        # |remainder| <= |term| / (1 - |x|/(k+1)) <= 2|term| for |x| <= 1/2
        tail = 2 * abs(term)
        if tail < tol:
            return total - tail, total + tail


@lru_cache(maxsize=2048)
def _exp_lo_hi_cached(num: int, den: int, prec: int):
    x = Rat(num, den)
    neg = x < 0
    if neg:
        x = -x
    # argument reduction: exp(x) = exp(x / 2^s) ** (2^s)
    s = 0
    while x > Rat(1, 2):
        x /= 2
        s += 1
    w = prec + 2 * s + 8
    if x.denominator.bit_length() > w + 8:
        nl, dl = _num_den(x * (1 << w))
        x_lo = Rat(nl // dl, 1 << w)
        x_hi = x_lo + Rat(1, 1 << w)
    else:
        x_lo = x_hi = x
    lo, _ = _exp_reduced(x_lo, w)
    _, hi = _exp_reduced(x_hi, w)
    if lo <= 0:
        lo = Rat(1, 1 << w)  # exp is positive; keep the bound usable
    for _ in range(s):
        lo, hi = lo * lo, hi * hi
        lo, hi = _round_out_rel(lo, hi, w)
    if neg:
        lo, hi = 1 / hi, 1 / lo
    return _round_out_rel(lo, hi, prec + 4)


def exp_lo_hi(x, prec: int = 64):
    """Exact rationals (lo, hi) around exp(x), relative width <= 2**(2-prec)."""
    num, den = _num_den(x)
    if num == 0:
        return Rat(1), Rat(1)
    if num.bit_length() + den.bit_length() <= 8192:
        return _exp_lo_hi_cached(num, den, prec)
    return _exp_lo_hi_cached.__wrapped__(num, den, prec)


def sqrt_lo_hi(q, prec: int = 64):
    """(lo, hi) with lo <= sqrt(q) <= hi; exact when q is a perfect square."""
    num, den = _num_den(q)
    if num < 0:
        raise ValueError("sqrt_lo_hi needs a nonnegative argument")
    if num == 0:
        return Rat(0), Rat(0)
    scale = 1 << prec
    s = _isqrt(num * den * scale * scale)
    lo = Rat(s, den * scale)
    if s * s == num * den * scale * scale:
        return lo, lo
    return lo, Rat(s + 1, den * scale)


def root_lo_hi(q, k: int, prec: int = 64):
    """(lo, hi) around the k-th root of q >= 0 (odd k also accepts q < 0)."""
    if k <= 0:
        raise ValueError("root order must be positive")
    num, den = _num_den(q)
    if num < 0:
        if k % 2 == 0:
            raise ValueError("even root of a negative number")
        lo, hi = root_lo_hi(-rat(q), k, prec)
        return -hi, -lo
    if num == 0:
        return Rat(0), Rat(0)
    scale = 1 << prec
    body = num * den ** (k - 1) * scale ** k
    r, exact = _iroot(body, k)
    lo = Rat(r, den * scale)
    if exact:
        return lo, lo
    return lo, Rat(r + 1, den * scale)


_MAX_PRED_PREC = 1 << 16


def ln_sign(q, c=0) -> int:
    """Sign of ln(q) - c for rational q > 0, c.  Exact and total."""
    q, c = rat(q), rat(c)
    num, den = _num_den(q)
    if num <= 0:
        raise ValueError("ln_sign needs a positive argument")
    if c == 0:
        return (q > 1) - (q < 1)
    # ln(q) = c is impossible now: e^c is irrational for rational c != 0
    prec = 32
    while prec <= _MAX_PRED_PREC:
        lo, hi = ln_lo_hi(q, prec)
        if lo > c:
            return 1
        if hi < c:
            return -1
        prec *= 2
    raise ArithmeticError("ln_sign failed to separate; widen _MAX_PRED_PREC")


def lt_exp(x, t) -> bool:
    """Decide x < e^t exactly, for rational x and t."""
    x = rat(x)
    if x <= 0:
        return True
    return ln_sign(x, t) < 0


def in_exp_window(x, center, eps) -> bool:
    """Decide x strictly inside (e^-eps * center, e^eps * center).

    center may be negative (the window flips); eps must be positive.
    """
    center, eps = rat(center), rat(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if center == 0:
        raise ValueError("window center must be nonzero")
    q = rat(x) / center
    if q <= 0:
        return False
    return ln_sign(q, -eps) > 0 and ln_sign(q, eps) < 0
