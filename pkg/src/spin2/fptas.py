"""Deterministic approximation of the unit-activity partition value.

The partition polynomial Z_G(x) of a graph whose parameters admit a
certified zero-free disk of radius above 1 has an analytic logarithm
there, so truncating the Taylor series of ln(Z_G(x)/Z_G(0)) at order
m = O(log(n/eps)) and exponentiating approximates Z_G(1) within any
requested relative tolerance.  Everything before the final
exponentiation is exact rational arithmetic; the exponential itself is
evaluated with adaptive-precision enclosures until the output interval
meets the error budget, which is split evenly between series truncation
and numeric exponentiation.

Two parameter regimes are supported:

* disk: both parameters sum to more than 2 in absolute value (and
  differ).  The single-edge zero-free radius lifts to the whole graph
  with exponent the minimum vertex degree, giving a disk around 0 that
  covers the evaluation point 1.
* segment: a negative parameter with the sum between the strip
  threshold and 2.  The certified disk endpoints around the real
  segment of activity ratios supply a clearance margin; the series is
  expanded about the segment midpoint instead of 0.

Coefficients come from the exact uniform-field polynomial, so graphs
must stay within the global enumeration cap.  Polynomial-time
coefficient computation via connected-subgraph enumeration would lift
that limit but is deliberately out of scope; this module's subject is
the zero-free region, not the coefficient machinery.

Isolated vertices each contribute an exact factor of 2 at unit activity
but would pin a root of Z_G(x) at -1, inside any useful disk; they are
factored out exactly before the series is built.
"""

from dataclasses import dataclass
from typing import Optional

from .enclosures import exp_lo_hi
from .errors import RegionError
from .exact import SpinParams, UniPoly, z_polynomial
from .graphs import Multigraph
from .rationals import Rat, rat
from .zerofree import pairwise_radius, uncentered_constants

__all__ = [
    "FptasResult",
    "TruncatedLog",
    "choose_order",
    "fptas_eval",
    "log_taylor",
]


@dataclass(frozen=True)
class TruncatedLog:
    """Taylor coefficients t_1..t_order of ln(p(x)/p(0)) at 0, exact.

    z0 is the constant term p(0); for an unshifted partition polynomial
    that is beta**|E|, never zero.  The exponential of the truncated
    series converges to p(x)/p(0) as the order grows whenever x lies
    strictly inside a disk free of roots of p.
    """
    order: int
    coefficients: tuple
    z0: object

    def log_at(self, x):
        """Sum t_k x**k for k = 1..order, exact (Horner)."""
        x = rat(x)
        acc = Rat(0)
        for t in reversed(self.coefficients):
            acc = (acc + t) * x
        return acc


def log_taylor(zpoly: UniPoly, m: int) -> TruncatedLog:
    """First m Taylor coefficients of ln(p(x)/p(0)) at 0, exact.

    Uses the Newton-style recurrence
    t_k = c_k/c_0 - (1/k) * sum_{j=1}^{k-1} j * t_j * c_{k-j} / c_0,
    where c_k are the coefficients of p (zero beyond the degree).
    """
    if m < 0:
        raise ValueError("order must be nonnegative")
    c = zpoly.coeffs
    if not c or c[0] == 0:
        raise ValueError("constant term must be nonzero")
    c0 = c[0]
    t = []
    for k in range(1, m + 1):
        acc = c[k] / c0 if k < len(c) else Rat(0)
        for j in range(1, k):
            if k - j < len(c):
                acc -= Rat(j, k) * t[j - 1] * c[k - j] / c0
        t.append(acc)
    return TruncatedLog(m, tuple(t), c0)


def choose_order(n: int, r, eps) -> int:
    """Smallest order m >= 1 with n * (1/r)**(m+1) / (1 - 1/r) <= eps/2.

    n bounds the number of roots of the polynomial, r > 1 is a certified
    zero-free radius around the expansion point (relative to the
    evaluation offset), and eps is the total relative tolerance; the
    truncation half of the budget is eps/2.  All comparisons exact.
    """
    n = int(n)
    if n < 0:
        raise ValueError("need a nonnegative root count")
    r = rat(r)
    if r <= 1:
        raise ValueError("zero-free radius must exceed 1")
    eps = rat(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    inv = 1 / r
    m = 1
    tail = n * inv * inv / (1 - inv)
    while 2 * tail > eps:
        m += 1
        tail *= inv
    return m


@dataclass(frozen=True)
class FptasResult:
    """Approximation of the unit-activity partition value.

    [lo, hi] encloses the computed approximant (equal to it when exact);
    value is the midpoint.  order is the truncation order used, radius
    the certified zero-free radius the order was chosen against, branch
    "disk" or "segment", exact whether the order reached the polynomial
    degree and the value is the exact partition value.  series is the
    truncated log expansion actually evaluated (None on exact paths).
    """
    value: object
    lo: object
    hi: object
    order: int
    radius: object
    branch: str
    exact: bool
    series: Optional[TruncatedLog] = None


def _certified_exp(scale, log_sum, eps):
    """Enclosure of scale * exp(log_sum) with relative width <= eps/2."""
    prec = 64
    while True:
        lo, hi = exp_lo_hi(log_sum, prec)
        if 2 * (hi - lo) <= lo * eps:
            break
        prec *= 2
    if scale >= 0:
        return scale * lo, scale * hi
    return scale * hi, scale * lo


def _truncated_eval(zp, x_eval, n_roots, rho, eps, scale, branch):
    m = choose_order(n_roots, rho, eps)
    if m >= zp.degree:
        value = scale * zp(x_eval)
        return FptasResult(value, value, value, m, rho, branch, True)
    tl = log_taylor(zp, m)
    lo, hi = _certified_exp(scale * tl.z0, tl.log_at(x_eval), eps)
    return FptasResult((lo + hi) / 2, lo, hi, m, rho, branch, False, tl)


def fptas_eval(g: Multigraph, p: SpinParams, eps,
               cap: Optional[int] = None) -> FptasResult:
    """Approximate the unit-activity partition value of g within
    relative tolerance eps, deterministically.

    The value is symmetric under swapping the two parameters, so inputs
    are normalized first.  Parameters whose sum exceeds 2 in absolute
    value (and differ) use the lifted single-edge disk; parameters with
    a negative entry and sum in the strip above the threshold use the
    segment expansion driven by the certified uncentered-disk margin.
    Anything else raises RegionError.  The exact polynomial evaluation
    takes over whenever the chosen order reaches the polynomial degree.
    """
    eps = rat(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if p.beta == p.gamma:
        raise RegionError(f"need two distinct parameters, got {p}")
    total = p.beta + p.gamma
    if total > 2 or total < -2:
        branch = "disk"
        if (total > 2) != (p.beta > p.gamma):
            p = p.swapped()
        r = pairwise_radius(p)
        uc = None
    else:
        branch = "segment"
        if p.beta < p.gamma:
            p = p.swapped()
        uc = uncentered_constants(p)  # raises RegionError outside the strip
        low = p.gamma / p.beta
        center = (1 + low) / 2
        half = (1 - low) / 2
        r = 1 + uc.eps_margin / half

    degs = g.degrees()
    keep = [v for v in range(g.n) if degs[v] > 0]
    scale = Rat(2) ** (g.n - len(keep))
    if not keep:
        return FptasResult(scale, scale, scale, 0, r, branch, True)
    if len(keep) < g.n:
        remap = {v: i for i, v in enumerate(keep)}
        sub = Multigraph(len(keep), [(remap[u], remap[v])
                                     for u, v in g.edges])
    else:
        sub = g
    zp = z_polynomial(sub, p, cap=cap)
    if branch == "disk":
        rho = r ** min(sub.degrees())
        return _truncated_eval(zp, Rat(1), sub.n, rho, eps, scale, branch)
    return _truncated_eval(zp.shifted(center), half, sub.n, r, eps, scale,
                           branch)
