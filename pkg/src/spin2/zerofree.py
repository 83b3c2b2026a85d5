"""Zero-free disks, positivity recursions, and the parameter-region map.

The partition function of a two-state spin system stays away from zero
on certain disks of the complex field plane, and is positive outright
when beta + gamma >= 1.  This module computes the certified radii (the
product-form radius for the single-edge polynomial and the optimal disk
around 0), verifies the vertex-ratio recursions behind those facts on
concrete graphs by exact enumeration, locates the star-graph roots
showing the disk radius cannot be improved, selects the uncentered-disk
constants that push deterministic approximation slightly past
beta + gamma = 2, and classifies a rational parameter pair into the
known complexity regions.

Sampling can falsify but never prove zero-freeness on an open disk.
The samplers here are deliberately labeled as falsification harnesses;
every radius and constant comes from a closed form whose defining
inequalities are re-checked with exact rational arithmetic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .enclosures import sqrt_lo_hi
from .errors import RegionError, SizeCapError
from .exact import SpinParams, all_activity_vectors, partition_fn
from .gadgets import mobius_f
from .graphs import Multigraph
from .rationals import CRat, Rat, format_rat, rat

__all__ = [
    "REGION_TAGS",
    "ContractionReport",
    "RecursionReport",
    "RegionClass",
    "UncenteredConstants",
    "classify",
    "contraction_sampler",
    "disk_radius",
    "disk_recursion_check",
    "g_threshold",
    "identity_check_right_left",
    "interval_recursion_check",
    "negative_witness",
    "pairwise_radius",
    "star_root_witness",
    "star_value",
    "uncentered_constants",
    "uncentered_requirements",
]


# -- pairwise (single-edge) zero-freeness ------------------------------------

def _pairwise_sharp_lower(beta, gamma, prec: int) -> Rat:
    """Rational lower bound on the largest radius satisfying both
    pairwise certificate inequalities, tightening as prec grows."""
    if gamma < 0:
        lo, _ = sqrt_lo_hi(1 - gamma * beta, prec)
        return (lo - 1) / (-gamma)
    if gamma == 0:
        return beta / 2
    disc = 1 - gamma * beta
    if disc > 0:
        _, hi = sqrt_lo_hi(disc, prec)
        return (1 - hi) / gamma
    if disc == 0:
        return beta
    lo, _ = sqrt_lo_hi(beta / gamma, prec)
    return lo


def pairwise_radius(p: SpinParams) -> Optional[Rat]:
    """Radius r > 1 such that gamma*z1*z2 + z1 + z2 + beta has no zeros
    with |z1|, |z2| < r.

    Defined when beta > gamma and beta + gamma > 2.  The mirrored
    quadrant beta < gamma, beta + gamma < -2 is handled by negating the
    parameters along with both variables, which preserves the zero set
    up to sign.  Outside those two ranges returns None.

    Solving the edge polynomial for z2 gives the partner map
    z2 = -(z1 + beta)/(gamma*z1 + 1), which sends disks centered on the
    real axis to disks centered on the real axis (through infinity when
    the pole falls inside).  The bidisk of radius r is zero-free exactly
    when the map sends the real diameter outside the closed disk, i.e.
    when (z + beta)^2 - r^2*(gamma*z + 1)^2 >= 0 on [-r, r].  That
    difference factors into two linear functions of z,

        ((1 - r*gamma)*z + beta - r) * ((1 + r*gamma)*z + beta + r),

    and keeping both factors positive at z = +-r reduces to two exact
    rational inequalities,

        beta - gamma*r**2 > 0    and    gamma*r**2 - 2*r + beta > 0

    (the remaining endpoint value gamma*r**2 + 2*r + beta exceeds the
    second by 4r).  The largest radius obeying both is an algebraic
    number that stays above 1 throughout the admissible range; the
    returned rational sits just below it, and both inequalities are
    re-verified exactly before returning.  When beta*gamma = 1 the
    constraints degenerate to r < beta, matching the split of the edge
    polynomial into gamma*(z1 + beta)*(z2 + beta).
    """
    beta, gamma = p.beta, p.gamma
    if beta > gamma and beta + gamma > 2:
        pass
    elif beta < gamma and beta + gamma < -2:
        beta, gamma = -beta, -gamma
    else:
        return None
    prec = 64
    while True:
        bound = _pairwise_sharp_lower(beta, gamma, prec)
        r = 1 + (bound - 1) * Rat(99, 100)
        floored = Rat(int(r * 10**6), 10**6)  # shed the enclosure's denominator
        if floored > 1:
            r = floored
        if r > 1 and beta - gamma * r * r > 0 and gamma * r * r - 2 * r + beta > 0:
            return r
        prec *= 2
        if prec > (1 << 16):  # pragma: no cover - the bound converges
            raise AssertionError("pairwise radius enclosure failed to converge")


@dataclass(frozen=True)
class ContractionReport:
    """Outcome of a zero-freeness falsification sweep."""
    trials: int
    min_abs2: object  # smallest exact |Z|^2 witnessed across the sweep


def contraction_sampler(g: Multigraph, p: SpinParams, r, trials: int,
                        seed: int = 0, cap: Optional[int] = None) -> ContractionReport:
    """Falsification harness for lifted zero-freeness: draw random
    complex-rational fields with |lambda_v| < r**deg(v) for every vertex
    (strict, via exact squared-modulus tests) and check Z_G(lambda) != 0
    exactly for each draw.

    Single-edge zero-freeness on the disk of radius r lifts to whole
    graphs with the per-vertex radius r**deg(v); a zero found here would
    disprove that lift as implemented, so any zero raises AssertionError.
    Passing proves nothing about the full open polydisk -- the closed
    form does that -- but the report carries the smallest exact |Z|^2
    witnessed.
    """
    r = rat(r)
    if r <= 0:
        raise ValueError("radius must be positive")
    if trials < 1:
        raise ValueError("need at least one trial")
    rng = random.Random(seed)
    radius = [r ** g.degree(v) for v in range(g.n)]
    radius2 = [b * b for b in radius]
    den = 1 << 24
    min_abs2 = None
    for _ in range(trials):
        lam = []
        for v in range(g.n):
            while True:
                z = CRat(radius[v] * Rat(rng.randint(-den, den), den),
                         radius[v] * Rat(rng.randint(-den, den), den))
                if z.abs2() < radius2[v]:
                    break
            lam.append(z)
        value = partition_fn(g, p, lam, cap=cap)
        abs2 = value.abs2()
        if abs2 == 0:
            raise AssertionError(
                "partition function vanished inside the certified polydisk")
        if min_abs2 is None or abs2 < min_abs2:
            min_abs2 = abs2
    return ContractionReport(trials, min_abs2)


# -- the optimal disk around 0 ------------------------------------------------

def _require_disk_region(p: SpinParams):
    if not (p.gamma < 0 and 1 <= p.beta + p.gamma <= 2):
        raise RegionError(
            f"need gamma < 0 and 1 <= beta+gamma <= 2, got {p}")


def disk_radius(p: SpinParams) -> Rat:
    """(beta-1)/(1-gamma): radius of the largest disk around 0 on which
    the uniform-field partition polynomial is zero-free for every graph.
    Needs gamma < 0 and 1 <= beta+gamma <= 2; the value lies in (0, 1].
    """
    _require_disk_region(p)
    return (p.beta - 1) / (1 - p.gamma)


def star_value(p: SpinParams, n: int, x):
    """Partition polynomial of the n-leaf star at the uniform field x:
    (beta + x)**n + x*(1 + gamma*x)**n, exact."""
    if n < 1:
        raise ValueError("star needs at least one leaf")
    x = rat(x)
    return (p.beta + x) ** n + x * (1 + p.gamma * x) ** n


def star_root_witness(p: SpinParams, r_prime, width=Rat(1, 10 ** 6)):
    """Certified real root of a star polynomial just outside the
    zero-free disk: returns (n, (lo, hi)) where n is the smallest leaf
    count with star_value(p, n, -r_prime) < 0 and (lo, hi) brackets a
    root by exact sign bisection, hi - lo <= width.

    Requires disk_radius(p) < r_prime < beta.  The bracket is clamped so
    that hi <= -disk_radius(p); together with the exact endpoint signs
    star_value(n, lo) < 0 < star_value(n, hi) this certifies a real root
    of magnitude strictly greater than the zero-free radius, i.e. the
    radius is the best possible.
    """
    r0 = disk_radius(p)
    rp = rat(r_prime)
    width = rat(width)
    if not r0 < rp < p.beta:
        raise ValueError(
            f"need disk radius {format_rat(r0)} < r' < beta"
            f" = {format_rat(p.beta)}, got r' = {format_rat(rp)}")
    if width <= 0:
        raise ValueError("width must be positive")
    # star_value(p, n, -rp) = a^n - rp * b^n with the bases below; the
    # ratio b/a exceeds 1 strictly beyond the disk radius, so the value
    # goes negative at some finite leaf count.
    a = p.beta - rp
    b = 1 - p.gamma * rp
    an, bn = a, b
    n = 1
    while an >= rp * bn:
        n += 1
        an *= a
        bn *= b
        if n > 10 ** 6:
            raise AssertionError(
                "no sign change found; growth-ratio certificate violated")
    lo, hi = -rp, Rat(0)
    while hi - lo > width:
        mid = (lo + hi) / 2
        value = star_value(p, n, mid)
        if value < 0:
            lo = mid
        elif value > 0:
            hi = mid
        else:
            lo = hi = mid
            break
    if not lo < -r0:
        raise AssertionError(
            "negative star value inside the certified zero-free disk")
    if hi > -r0:
        if star_value(p, n, -r0) <= 0:
            raise AssertionError(
                "star polynomial not positive at the zero-free radius")
        hi = -r0
    return n, (lo, hi)


# -- recursion checks on concrete fixtures ------------------------------------

@dataclass(frozen=True)
class RecursionReport:
    """Exact per-vertex ratios and partition value of one checked fixture."""
    vertices: int
    z_value: object
    ratios: tuple


def interval_recursion_check(g: Multigraph, p: SpinParams, lam,
                             cap: Optional[int] = None) -> RecursionReport:
    """Exact check of the positivity recursion on one fixture.

    With beta + gamma >= 1, gamma < 0 and every field value inside
    [gamma/beta, 1], asserts that at every vertex the spin-0 restricted
    sum is nonzero, the activity ratio stays inside [gamma/beta, 1], and
    Z_G(lambda) > 0.  Everything is an exact rational comparison; any
    violation raises AssertionError.
    """
    if not (p.gamma < 0 and p.beta + p.gamma >= 1):
        raise RegionError(f"need gamma < 0 and beta+gamma >= 1, got {p}")
    low = p.gamma / p.beta
    lam = [rat(x) for x in lam]
    if len(lam) != g.n:
        raise ValueError(f"need {g.n} field values, got {len(lam)}")
    for v, x in enumerate(lam):
        if not low <= x <= 1:
            raise ValueError(
                f"field {format_rat(x)} at vertex {v} outside"
                f" [{format_rat(low)}, 1]")
    vectors = all_activity_vectors(g, p, lam, cap=cap)
    ratios = []
    for v, vec in enumerate(vectors):
        if vec.z0 == 0:
            raise AssertionError(f"zero spin-0 activity at vertex {v}")
        rv = vec.z1 / vec.z0
        if not low <= rv <= 1:
            raise AssertionError(
                f"ratio {format_rat(rv)} at vertex {v} escaped"
                f" [{format_rat(low)}, 1]")
        ratios.append(rv)
    z = vectors[0].total() if g.n else partition_fn(g, p, lam, cap=cap)
    if not z > 0:
        raise AssertionError("partition function not positive")
    return RecursionReport(g.n, z, tuple(ratios))


def disk_recursion_check(g: Multigraph, p: SpinParams, lam,
                         cap: Optional[int] = None) -> RecursionReport:
    """Exact check of the disk recursion on one fixture.

    With gamma < 0 and 1 <= beta + gamma <= 2, fields satisfying
    |lambda_v| <= (beta-1)/(1-gamma) and lambda_v != -1 must keep every
    vertex ratio inside the same punctured disk and Z_G(lambda) != 0.
    Membership tests compare exact squared moduli; any violation raises
    AssertionError.
    """
    r = disk_radius(p)
    r2 = r * r
    lam = [x if isinstance(x, CRat) else CRat(rat(x)) for x in lam]
    if len(lam) != g.n:
        raise ValueError(f"need {g.n} field values, got {len(lam)}")
    minus_one = CRat(-1)
    for v, x in enumerate(lam):
        if x.abs2() > r2 or x == minus_one:
            raise ValueError(
                f"field at vertex {v} outside the punctured disk of"
                f" radius {format_rat(r)}")
    vectors = all_activity_vectors(g, p, lam, cap=cap)
    ratios = []
    for v, vec in enumerate(vectors):
        if vec.z0.is_zero():
            raise AssertionError(f"zero spin-0 activity at vertex {v}")
        rv = vec.z1 / vec.z0
        if rv.abs2() > r2 or rv == minus_one:
            raise AssertionError(f"ratio at vertex {v} escaped the disk")
        ratios.append(rv)
    z = vectors[0].total() if g.n else partition_fn(g, p, lam, cap=cap)
    if (z.is_zero() if isinstance(z, CRat) else z == 0):
        raise AssertionError("partition function vanished")
    return RecursionReport(g.n, z, tuple(ratios))


def identity_check_right_left(p: SpinParams, A, B, C, D) -> bool:
    """Verify, at one rational point, the two algebraic decompositions
    behind the interval recursion: the expansions of
    1 - (C + gamma*D)/(beta*A + B)            (right interval end) and
    (C + gamma*D)/(beta*A + B) - gamma/beta   (left interval end)
    into sums of products of induction-hypothesis terms.  Both are exact
    rational identities whenever the participating denominators are
    nonzero; a vanishing denominator raises ZeroDivisionError naming it.
    """
    beta, gamma = p.beta, p.gamma
    A, B, C, D = rat(A), rat(B), rat(C), rat(D)
    denominators = {
        "beta": beta,
        "A": A,
        "A+B": A + B,
        "beta*A+B": beta * A + B,
        "beta+gamma": beta + gamma,
        "beta^2+gamma^2": beta * beta + gamma * gamma,
        "beta*A+gamma*B": beta * A + gamma * B,
        "beta*A+gamma*C": beta * A + gamma * C,
    }
    for name, value in denominators.items():
        if value == 0:
            raise ZeroDivisionError(f"denominator {name} vanishes")
    main = beta * A + B
    right_lhs = 1 - (C + gamma * D) / main
    right_rhs = ((A + B) / main * (1 - (C + D) / (A + B))
                 + beta * A / main * (D / A - gamma / beta)
                 + (beta + gamma - 1) * A / main * (1 - D / A))
    left_lhs = (C + gamma * D) / main - gamma / beta
    scale = (beta + gamma) * (beta * beta + gamma * gamma)
    left_rhs = ((beta * beta + gamma * beta + gamma * gamma) / scale
                * ((beta * A + gamma * B) / main)
                * ((beta * C + gamma * D) / (beta * A + gamma * B)
                   - gamma / beta)
                + (-gamma * beta) / scale
                * ((beta * A + gamma * C) / main)
                * ((beta * B + gamma * D) / (beta * A + gamma * C)
                   - gamma / beta)
                + (-gamma * (beta + gamma - 1)) / (beta + gamma)
                * (A / main) * (1 - D / A))
    return right_lhs == right_rhs and left_lhs == left_rhs


# -- uncentered-disk constants past beta+gamma = 2 ----------------------------

def g_threshold(beta) -> Rat:
    """Width of the strip past beta + gamma = 2 on which the
    uncentered-disk constants exist:
    max((beta-2)/(beta^2-1), (beta-1)^2/(beta^3+beta^2-beta)),
    defined for beta > 1 with values in (0, 1)."""
    b = rat(beta)
    if not b > 1:
        raise RegionError(f"threshold needs beta > 1, got {format_rat(b)}")
    g1 = (b - 2) / (b * b - 1)
    g2 = (b - 1) ** 2 / (b ** 3 + b * b - b)
    return g1 if g1 >= g2 else g2


@dataclass(frozen=True)
class UncenteredConstants:
    """Diameter endpoints [a, b] of the uncentered recursion disk, the
    parameter-sign case they were chosen under, and the certified dyadic
    margin added to the closed-form base value of b."""
    a: object
    b: object
    case_tag: str  # "GammaLeMinus1" or "GammaGtMinus1"
    eps_margin: object


def uncentered_requirements(p: SpinParams, a, b) -> tuple:
    """The five exact inequalities the uncentered-disk endpoints must
    satisfy, as a tuple of booleans (f is the pendant-edge map
    x -> (1 + gamma*x)/(beta + x)):

      1. a <= gamma/beta
      2. b > (beta + gamma^2)/(beta^2 + gamma)
      3. -a < b <= 1
      4. a < f(b) and f(a) < b
      5. max(|a + gamma*b|, |b + gamma*a|) < |a| * (beta + a)
    """
    beta, gamma = p.beta, p.gamma
    a, b = rat(a), rat(b)
    req1 = a <= gamma / beta
    req2 = b > (beta + gamma * gamma) / (beta * beta + gamma)
    req3 = -a < b <= 1
    req4 = a < mobius_f(p, b) and mobius_f(p, a) < b
    req5 = max(abs(a + gamma * b), abs(b + gamma * a)) < abs(a) * (beta + a)
    return (req1, req2, req3, req4, req5)


def uncentered_constants(p: SpinParams) -> UncenteredConstants:
    """Disk endpoints a in (-1, 0) and b > 0 for the uncentered
    recursion, chosen by the closed-form case split and a dyadic margin:

      gamma <= -1:  a = gamma/beta, b = max(f(a), -a) + margin;
      gamma  > -1:  a = -1/beta,    b = f(a) + margin;

    halving the margin from 1/2 until all five requirements hold
    exactly.  Needs gamma < 0, beta > 1 and beta + gamma > 2 -
    g_threshold(beta); inputs with the negative parameter first should
    be swapped by the caller (the partition function is symmetric).
    A margin search failure would falsify the constants' existence and
    raises AssertionError.
    """
    beta, gamma = p.beta, p.gamma
    if not (gamma < 0 and beta > 1):
        raise RegionError(f"need gamma < 0 and beta > 1, got {p}")
    if not beta + gamma > 2 - g_threshold(beta):
        raise RegionError(
            f"need beta+gamma > 2 - g(beta)"
            f" = {format_rat(2 - g_threshold(beta))}, got {p}")
    if gamma <= -1:
        case_tag = "GammaLeMinus1"
        a = gamma / beta
        base = max(mobius_f(p, a), -a)
    else:
        case_tag = "GammaGtMinus1"
        a = Rat(-1) / beta
        base = mobius_f(p, a)
    margin = Rat(1, 2)
    for _ in range(200):
        b = base + margin
        if all(uncentered_requirements(p, a, b)):
            assert -1 < a < 0 and b > 0
            return UncenteredConstants(a, b, case_tag, margin)
        margin = margin / 2
    raise AssertionError(
        "no dyadic margin satisfied the five requirements; this would"
        " falsify the constants' existence on the stated strip")


# -- region classification -----------------------------------------------------

#: Recognized complexity-region tags, in the priority order used for the
#: primary tag of a classification.
REGION_TAGS = (
    "ExactPolyTime",
    "SignSharpPHard",
    "PMEquivalentLine",
    "FPTAS_ThmFPTAS",
    "FPRAS_ThmFPRAS",
    "FPTAS_NotThreshold",
    "FerroFPRAS_Known",
    "AntiferroClassified_Known",
    "PositiveButOpen",
    "Open",
)

_WITNESS_TEXT = {
    "ExactPolyTime":
        "degenerate interaction (beta*gamma = 1) or special point:"
        " exactly solvable in polynomial time",
    "SignSharpPHard":
        "-2 < beta+gamma < 1 with a negative parameter: even the sign of"
        " the partition function is hard to compute",
    "PMEquivalentLine":
        "beta = gamma < -1: approximation interreducible with counting"
        " perfect matchings",
    "FPTAS_ThmFPTAS":
        "|beta+gamma| > 2, beta != gamma: deterministic approximation"
        " via single-edge zero-freeness",
    "FPRAS_ThmFPRAS":
        "|beta+gamma| >= 2, beta != gamma: randomized approximation via"
        " the even-subgraphs world",
    "FPTAS_NotThreshold":
        "beta+gamma > 2 - g(max(beta, gamma)) with a negative parameter:"
        " deterministic approximation on bounded degree via uncentered"
        " disks",
    "FerroFPRAS_Known":
        "beta = gamma > 1: randomized approximation for the"
        " ferromagnetic diagonal is classical",
    "AntiferroClassified_Known":
        "first quadrant with beta*gamma < 1: complexity classified up to"
        " the uniqueness boundary (not computed here)",
    "PositiveButOpen":
        "1 <= beta+gamma < 2 with a negative parameter: partition"
        " function always positive, approximation complexity open",
    "Open":
        "no recognized classification applies",
}


@dataclass(frozen=True)
class RegionClass:
    """All applicable region tags (priority order) with one witness
    sentence per tag explaining the exact inequality behind it."""
    tags: tuple
    witnesses: tuple

    @property
    def tag(self) -> str:
        return self.tags[0]

    def to_json_dict(self) -> dict:
        return {"tags": list(self.tags), "witnesses": list(self.witnesses)}


def classify(p: SpinParams) -> RegionClass:
    """Classify a rational parameter pair into the known complexity
    regions using exact inequalities only.  Several tags may apply at
    once; tags[0] is the primary one in REGION_TAGS order.  The result
    is invariant under swapping the two parameters, mirroring the
    corresponding symmetry of the partition function."""
    beta, gamma = p.beta, p.gamma
    total = beta + gamma
    low, high = min(beta, gamma), max(beta, gamma)
    point = (beta, gamma)
    sign_excluded = {(Rat(1), Rat(-1)), (Rat(-1), Rat(1))}
    special = sign_excluded | {(Rat(0), Rat(0)), (Rat(-1), Rat(-1))}
    found = []

    def add(tag):
        found.append(tag)

    if beta * gamma == 1 or point in special:
        add("ExactPolyTime")
    if low < 0 and -2 < total < 1 and point not in sign_excluded:
        add("SignSharpPHard")
    if beta == gamma and beta < -1:
        add("PMEquivalentLine")
    if beta != gamma and abs(total) > 2:
        add("FPTAS_ThmFPTAS")
    if beta != gamma and abs(total) >= 2:
        add("FPRAS_ThmFPRAS")
    if low < 0 and high > 1 and total > 2 - g_threshold(high):
        add("FPTAS_NotThreshold")
    if beta == gamma and beta > 1:
        add("FerroFPRAS_Known")
    if low >= 0 and beta * gamma < 1:
        add("AntiferroClassified_Known")
    if not found and low < 0 and 1 <= total < 2:
        add("PositiveButOpen")
    if not found:
        add("Open")
    tags = tuple(sorted(found, key=REGION_TAGS.index))
    return RegionClass(tags, tuple(_WITNESS_TEXT[t] for t in tags))


# -- exhaustive small-graph sign search ----------------------------------------

@lru_cache(maxsize=None)
def _sign_search_table(max_vertices: int, max_edges: int) -> tuple:
    """Distinct unit-field partition polynomials in (beta, gamma) over
    all multigraphs within the vertex and edge bounds, each with one
    representative edge multiset, ordered smallest representative first.

    Isolated vertices only scale the partition function by positive
    powers of 2, so enumerating edge multisets over exactly max_vertices
    labeled vertices covers the sign of every smaller graph as well.
    Each configuration contributes the monomial
    beta^(both-ends-0 edges) * gamma^(both-ends-1 edges); graphs sharing
    the resulting polynomial are collapsed to the first representative.
    """
    n = max_vertices
    if n > 8:
        raise SizeCapError(
            "sign search keeps a weight per spin configuration; capped"
            " at 8 vertices")
    slots = [(i, j) for i in range(n) for j in range(i, n)]
    nmask = 1 << n
    # bump[s][mask]: +1 -> beta exponent, -1 -> gamma exponent, 0 -> neither
    bump = []
    for i, j in slots:
        col = []
        for mask in range(nmask):
            si, sj = (mask >> i) & 1, (mask >> j) & 1
            col.append(0 if si != sj else (1 if si == 0 else -1))
        bump.append(col)
    exp_beta = [0] * nmask
    exp_gamma = [0] * nmask
    table = {}
    edges = []

    def record():
        poly = {}
        for m in range(nmask):
            key = (exp_beta[m], exp_gamma[m])
            poly[key] = poly.get(key, 0) + 1
        key = tuple(sorted(poly.items()))
        if key not in table:
            table[key] = tuple(edges)

    def expand(first):
        for s in range(first, len(slots)):
            col = bump[s]
            edges.append(slots[s])
            for m in range(nmask):
                c = col[m]
                if c > 0:
                    exp_beta[m] += 1
                elif c < 0:
                    exp_gamma[m] += 1
            record()
            if len(edges) < max_edges:
                expand(s)
            for m in range(nmask):
                c = col[m]
                if c > 0:
                    exp_beta[m] -= 1
                elif c < 0:
                    exp_gamma[m] -= 1
            edges.pop()

    expand(0)
    items = sorted(table.items(), key=lambda kv: (len(kv[1]), kv[1]))
    return tuple((dict(poly), rep) for poly, rep in items)


def _compact_graph(edges) -> Multigraph:
    used = sorted({v for e in edges for v in e})
    remap = {v: i for i, v in enumerate(used)}
    return Multigraph(len(used), [(remap[u], remap[v]) for u, v in edges])


def negative_witness(p: SpinParams, max_vertices: int = 5,
                     max_edges: int = 6,
                     allow_zero: bool = False) -> Optional[Multigraph]:
    """Exhaustive exact search for a small graph whose partition
    function (at unit fields) is negative.

    Scans every multigraph within the bounds (loops and parallel edges
    included) in a fixed smallest-first order and returns the first
    witness with Z < 0 (or Z <= 0 when allow_zero is set), with isolated
    vertices stripped; returns None when every candidate is positive.
    Signs are decided by exact integer arithmetic after clearing
    denominators.
    """
    table = _sign_search_table(max_vertices, max_edges)
    beta, gamma = rat(p.beta), rat(p.gamma)
    nb, db = beta.numerator, beta.denominator
    ng, dg = gamma.numerator, gamma.denominator
    # beta^i * gamma^j times the positive constant (db*dg)^max_edges is
    # the integer U[i] * V[j]; sign of the scaled sum = sign of Z.
    U = [nb ** i * db ** (max_edges - i) for i in range(max_edges + 1)]
    V = [ng ** j * dg ** (max_edges - j) for j in range(max_edges + 1)]
    for poly, rep in table:
        total = 0
        for (i, j), count in poly.items():
            total += count * U[i] * V[j]
        if total < 0 or (allow_zero and total == 0):
            return _compact_graph(rep)
    return None
