"""Ratio-realization calculus for two-state spin systems.

A "gadget" is a graph with a distinguished root vertex, used only
through its activity vector (z0, z1) at the root.  Two moves generate
everything here:

  * wedging two gadgets at their roots multiplies activity vectors
    entrywise, so realizable ratios are closed under products;
  * attaching a pendant edge to the root sends the ratio r to
    f(r) = (1 + gamma*r) / (beta + r), a Mobius map.

Inside the parameter region

    beta > gamma,  -2 < beta + gamma < 1,  gamma < 0,  not (1, -1)

("the hard region" throughout this package) those moves realize ratios
that are dense in the reals, and realize_exp achieves accuracy eps in
time and size polynomial in log(1/eps).  All window tests are exact:
targeting uses rational surrogates such as 1 - e + e^2/2 <= exp(-e) <=
the reciprocal bounds, and final certification uses the adaptive ln
enclosures from the enclosures module.  Floats appear only as hints for
picking trial exponents and every hint is verified exactly.

Graphs are materialized lazily: every gadget knows its exact activity
vector and its vertex/edge counts, but the Multigraph itself is only
assembled when .graph is touched.  Dense realizations at small eps can
run to millions of vertices, and the callers that need them (hardness
reductions) only ever use the algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .enclosures import in_exp_window, ln_lo_hi, log_approx, root_lo_hi
from .errors import PoleError, RegionError, SizeCapError, UndefinedRatioError
from .exact import ActivityVector, SpinParams, activity_vector
from .graphs import Multigraph
from .rationals import Rat, format_rat, rat

_DENSE_COPIES_CAP = 5_000_000
_SEARCH_CAP = 10_000


def hard_region_contains(p: SpinParams) -> bool:
    """Membership test for the open region where ratios are dense."""
    b, g = p.beta, p.gamma
    if not (b > g and g < 0 and -2 < b + g < 1):
        return False
    return not (b == 1 and g == -1)


def _require_hard_region(p: SpinParams):
    if not hard_region_contains(p):
        raise RegionError(
            f"{p!r} is outside the dense-ratio region "
            "(need beta > gamma, -2 < beta+gamma < 1, gamma < 0, not (1,-1))")


def mobius_f(p: SpinParams, r):
    """Pendant-edge map r -> (1 + gamma*r)/(beta + r)."""
    r = rat(r)
    if r == -p.beta:
        raise PoleError("mobius_f pole: r = -beta")
    return (1 + p.gamma * r) / (p.beta + r)


def mobius_f_inv(p: SpinParams, y):
    """Inverse of mobius_f: y -> (1 - beta*y)/(y - gamma)."""
    y = rat(y)
    if y == p.gamma:
        raise PoleError("mobius_f_inv pole: y = gamma")
    return (1 - p.beta * y) / (y - p.gamma)


def _merge_parts(parts, path: bool):
    """Assemble materialized (graph, root) parts in one pass.

    path=False: identify every root into vertex 0 (wedge sum).
    path=True: keep roots distinct and join consecutive roots by edges
    (the backbone layout); the overall root is part 0's root.
    """
    edges = []
    roots = []
    n_total = 1 if not path else 0
    for g, r in parts:
        relabel = {}
        if path:
            offset = n_total
            for v in range(g.n):
                relabel[v] = offset + v
            roots.append(offset + r)
            n_total += g.n
        else:
            nxt = n_total
            for v in range(g.n):
                if v == r:
                    relabel[v] = 0
                else:
                    relabel[v] = nxt
                    nxt += 1
            n_total = nxt
        edges.extend((relabel[u], relabel[v]) for u, v in g.edges)
    if path:
        edges.extend(zip(roots, roots[1:]))
        return Multigraph(n_total, edges), roots[0]
    return Multigraph(n_total, edges), 0


class RatioGadget:
    """A rooted graph known through its exact activity vector.

    graph/root materialize on first access; activity, ratio and the
    vertex/edge counts are always available without building anything.
    """

    __slots__ = ("params", "activity", "n_vertices", "n_edges",
                 "_build", "_cached")

    def __init__(self, params, activity, n_vertices, n_edges, build):
        if activity.z0 == 0:
            raise UndefinedRatioError("gadget root has z0 = 0")
        self.params = params
        self.activity = activity
        self.n_vertices = n_vertices
        self.n_edges = n_edges
        self._build = build
        self._cached = None

    @property
    def ratio(self):
        return self.activity.z1 / self.activity.z0

    def _materialize(self):
        if self._cached is None:
            self._cached = self._build()
        return self._cached

    @property
    def graph(self) -> Multigraph:
        return self._materialize()[0]

    @property
    def root(self) -> int:
        return self._materialize()[1]

    def check_against_bruteforce(self, cap=None) -> bool:
        """Recompute the activity by enumeration and compare exactly."""
        g, r = self._materialize()
        got = activity_vector(g, r, self.params, cap=cap)
        return tuple(got) == tuple(self.activity)

    def to_json(self) -> str:
        import json
        g, r = self._materialize()
        return json.dumps({
            "graph": json.loads(g.to_json()),
            "root": r,
            "activity": [format_rat(self.activity.z0),
                         format_rat(self.activity.z1)],
            "params": [format_rat(self.params.beta),
                       format_rat(self.params.gamma)],
        })

    @staticmethod
    def from_json(text: str) -> "RatioGadget":
        import json
        from .rationals import parse_rat
        data = json.loads(text)
        g = Multigraph.from_json(json.dumps(data["graph"]))
        p = SpinParams(parse_rat(data["params"][0]),
                       parse_rat(data["params"][1]))
        act = ActivityVector(parse_rat(data["activity"][0]),
                             parse_rat(data["activity"][1]))
        root = data["root"]
        if not (0 <= root < g.n):
            raise ValueError("root out of range")
        return RatioGadget(p, act, g.n, g.m, lambda: (g, root))

    def __repr__(self):
        num = self.ratio.numerator
        den = self.ratio.denominator
        if num.bit_length() + den.bit_length() <= 64:
            shown = format_rat(self.ratio)
        else:
            shown = f"<{num.bit_length()}b/{den.bit_length()}b>"
        return (f"RatioGadget(ratio={shown}, n={self.n_vertices}, "
                f"m={self.n_edges})")


def gadget_from_graph(g: Multigraph, root: int, p: SpinParams,
                      cap=None) -> RatioGadget:
    """Wrap an explicit small graph; activity computed by enumeration."""
    act = activity_vector(g, root, p, cap=cap)
    return RatioGadget(p, act, g.n, g.m, lambda: (g, root))


def unit_gadget(p: SpinParams) -> RatioGadget:
    """Single vertex, no edges: activity (1, 1), the product identity."""
    g = Multigraph(1, [])
    return RatioGadget(p, ActivityVector(Rat(1), Rat(1)), 1, 0,
                       lambda: (g, 0))


def gadget_product(g1: RatioGadget, g2: RatioGadget) -> RatioGadget:
    """Wedge two gadgets at their roots; activities multiply entrywise."""
    if g1.params != g2.params:
        raise ValueError("gadget_product needs matching parameters")
    act = ActivityVector(g1.activity.z0 * g2.activity.z0,
                         g1.activity.z1 * g2.activity.z1)
    build = lambda: _merge_parts([g1._materialize(), g2._materialize()],
                                 path=False)
    return RatioGadget(g1.params, act, g1.n_vertices + g2.n_vertices - 1,
                       g1.n_edges + g2.n_edges, build)


def gadget_power(g: RatioGadget, k: int) -> RatioGadget:
    """Wedge k copies of g at the root (k >= 1)."""
    if k < 1:
        raise ValueError("power needs k >= 1")
    if k == 1:
        return g
    act = ActivityVector(g.activity.z0 ** k, g.activity.z1 ** k)
    build = lambda: _merge_parts([g._materialize()] * k, path=False)
    return RatioGadget(g.params, act, k * (g.n_vertices - 1) + 1,
                       k * g.n_edges, build)


def gadget_extend(g: RatioGadget) -> RatioGadget:
    """Attach a pendant edge at the root; the new vertex becomes the root."""
    p = g.params
    z0, z1 = g.activity
    new_z0 = p.beta * z0 + z1
    if new_z0 == 0:
        raise PoleError("extend hits the Mobius pole (ratio = -beta)")
    act = ActivityVector(new_z0, z0 + p.gamma * z1)

    def build():
        graph, root = g._materialize()
        from .graphs import attach_edge
        g2, new_root = attach_edge(graph, root)
        return g2, new_root

    return RatioGadget(p, act, g.n_vertices + 1, g.n_edges + 1, build)


def base_gadget_gt1(p: SpinParams) -> RatioGadget:
    """A concrete small gadget with ratio strictly above 1."""
    _require_hard_region(p)
    b, g = p.beta, p.gamma
    if b + g < 0 and b != 0:
        out = gadget_from_graph(Multigraph(1, [(0, 0), (0, 0)]), 0, p)
    elif b == 0:
        half = gadget_from_graph(Multigraph(2, [(0, 1), (1, 1)]), 0, p)
        assert half.ratio == g
        out = gadget_power(gadget_extend(half), 2)
    elif g != -b * b:
        out = gadget_from_graph(
            Multigraph(3, [(0, 1), (0, 2), (1, 1), (2, 2)]), 0, p)
    else:
        half = gadget_from_graph(Multigraph(3, [(0, 1), (1, 2), (2, 2)]),
                                 0, p)
        assert half.ratio == g
        out = gadget_extend(half)
    assert out.ratio > 1
    return out


def base_gadget_neg(p: SpinParams) -> RatioGadget:
    """A concrete small gadget with ratio strictly inside (-1, 0)."""
    _require_hard_region(p)
    if p.gamma < -1:
        out = gadget_from_graph(Multigraph(2, [(0, 1)]), 0, p)
    else:
        r0g = base_gadget_gt1(p)
        k = 1
        power = r0g.ratio
        while power * (-p.gamma) <= 1:
            power *= r0g.ratio
            k += 1
        out = gadget_extend(gadget_power(r0g, k))
    assert -1 < out.ratio < 0
    return out


# -- dense realization --------------------------------------------------------

def _surrogate_bounds(eps):
    """Rationals (lo, hi) with exp(-eps) < lo and hi < exp(eps), eps > 0.

    lo = 1 - e + e^2/2 and hi = 1 + e + e^2/2 satisfy this for every
    positive eps, so [lo*R, hi*R] sits strictly inside the true window.
    """
    return 1 - eps + eps * eps / 2, 1 + eps + eps * eps / 2


def _product_of(gadgets):
    out = gadgets[0]
    for g in gadgets[1:]:
        out = gadget_product(out, g)
    return out


def _small_candidate_scan(p: SpinParams, R, eps):
    """Look for a tiny product-form gadget already inside the window.

    Tries bounded families built from the two base gadgets and one
    pendant extension: powers r0^k and rneg^2 * r0^j for positive
    targets, rneg * r0^j for negative ones, and f(r0^k) times either.
    Every membership check is an exact rational comparison against the
    surrogate window, so a hit needs no further certification.  Returns
    the hit with the fewest vertices, or None; callers fall back to the
    systematic constructions.
    """
    lo_c, hi_c = _surrogate_bounds(min(rat(eps), Rat(1, 2)))

    def hit(value):
        if (value > 0) != (R > 0):
            return False
        q = value / R
        return lo_c <= q <= hi_c

    r0g = base_gadget_gt1(p)
    negg = base_gadget_neg(p)
    r0 = r0g.ratio
    rneg = negg.ratio
    abs_hi = hi_c * abs(R)
    best = None

    def offer(value, make):
        nonlocal best
        if not hit(value):
            return
        gad = make()
        assert gad.ratio == value
        if best is None or (gad.n_vertices, gad.n_edges) < \
                (best.n_vertices, best.n_edges):
            best = gad

    # first power of r0 safely past both Mobius guards (pole and sign)
    k_min = 1
    guard = max(-p.beta, 1 / -p.gamma)
    while r0 ** k_min <= guard:
        k_min += 1
        if k_min > 256:
            return None

    powers = [rat(1)]
    while len(powers) <= k_min + 48:
        powers.append(powers[-1] * r0)

    if R > 0:
        for k in range(1, 49):
            if powers[k] > abs_hi:
                break
            offer(powers[k], lambda k=k: gadget_power(r0g, k))
        sq = rneg * rneg
        for j in range(49):
            v = sq * powers[j]
            if v > abs_hi:
                break
            offer(v, lambda j=j: _product_of(
                [gadget_power(negg, 2)] + ([gadget_power(r0g, j)] if j
                                           else [])))
        for k in range(k_min, k_min + 32):
            fk = mobius_f(p, powers[k])
            for j in range(49):
                v = fk * rneg * powers[j]
                if v > abs_hi:
                    break
                offer(v, lambda k=k, j=j: _product_of(
                    [gadget_extend(gadget_power(r0g, k)), negg]
                    + ([gadget_power(r0g, j)] if j else [])))
    else:
        for j in range(49):
            v = rneg * powers[j]
            if -v > abs_hi:
                break
            offer(v, lambda j=j: _product_of(
                [negg] + ([gadget_power(r0g, j)] if j else [])))
        for k in range(k_min, k_min + 32):
            fk = mobius_f(p, powers[k])
            for j in range(49):
                v = fk * powers[j]
                if -v > abs_hi:
                    break
                offer(v, lambda k=k, j=j: _product_of(
                    [gadget_extend(gadget_power(r0g, k))]
                    + ([gadget_power(r0g, j)] if j else [])))
    return best


def _int_hint(value: float) -> int:
    if value != value or value in (float("inf"), float("-inf")):
        raise ArithmeticError("exponent hint overflowed")
    return int(value)


def _dense_positive(p: SpinParams, R, eps) -> RatioGadget:
    """Realize a ratio in the eps-window around R > 0; eps <= 1/2."""
    lo_c, hi_c = _surrogate_bounds(eps)
    w_lo, w_hi = lo_c * R, hi_c * R

    def in_window(t):
        return w_lo <= t <= w_hi

    r0g = base_gadget_gt1(p)
    r0 = r0g.ratio
    log_r0 = log_approx(r0)
    negg = base_gadget_neg(p)
    rneg = negg.ratio

    # r1 = f(r0^k) within the surrogate margin of gamma, r2 one step further
    thresh = (1 - p.beta * p.gamma) / ((eps - eps * eps / 2) * (-p.gamma)) \
        - p.beta
    k = max(1, _int_hint(log_approx(max(thresh, rat(2))) / log_r0))
    while r0 ** k <= thresh or r0 ** k <= -p.beta:
        k += 1
    while k > 1 and r0 ** (k - 1) > thresh and r0 ** (k - 1) > -p.beta:
        k -= 1
    r1 = mobius_f(p, r0 ** k)
    r2 = mobius_f(p, r0 ** (k + 1))
    assert p.gamma < r2 < r1 <= lo_c * p.gamma < 0
    r1g = gadget_extend(gadget_power(r0g, k))
    r2g = gadget_extend(gadget_power(r0g, k + 1))

    # j with |rneg * r0^j * r1| > 1, one extra step for slack
    j = 1
    while (-rneg) * r0 ** j * (-r1) <= 1:
        j += 1
    j += 1
    tailg = gadget_product(negg, gadget_power(r0g, j))
    big_r1 = r1 * rneg * r0 ** j
    big_r2 = r2 * rneg * r0 ** j
    big_r3 = rneg * rneg
    assert 1 < big_r1 < big_r2 and 0 < big_r3 < 1
    step = big_r2 / big_r1
    assert 1 < step < 1 / lo_c

    big_r1g = gadget_product(r1g, tailg)
    big_r2g = gadget_product(r2g, tailg)
    big_r3g = gadget_product(negg, negg)
    for t, gadget in ((big_r1, big_r1g), (big_r2, big_r2g)):
        if in_window(t):
            return gadget

    # systematic search: m, n >= 1 with R3^m R1^n < R <= R3^m R2^n, then
    # walk the geometric progression R3^m R1^(n-i) R2^i to the first term
    # at or above R; that term lies in [R, step*R) inside the window.
    log_r1 = log_approx(big_r1)
    log_r2 = log_approx(big_r2)
    log_r3 = log_approx(big_r3)
    log_target = log_approx(R)
    n = 1
    n_cap = 2 * _int_hint(-log_r3 / log_approx(step)) + 16
    while n <= n_cap:
        m = max(1, _int_hint((n * log_r1 - log_target) / -log_r3) + 1)
        while m > 1 and big_r3 ** (m - 1) * big_r1 ** n < R:
            m -= 1
        while big_r3 ** m * big_r1 ** n >= R:
            m += 1
        if m + n > _DENSE_COPIES_CAP:
            raise SizeCapError(
                "dense realization would need more than "
                f"{_DENSE_COPIES_CAP} gadget copies; use realize_exp")
        if big_r3 ** m * big_r2 ** n >= R:
            lo_i, hi_i = 0, n  # T_0 < R <= T_n; find the first crossing
            base = big_r3 ** m * big_r1 ** n
            while hi_i - lo_i > 1:
                mid = (lo_i + hi_i) // 2
                if base * step ** mid >= R:
                    hi_i = mid
                else:
                    lo_i = mid
            i = hi_i
            value = big_r3 ** m * big_r1 ** (n - i) * big_r2 ** i
            assert in_window(value)
            parts = [gadget_power(big_r3g, m)]
            if n - i:
                parts.append(gadget_power(big_r1g, n - i))
            if i:
                parts.append(gadget_power(big_r2g, i))
            out = parts[0]
            for part in parts[1:]:
                out = gadget_product(out, part)
            assert out.ratio == value
            return out
        n += 1
    raise ArithmeticError("dense search failed to terminate")  # pragma: no cover


def realize_dense(p: SpinParams, R, eps) -> RatioGadget:
    """Gadget whose ratio lies strictly between exp(-eps)*R and exp(eps)*R.

    Output size grows roughly like 1/eps; for small eps use realize_exp.
    """
    _require_hard_region(p)
    R, eps = rat(R), rat(eps)
    if R == 0:
        raise ValueError("target ratio must be nonzero")
    if eps <= 0:
        raise ValueError("eps must be positive")
    eps_eff = min(eps, Rat(1, 2))
    out = _small_candidate_scan(p, R, eps_eff)
    if out is None:
        if R > 0:
            out = _dense_positive(p, R, eps_eff)
        else:
            negg = base_gadget_neg(p)
            out = gadget_product(
                _dense_positive(p, R / negg.ratio, eps_eff), negg)
    assert in_exp_window(out.ratio, R, eps)
    return out


# -- exponential-accuracy realization -----------------------------------------

@dataclass(frozen=True)
class LandmarkSet:
    """Fixed reference points for the interval-contraction algorithm."""
    a: object
    b: object
    c: object
    d: object
    h1_gadget: RatioGadget
    h2_gadget: RatioGadget

    def validate(self, p: SpinParams) -> bool:
        a, b, c, d = self.a, self.b, self.c, self.d
        fprime_c = (p.beta * p.gamma - 1) / (p.beta + c) ** 2
        h1, h2 = self.h1_gadget.ratio, self.h2_gadget.ratio
        return (p.gamma < a < b < 0 <= abs(p.beta) < c < d
                and b == mobius_f(p, c) and a == mobius_f(p, d)
                and b / (2 * d) < fprime_c
                and 0 < h1 < 1 and h1 * h1 > b / a and h2 < -2)


@lru_cache(maxsize=64)
def landmarks(p: SpinParams) -> LandmarkSet:
    """Doubling search for reference points, plus the two step gadgets."""
    _require_hard_region(p)
    c = rat(max(abs(p.beta), 1 / -p.gamma)) + 1
    for _ in range(_SEARCH_CAP):
        d = 2 * c
        b = mobius_f(p, c)
        a = mobius_f(p, d)
        fprime_c = (p.beta * p.gamma - 1) / (p.beta + c) ** 2
        if p.gamma < a < b < 0 and b / (2 * d) < fprime_c:
            break
        c = 2 * c
    else:  # pragma: no cover
        raise ArithmeticError("landmark search failed")

    # h1 sits in (sqrt(b/a), 1): aim at the window's geometric center with
    # accuracy half the window's log-width (itself bounded via enclosures)
    prec = 32
    while ln_lo_hi(a / b, prec)[0] <= 0:
        prec *= 2
    eps_h1 = ln_lo_hi(a / b, prec)[0] / 4
    t_lo, t_hi = root_lo_hi(b / a, 4, 48)
    target = (t_lo + t_hi) / 2
    for _ in range(_SEARCH_CAP):
        h1g = realize_dense(p, target, eps_h1)
        h1 = h1g.ratio
        if 0 < h1 < 1 and h1 * h1 > b / a:
            break
        eps_h1 = eps_h1 / 2  # pragma: no cover
    else:  # pragma: no cover
        raise ArithmeticError("h1 search failed")

    h2g = realize_dense(p, rat(-5, 2), rat(1, 8))
    assert h2g.ratio < -2
    return LandmarkSet(a, b, c, d, h1g, h2g)


@dataclass(frozen=True)
class ExpTrace:
    """Per-run diagnostics for realize_exp."""
    target: object
    eps: object
    iterations: int
    spreads: tuple          # R2/R1 before each contraction, then final
    walk_exponents: tuple   # (s, t) for each computed step gadget


def _walk_to_negative_window(lm: LandmarkSet, r2):
    """Step gadget with ratio in (-r2/sqrt(ab), r2/a): odd h2 power in,
    then h1 steps shrink the magnitude until the first entry."""
    h1, h2 = lm.h1_gadget.ratio, lm.h2_gadget.ratio
    ab = lm.a * lm.b
    bound_sq = r2 * r2 / ab  # magnitude^2 of the outer window edge
    s = max(1, _int_hint((log_approx(r2) - log_approx(ab) / 2)
                         / log_approx(-h2)))
    if s % 2 == 0:
        s += 1
    while (h2 * h2) ** s <= bound_sq:
        s += 2
    while s > 2 and (h2 * h2) ** (s - 2) > bound_sq:
        s -= 2
    x = h2 ** s
    t = 0
    while x * x >= bound_sq:
        x *= h1
        t += 1
    assert x * x > (r2 / lm.a) ** 2 and x < 0
    return x, s, t


def _walk_to_positive_window(lm: LandmarkSet, r1, r2):
    """Step gadget with ratio in (r1, r2) for 0 < r1 < r2: even h2 power
    above, then h1 steps down to the first entry."""
    h1, h2 = lm.h1_gadget.ratio, lm.h2_gadget.ratio
    s = max(2, _int_hint(log_approx(r2) / log_approx(h2 * h2)) * 2)
    while h2 ** s < r2:
        s += 2
    while s > 2 and h2 ** (s - 2) >= r2:
        s -= 2
    x = h2 ** s
    t = 0
    while x >= r2:
        x *= h1
        t += 1
    assert x > r1
    return x, s, t


def _step_gadget(lm: LandmarkSet, s: int, t: int) -> RatioGadget:
    out = gadget_power(lm.h2_gadget, s)
    if t:
        out = gadget_product(out, gadget_power(lm.h1_gadget, t))
    return out


def exact_activity_of_backbone(chain, p: SpinParams) -> ActivityVector:
    """Activity at the head of a path with one gadget hanging per node.

    With M = [[beta, 1], [1, gamma]], the vector of the k-th suffix is
    the k-th gadget's vector times (M . next suffix vector) entrywise;
    no composite graph is ever expanded.
    """
    if not chain:
        raise ValueError("empty chain")
    if any(g.params != p for g in chain):
        raise ValueError("chain parameters disagree")
    acc = chain[-1].activity
    for gadget in reversed(chain[:-1]):
        pushed = ActivityVector(p.beta * acc.z0 + acc.z1,
                                acc.z0 + p.gamma * acc.z1)
        acc = ActivityVector(gadget.activity.z0 * pushed.z0,
                             gadget.activity.z1 * pushed.z1)
    return acc


def _backbone_gadget(chain, p: SpinParams) -> RatioGadget:
    act = exact_activity_of_backbone(chain, p)
    n = sum(g.n_vertices for g in chain)
    m = sum(g.n_edges for g in chain) + len(chain) - 1
    build = lambda: _merge_parts([g._materialize() for g in chain],
                                 path=True)
    return RatioGadget(p, act, n, m, build)


def realize_exp_traced(p: SpinParams, R, eps, allow_small: bool = True):
    """realize_exp plus an ExpTrace of the contraction run.

    allow_small=False skips the small-candidate scan and always runs
    the interval contraction (useful when the trace itself is studied).
    """
    _require_hard_region(p)
    R, eps = rat(R), rat(eps)
    if R <= 0:
        raise ValueError("target must be positive (see realize_signed)")
    if eps <= 0:
        raise ValueError("eps must be positive")
    if allow_small:
        hit = _small_candidate_scan(p, R, min(eps, Rat(1, 2)))
        if hit is not None:
            assert in_exp_window(hit.ratio, R, eps)
            return hit, ExpTrace(R, eps, 0, (), ())
    lm = landmarks(p)
    a, b, c, d = lm.a, lm.b, lm.c, lm.d

    r1, r2 = R / (1 + eps), R * (1 + eps)
    chain = []
    exponents = []
    spreads = [r2 / r1]
    while (r2 / r1) ** 2 < a / b:
        x, s, t = _walk_to_negative_window(lm, r2)
        chain.append(_step_gadget(lm, s, t))
        exponents.append((s, t))
        prev_spread = r2 / r1
        r1, r2 = mobius_f_inv(p, r1 / x), mobius_f_inv(p, r2 / x)
        # loop invariants: both pinned between the outer landmarks, and
        # the log-spread at least doubles each pass
        assert c < r1 < r2 < d
        assert r2 / r1 > prev_spread ** 2
        spreads.append(r2 / r1)
        if len(chain) > _SEARCH_CAP:  # pragma: no cover
            raise ArithmeticError("contraction failed to terminate")
    x, s, t = _walk_to_positive_window(lm, r1, r2)
    chain.append(_step_gadget(lm, s, t))
    exponents.append((s, t))

    out = _backbone_gadget(chain, p)
    assert R / (1 + eps) < out.ratio < R * (1 + eps)
    assert in_exp_window(out.ratio, R, eps)
    trace = ExpTrace(R, eps, len(chain) - 1, tuple(spreads),
                     tuple(exponents))
    return out, trace


def realize_exp(p: SpinParams, R, eps) -> RatioGadget:
    """Gadget with ratio strictly inside (exp(-eps)*R, exp(eps)*R), R > 0.

    Size and runtime are polynomial in the bit lengths of R and eps.
    """
    return realize_exp_traced(p, R, eps)[0]


def realize_signed(p: SpinParams, R, eps) -> RatioGadget:
    """realize_exp for either sign of R (negative via a (-1,0) factor)."""
    R, eps = rat(R), rat(eps)
    if R == 0:
        raise ValueError("target ratio must be nonzero")
    if R > 0:
        return realize_exp(p, R, eps)
    _require_hard_region(p)
    negg = base_gadget_neg(p)
    out = gadget_product(realize_exp(p, R / negg.ratio, eps), negg)
    assert in_exp_window(out.ratio, R, eps)
    return out
