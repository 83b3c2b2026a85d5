"""Two-terminal blocks with ferromagnetic effective interactions.

realize_ising builds, for parameters in the hard region, a graph with
two terminals u, v whose restricted partition values form the matrix

    [[N*M0, N], [N, N*M1]]      with N > 0 and M1/M0 in (1, e^eps),

where both diagonal weights M0, M1 exceed a caller-chosen floor.  Such
a block behaves like a ferromagnetic Ising edge of enormous, nearly
uniform strength, which is what the counting reduction needs.

The direct construction takes 2k internally disjoint two-edge paths
between the terminals plus one ratio gadget wedged at each terminal;
all four matrix entries then have closed forms in k and the gadget's
activity vector, so the certificate is exact.  On the antidiagonal
line beta + gamma = 0 the two-edge paths degenerate (N would vanish),
so every edge endpoint is first decorated with a copy of one fixed
ratio gadget, which shifts the parameters off the line while scaling
the pair matrix by a positive constant.
"""

from __future__ import annotations

from .enclosures import exp_lo_hi, ln_lo_hi, ln_sign, log_approx, lt_exp
from .errors import RegionError
from .exact import PairMatrix, SpinParams, pair_matrix
from .gadgets import (RatioGadget, _int_hint, _require_hard_region,
                      hard_region_contains, realize_dense, realize_exp)
from .graphs import Multigraph
from .rationals import Rat, format_rat, parse_rat, rat

_TERMINAL_U = 0
_TERMINAL_V = 1


class IsingGadget:
    """A two-terminal graph known through its exact pair matrix.

    The graph materializes lazily (the counting reduction only ever
    uses the matrix); terminals are always vertices 0 and 1.
    """

    __slots__ = ("params", "pair", "n_vertices", "n_edges",
                 "_build", "_cached")

    def __init__(self, params, pair, n_vertices, n_edges, build):
        if pair.m01 != pair.m10:
            raise ValueError("pair matrix must be symmetric")
        if pair.m01 <= 0:
            raise ValueError("off-diagonal weight must be positive")
        self.params = params
        self.pair = pair
        self.n_vertices = n_vertices
        self.n_edges = n_edges
        self._build = build
        self._cached = None

    u = property(lambda self: _TERMINAL_U)
    v = property(lambda self: _TERMINAL_V)

    @property
    def N(self):
        return self.pair.m01

    @property
    def M0(self):
        return self.pair.m00 / self.pair.m01

    @property
    def M1(self):
        return self.pair.m11 / self.pair.m01

    def _materialize(self) -> Multigraph:
        if self._cached is None:
            self._cached = self._build()
        return self._cached

    @property
    def graph(self) -> Multigraph:
        return self._materialize()

    def check_against_bruteforce(self, cap=None) -> bool:
        """Recompute the pair matrix by enumeration and compare exactly."""
        g = self._materialize()
        got = pair_matrix(g, self.u, self.v, self.params, cap=cap)
        return tuple(got) == tuple(self.pair)

    def to_json(self) -> str:
        import json
        g = self._materialize()
        return json.dumps({
            "graph": json.loads(g.to_json()),
            "u": self.u,
            "v": self.v,
            "pair": [format_rat(x) for x in self.pair],
            "params": [format_rat(self.params.beta),
                       format_rat(self.params.gamma)],
        })

    @staticmethod
    def from_json(text: str) -> "IsingGadget":
        import json
        data = json.loads(text)
        g = Multigraph.from_json(json.dumps(data["graph"]))
        p = SpinParams(parse_rat(data["params"][0]),
                       parse_rat(data["params"][1]))
        pair = PairMatrix(*(parse_rat(x) for x in data["pair"]))
        if (data["u"], data["v"]) != (_TERMINAL_U, _TERMINAL_V):
            raise ValueError("terminals must be vertices 0 and 1")
        return IsingGadget(p, pair, g.n, g.m, lambda: g)

    def __repr__(self):
        return (f"IsingGadget(n={self.n_vertices}, m={self.n_edges}, "
                f"M0~2^{log_approx(self.M0) / 0.6931471805599453:.1f})")


def _smallest_power_exceeding(base, floor, eps) -> int:
    """Smallest k >= 1 with base^k > exp(eps) * floor, all checks exact."""
    hint = (log_approx(floor) + float(eps)) / log_approx(base)
    k = max(1, _int_hint(hint))
    while ln_sign(base ** k / floor, eps) <= 0:
        k += 1
    while k > 1 and ln_sign(base ** (k - 1) / floor, eps) > 0:
        k -= 1
    return k


def _ising_direct(p: SpinParams, m_star, eps) -> IsingGadget:
    b, g = p.beta, p.gamma
    base = (b * b + 1) * (g * g + 1) / (b + g) ** 2
    assert base > 1
    k = _smallest_power_exceeding(base, m_star, eps)
    q_k = ((b * b + 1) / (g * g + 1)) ** k

    # aim the terminal gadget's ratio just above q_k: the certificate
    # needs R in (q_k, exp(eps/2) * q_k), so target exp(eps/4) * q_k
    prec = 40 + max(0, _int_hint(-log_approx(eps)))
    lo, hi = exp_lo_hi(eps / 4, prec)
    delta = eps / 8
    for _ in range(64):
        rgad = realize_exp(p, q_k * (lo + hi) / 2, delta)
        ratio = rgad.ratio
        if ratio > q_k and lt_exp(ratio / q_k, eps / 2):
            break
        delta = delta / 2  # pragma: no cover
    else:  # pragma: no cover
        raise ArithmeticError("terminal ratio search failed")

    z0, z1 = rgad.activity
    pair = PairMatrix((b * b + 1) ** (2 * k) * z0 * z0,
                      (b + g) ** (2 * k) * z0 * z1,
                      (b + g) ** (2 * k) * z0 * z1,
                      (g * g + 1) ** (2 * k) * z1 * z1)
    n = 2 + 2 * k + 2 * (rgad.n_vertices - 1)
    m = 4 * k + 2 * rgad.n_edges

    def build():
        edges = []
        for i in range(2 * k):
            mid = 2 + i
            edges.append((_TERMINAL_U, mid))
            edges.append((mid, _TERMINAL_V))
        n_total = 2 + 2 * k
        gg, groot = rgad._materialize()
        for anchor in (_TERMINAL_U, _TERMINAL_V):
            relabel = {}
            nxt = n_total
            for x in range(gg.n):
                if x == groot:
                    relabel[x] = anchor
                else:
                    relabel[x] = nxt
                    nxt += 1
            n_total = nxt
            edges.extend((relabel[a], relabel[c]) for a, c in gg.edges)
        return Multigraph(n_total, edges)

    out = IsingGadget(p, pair, n, m, build)
    _check_certificate(out, m_star, eps)
    return out


def _dyadic_near(center, lo, hi):
    """Dyadic rational close to center and strictly inside (lo, hi)."""
    for j in range(64):
        scaled = center * 2 ** j
        floor = int(scaled)
        num = floor + (1 if (scaled - floor) * 2 >= 1 else 0)
        cand = Rat(num, 2 ** j)
        if lo < cand < hi:
            return cand
    raise ArithmeticError("no dyadic point found")  # pragma: no cover


def decorate_edge_endpoints(host: Multigraph, dec_graph: Multigraph,
                            dec_root: int) -> Multigraph:
    """Wedge one copy of a rooted graph at each endpoint of each edge.

    A loop receives two copies at its vertex.  With the copy's activity
    vector (w0, w1) and ratio r = w1/w0, every original edge's weight
    table changes from [[b, 1], [1, g]] to w0*w1 * [[b/r, 1], [1, g*r]],
    so the host's pair matrix at the new parameters, scaled by
    (w0*w1)^(#edges), is the decorated graph's pair matrix.
    """
    edges = list(host.edges)
    n_total = host.n
    for x, y in host.edges:
        for anchor in (x, y):
            relabel = {}
            nxt = n_total
            for w in range(dec_graph.n):
                if w == dec_root:
                    relabel[w] = anchor
                else:
                    relabel[w] = nxt
                    nxt += 1
            n_total = nxt
            edges.extend((relabel[a], relabel[c])
                         for a, c in dec_graph.edges)
    return Multigraph(n_total, edges)


def _ising_perturbed(p: SpinParams, m_star, eps) -> IsingGadget:
    b = p.beta  # gamma = -beta with beta > 0 here
    upper = 1 + 1 / b
    r_target = _dyadic_near(1 + 1 / (2 * b), rat(1), upper)
    prec = 32
    while True:
        lo1 = ln_lo_hi(r_target, prec)[0]
        lo2 = ln_lo_hi(upper / r_target, prec)[0]
        if lo1 > 0 and lo2 > 0:
            break
        prec *= 2
    eps_r = min(lo1, lo2) / 2
    dec = realize_dense(p, r_target, eps_r)
    r = dec.ratio
    assert 1 < r < upper

    shifted = SpinParams(b / r, p.gamma * r)
    assert hard_region_contains(shifted)
    assert shifted.beta + shifted.gamma != 0
    inner = realize_ising(shifted, m_star, eps)

    w0, w1 = dec.activity
    scale = (w0 * w1) ** inner.n_edges
    assert scale > 0
    pair = PairMatrix(*(scale * x for x in inner.pair))
    n = inner.n_vertices + 2 * inner.n_edges * (dec.n_vertices - 1)
    m = inner.n_edges * (1 + 2 * dec.n_edges)

    build = lambda: decorate_edge_endpoints(inner.graph,
                                            *dec._materialize())
    out = IsingGadget(p, pair, n, m, build)
    _check_certificate(out, m_star, eps)
    return out


def _check_certificate(ig: IsingGadget, m_star, eps):
    assert ig.N > 0
    assert ig.pair.m01 == ig.pair.m10
    assert ig.M0 > m_star and ig.M1 > m_star
    assert ig.M1 / ig.M0 > 1
    assert lt_exp(ig.M1 / ig.M0, eps)


def realize_ising(p: SpinParams, m_star, eps) -> IsingGadget:
    """Two-terminal block with pair matrix N*[[M0, 1], [1, M1]] where
    M0, M1 > m_star, N > 0 and 1 < M1/M0 < exp(eps), all verified
    exactly before returning."""
    _require_hard_region(p)
    m_star, eps = rat(m_star), rat(eps)
    if m_star < 1:
        raise ValueError("interaction floor must be at least 1")
    if eps <= 0:
        raise ValueError("eps must be positive")
    if p.beta + p.gamma == 0:
        return _ising_perturbed(p, m_star, eps)
    return _ising_direct(p, m_star, eps)
