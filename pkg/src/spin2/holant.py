"""Parity-constraint (Holant) reduction of two-spin systems, windability
and strictly-terraced certificates, and a worm-chain randomized estimator.

The edge interaction psi(x1, x2) = A_{x1 x2} turns into its 2x2 Fourier
transform living on a bipartite incidence graph: every original vertex
becomes an even-parity constraint of arity deg(v), every original edge
becomes a transform-table vertex of arity 2, and the spin partition
function equals 2^{|V|} times the (signed) constraint-network value.
When beta + gamma <= -2 the negated transform table is the nonnegative
one, so instances store the negated tables together with a global sign
exponent |E|.

For nonnegative tables of arity <= 3, windability (a pairing-symmetric
nonnegative decomposition of products F(x)F(y)) is decided exactly by a
rational phase-1 simplex over the finite certificate space, and the
strictly-terraced property (all neighbors of a zero agree) by direct
enumeration.  Those two certificates are what license the randomized
estimator.

The estimator telescopes conditional marginals, each estimated by a
Metropolis worm chain: states are incidence-variable assignments with at
most two parity defects and nonzero table weight, a move flips one
uniformly chosen free variable and accepts with the exact table-weight
ratio (parity defects carry no weight; proposals leaving the shell are
rejected).  Since each incidence variable touches exactly one parity
vertex, a single flip changes the defect count by one, so the shell
necessarily includes the one-defect states that connect defect-free
configurations.  Only defect-free states are tallied.  Ergodicity of the
shell is not assumed: it is checked once per instance by explicit
reachability whenever the state space is enumerable, and a disconnected
shell is a hard error, never a silent bias.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, Optional, Sequence, Tuple, Union

from .errors import DegenerateInstanceError, RegionError, SizeCapError
from .exact import SpinParams, enumeration_cap
from .graphs import Multigraph
from .rationals import Rat, rat

__all__ = [
    "BinaryFn",
    "EvenD",
    "EvenPathFragment",
    "FprasResult",
    "HolantInstance",
    "WindCert",
    "even_decompose",
    "fourier_hat",
    "fpras_estimate",
    "holant_exact",
    "strictly_terraced_check",
    "subgraphs_world",
    "verify_wind_cert",
    "windable_check",
]


# -- binary tables and their Fourier transform --------------------------------

@dataclass(frozen=True)
class BinaryFn:
    """A function {0,1}^2 -> Q as a 2x2 table; entry [a][b] is F(a, b)."""
    table: tuple

    def __init__(self, table):
        rows = tuple(tuple(rat(x) for x in row) for row in table)
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError("binary table must be 2x2")
        object.__setattr__(self, "table", rows)

    def __call__(self, a: int, b: int) -> Rat:
        return self.table[a][b]

    def negated(self) -> "BinaryFn":
        return BinaryFn([[-x for x in row] for row in self.table])

    def flat(self) -> tuple:
        """Entries as a length-4 tuple indexed by a + 2b (bit i = slot i)."""
        t = self.table
        return (t[0][0], t[1][0], t[0][1], t[1][1])

    @staticmethod
    def from_params(p: SpinParams) -> "BinaryFn":
        """The edge interaction [[beta, 1], [1, gamma]]."""
        return BinaryFn([[p.beta, 1], [1, p.gamma]])


def fourier_hat(psi: BinaryFn) -> BinaryFn:
    """Exact 2x2 Fourier transform:
    hat(a, b) = (1/4) * sum_{x1,x2} psi(x1, x2) * (-1)^(a*x1 + b*x2).

    Applying it twice returns psi/4, and the inverse expansion
    psi = sum_{a,b} hat(a, b) * (-1)^(a*x1 + b*x2) holds exactly.
    """
    quarter = Rat(1, 4)
    out = [[Rat(0), Rat(0)], [Rat(0), Rat(0)]]
    for a in (0, 1):
        for b in (0, 1):
            acc = Rat(0)
            for x1 in (0, 1):
                for x2 in (0, 1):
                    term = psi(x1, x2)
                    if (a * x1 + b * x2) % 2:
                        acc -= term
                    else:
                        acc += term
            out[a][b] = acc * quarter
    return BinaryFn(out)


# -- constraint networks -------------------------------------------------------

@dataclass(frozen=True)
class EvenD:
    """Even-parity constraint of the given arity."""
    arity: int

    def __post_init__(self):
        if self.arity < 0:
            raise ValueError("arity must be nonnegative")


Constraint = Union[EvenD, BinaryFn]


@dataclass(frozen=True)
class HolantInstance:
    """A constraint network: variables sit on the edges of `graph`, and
    every vertex carries either an even-parity constraint (arity = its
    degree) or a 2x2 table (degree exactly 2, slots in edge-list order).
    The network value is multiplied by (-1)**global_sign_exponent.
    """
    graph: Multigraph
    constraints: tuple
    global_sign_exponent: int = 0

    def __post_init__(self):
        g = self.graph
        if g.has_loop():
            raise ValueError("constraint networks use loop-free graphs; "
                             "source-graph loops become doubled incidences")
        if len(self.constraints) != g.n:
            raise ValueError("need exactly one constraint per vertex")
        degs = g.degrees()
        for v, c in enumerate(self.constraints):
            if isinstance(c, EvenD):
                if c.arity != degs[v]:
                    raise ValueError(
                        f"vertex {v}: parity arity {c.arity} != degree {degs[v]}")
            elif isinstance(c, BinaryFn):
                if degs[v] != 2:
                    raise ValueError(
                        f"vertex {v}: table vertices need degree 2, got {degs[v]}")
            else:
                raise ValueError(f"vertex {v}: unknown constraint {c!r}")

    def slots(self, v: int) -> tuple:
        """Variable (edge) indices incident to v, in edge-list order; a
        doubled incidence contributes two slots."""
        out = []
        for k, (a, b) in enumerate(self.graph.edges):
            if a == v:
                out.append(k)
            if b == v:
                out.append(k)
        return tuple(out)


def subgraphs_world(g: Multigraph, p: SpinParams) -> HolantInstance:
    """Transform a spin instance into its incidence constraint network.

    Vertices of the network are the original vertices (even-parity
    constraints of arity deg(v)) followed by one table vertex per edge.
    A self-loop at v becomes two parallel incidences between v and its
    table vertex, which reproduces the loop weight A_{ss} exactly.  When
    beta + gamma <= -2 the stored tables are the negated transform (the
    nonnegative branch) and global_sign_exponent = |E|, so that in all
    cases

        Z_G = 2^{|V|} * (-1)^{global_sign_exponent} * network value.
    """
    hat = fourier_hat(BinaryFn.from_params(p))
    sign_exp = 0
    if p.beta + p.gamma <= -2:
        hat = hat.negated()
        sign_exp = g.m
    inc_edges = []
    for k, (i, j) in enumerate(g.edges):
        inc_edges.append((i, g.n + k))
        inc_edges.append((j, g.n + k))
    inc = Multigraph(g.n + g.m, inc_edges)
    constraints = tuple(EvenD(g.degree(v)) for v in range(g.n)) + \
        tuple(hat for _ in range(g.m))
    return HolantInstance(inc, constraints, sign_exp)


def holant_exact(inst: HolantInstance, cap: Optional[int] = None) -> Rat:
    """Exact network value by brute force over all variable assignments,
    including the global sign.  Capped at `cap` variables (default the
    enumeration cap)."""
    nv = inst.graph.m
    limit = enumeration_cap(cap)
    if nv > limit:
        raise SizeCapError(f"{nv} variables exceeds the cap {limit}")
    parity_masks = []
    tables = []  # (slot0 var, slot1 var, flat table)
    for v, c in enumerate(inst.constraints):
        sl = inst.slots(v)
        if isinstance(c, EvenD):
            mask = 0
            for q in sl:
                mask ^= 1 << q  # doubled incidences cancel, as parity does
            parity_masks.append(mask)
        else:
            a, b = sl
            flat = c.flat()
            tables.append((a, b, flat))
    total = Rat(0)
    for y in range(1 << nv):
        ok = True
        for mask in parity_masks:
            if (y & mask).bit_count() & 1:
                ok = False
                break
        if not ok:
            continue
        w = Rat(1)
        for a, b, flat in tables:
            w *= flat[((y >> a) & 1) + 2 * ((y >> b) & 1)]
            if not w:
                break
        total += w
    if inst.global_sign_exponent % 2:
        total = -total
    return total


# -- parity decomposition into arity-3 constraints -----------------------------

@dataclass(frozen=True)
class EvenPathFragment:
    """A chain of arity-3 parity constraints realizing an arity-k parity
    constraint: externals are variables 0..k-1, internals k..2k-4, and
    summing the internals out reproduces the arity-k parity indicator."""
    externals: int
    internals: int
    clauses: tuple

    def value(self, x: Sequence[int]) -> int:
        if len(x) != self.externals:
            raise ValueError(f"need {self.externals} external bits")
        total = 0
        for assign in range(1 << self.internals):
            def bit(i):
                if i < self.externals:
                    return x[i] & 1
                return (assign >> (i - self.externals)) & 1
            if all((bit(a) + bit(b) + bit(c)) % 2 == 0
                   for a, b, c in self.clauses):
                total += 1
        return total


def even_decompose(k: int) -> EvenPathFragment:
    """Arity-k parity as a path of (k-2) arity-3 parity constraints with
    k-3 internal variables, e.g. for k = 5:

        Even5(x1..x5) = sum_{y1,y2} Even3(x1,x2,y1) Even3(y1,x3,y2)
                        Even3(y2,x4,x5).
    """
    if k < 4:
        raise ValueError("decomposition needs arity >= 4")
    clauses = [(0, 1, k)]
    for i in range(k - 4):
        clauses.append((k + i, 2 + i, k + i + 1))
    clauses.append((2 * k - 4, k - 2, k - 1))
    return EvenPathFragment(k, k - 3, tuple(clauses))


# -- windability and strictly-terraced checks ----------------------------------

Partition = FrozenSet[FrozenSet[int]]


def _pair_partitions(ones: tuple) -> list:
    """Partitions of the index set into pairs and at most one singleton."""
    if not ones:
        return [frozenset()]
    out = []
    if len(ones) % 2:
        for s in ones:
            rest = tuple(i for i in ones if i != s)
            for m in _pair_matchings(rest):
                out.append(m | {frozenset([s])})
    else:
        out = _pair_matchings(ones)
    return out


def _pair_matchings(ones: tuple) -> list:
    if not ones:
        return [frozenset()]
    first, rest = ones[0], ones[1:]
    out = []
    for j in rest:
        remain = tuple(i for i in rest if i != j)
        for m in _pair_matchings(remain):
            out.append(m | {frozenset([first, j])})
    return out


def _as_values(F) -> tuple:
    if isinstance(F, BinaryFn):
        return tuple(rat(x) for x in F.flat())
    vals = tuple(rat(x) for x in F)
    if len(vals) not in (2, 4, 8):
        raise ValueError("table length must be 2^J with J in {1, 2, 3}")
    return vals


@dataclass(frozen=True)
class WindCert:
    """Nonnegative decomposition values B(x, y, M) satisfying
    F(x)F(y) = sum_M B(x, y, M) and B(x, y, M) = B(x^S, y^S, M) for every
    block S of M.  Keys are (x, y, M) with x, y bit-ints and M a
    frozenset of frozensets of coordinate indices."""
    arity: int
    values: dict


def _partitions_by_xor(J: int) -> dict:
    out = {}
    for z in range(1 << J):
        ones = tuple(i for i in range(J) if (z >> i) & 1)
        out[z] = _pair_partitions(ones)
    return out


def _mask(S: FrozenSet[int]) -> int:
    m = 0
    for i in S:
        m |= 1 << i
    return m


def _orbits(J: int, parts: dict) -> dict:
    """Union-find over (x, y, M) triples under flipping both x and y by a
    block of M; returns a map triple -> canonical representative."""
    parent = {}

    def find(t):
        while parent[t] != t:
            parent[t] = parent[parent[t]]
            t = parent[t]
        return t

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb, key=repr)] = min(ra, rb, key=repr)

    for x in range(1 << J):
        for y in range(1 << J):
            for M in parts[x ^ y]:
                t = (x, y, M)
                if t not in parent:
                    parent[t] = t
    for x in range(1 << J):
        for y in range(1 << J):
            for M in parts[x ^ y]:
                for S in M:
                    m = _mask(S)
                    union((x, y, M), (x ^ m, y ^ m, M))
    return {t: find(t) for t in parent}


def _simplex_feasible(rows: list, rhs: list) -> Optional[list]:
    """Exact phase-1 simplex for rows . x = rhs, x >= 0, rhs >= 0.
    Returns a feasible x or None (a verified infeasibility: the optimal
    artificial mass is positive in exact arithmetic)."""
    m, n = len(rows), len(rows[0]) if rows else 0
    tab = [[Rat(v) for v in rows[i]] +
           [Rat(1) if j == i else Rat(0) for j in range(m)] +
           [Rat(rhs[i])] for i in range(m)]
    basis = [n + i for i in range(m)]
    # reduced-cost row for minimizing the artificial sum
    cost = [Rat(0)] * (n + m + 1)
    for i in range(m):
        for j in range(n + m + 1):
            cost[j] -= tab[i][j]
    for j in range(n, n + m):
        cost[j] += 1
    while True:
        enter = -1
        for j in range(n + m):
            if cost[j] < 0:
                enter = j
                break  # Bland's rule: first negative column
        if enter < 0:
            break
        leave, best = -1, None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][-1] / tab[i][enter]
                if best is None or ratio < best or \
                        (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave < 0:
            break  # unbounded phase-1 cannot happen; defensive stop
        piv = tab[leave][enter]
        tab[leave] = [v / piv for v in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [a - f * b for a, b in zip(tab[i], tab[leave])]
        if cost[enter]:
            f = cost[enter]
            cost = [a - f * b for a, b in zip(cost, tab[leave])]
        basis[leave] = enter
    if -cost[-1] != 0:
        return None
    x = [Rat(0)] * n
    for i, b in enumerate(basis):
        if b < n:
            x[b] = tab[i][-1]
    return x


def windable_check(F, cap_arity: int = 3) -> Optional[WindCert]:
    """Decide windability of a nonnegative table of arity <= 3 by exact
    linear feasibility over the pairing-symmetric decomposition values;
    returns a certificate, or None when the system is infeasible."""
    vals = _as_values(F)
    J = vals.__len__().bit_length() - 1
    if J > cap_arity:
        raise ValueError(f"arity {J} above supported bound {cap_arity}")
    if any(v < 0 for v in vals):
        raise ValueError("windability is defined for nonnegative tables")
    parts = _partitions_by_xor(J)
    rep = _orbits(J, parts)
    var_index = {}
    for t, r in rep.items():
        if r not in var_index:
            var_index[r] = len(var_index)
    rows, rhs = [], []
    for x in range(1 << J):
        for y in range(1 << J):
            row = [Rat(0)] * len(var_index)
            for M in parts[x ^ y]:
                row[var_index[rep[(x, y, M)]]] += 1
            rows.append(row)
            rhs.append(vals[x] * vals[y])
    sol = _simplex_feasible(rows, rhs)
    if sol is None:
        return None
    values = {t: sol[var_index[r]] for t, r in rep.items()}
    return WindCert(J, values)


def verify_wind_cert(F, cert: WindCert) -> bool:
    """Independent re-substitution of both windability conditions plus
    nonnegativity; does not share code with the solver."""
    vals = _as_values(F)
    J = vals.__len__().bit_length() - 1
    if cert.arity != J:
        return False
    for x in range(1 << J):
        for y in range(1 << J):
            ones = tuple(i for i in range(J) if ((x ^ y) >> i) & 1)
            total = Rat(0)
            for M in _pair_partitions(ones):
                b = cert.values.get((x, y, M))
                if b is None or b < 0:
                    return False
                total += b
                for S in M:
                    m = _mask(S)
                    if cert.values.get((x ^ m, y ^ m, M)) != b:
                        return False
            if total != vals[x] * vals[y]:
                return False
    return True


def strictly_terraced_check(F) -> bool:
    """True when every zero of the table has all its Hamming neighbors
    equal: F(x) = 0 implies F(x^e_i) = F(x^e_j) for all i, j."""
    vals = _as_values(F)
    J = vals.__len__().bit_length() - 1
    for x in range(1 << J):
        if vals[x] == 0:
            nb = {vals[x ^ (1 << i)] for i in range(J)}
            if len(nb) > 1:
                return False
    return True


# -- worm-chain randomized estimator -------------------------------------------

@dataclass(frozen=True)
class FprasResult:
    """Randomized estimate of Z_G with chain bookkeeping."""
    estimate: Rat
    estimates: tuple  # per-chain telescoping estimates
    chains: int
    steps: int


def _chain_tables(g: Multigraph, p: SpinParams):
    """Per-variable arrays for the worm chain on the incidence network of
    the (already normalized) parameters."""
    inst = subgraphs_world(g, p)
    flat = []
    for k in range(g.m):
        flat.append(inst.constraints[g.n + k].flat())
    pvert, evert, slot = [], [], []
    for k, (i, j) in enumerate(g.edges):
        pvert.extend([i, j])
        evert.extend([k, k])
        slot.extend([0, 1])
    return inst, flat, pvert, evert, slot


def _positive_even_config(nv, n_orig, pvert, evert, slot, flat):
    """First variable assignment with all parities even and nonzero table
    weight, or None.  Exponential scan; used only at desk scale when the
    all-zeros start carries zero weight."""
    for y in range(1 << nv):
        par = [0] * n_orig
        for q in range(nv):
            if (y >> q) & 1:
                par[pvert[q]] ^= 1
        if any(par):
            continue
        w = Rat(1)
        for k in range(len(flat)):
            a = (y >> (2 * k)) & 1
            b = (y >> (2 * k + 1)) & 1
            w *= flat[k][a + 2 * b]
            if not w:
                break
        if w:
            return [(y >> q) & 1 for q in range(nv)]
    return None


@lru_cache(maxsize=256)
def _shell_connected_cached(n, edges, beta_s, gamma_s) -> bool:
    g = Multigraph(n, edges)
    p = SpinParams(rat(beta_s), rat(gamma_s))
    _, flat, pvert, evert, slot = _chain_tables(g, p)
    nv = 2 * g.m
    weight_pos = [True] * (1 << nv)
    defect = [0] * (1 << nv)
    for y in range(1 << nv):
        par = 0
        parbits = [0] * g.n
        for q in range(nv):
            if (y >> q) & 1:
                parbits[pvert[q]] ^= 1
        defect[y] = sum(parbits)
        for k in range(g.m):
            a = (y >> (2 * k)) & 1
            b = (y >> (2 * k + 1)) & 1
            if not flat[k][a + 2 * b]:
                weight_pos[y] = False
                break
    in_shell = [weight_pos[y] and defect[y] <= 2 for y in range(1 << nv)]
    targets = [y for y in range(1 << nv) if weight_pos[y] and defect[y] == 0]
    if not targets:
        return True  # degenerate instance; caller raises separately
    seen = {targets[0]}
    stack = [targets[0]]
    while stack:
        y = stack.pop()
        for q in range(nv):
            z = y ^ (1 << q)
            if in_shell[z] and z not in seen:
                seen.add(z)
                stack.append(z)
    return all(t in seen for t in targets)


def _estimate_once(g, p, flat, pvert, evert, slot, eps, delta, rng):
    """One telescoping pass: pins variables in index order, estimating
    each conditional marginal from defect-free worm-chain visits."""
    nv = 2 * g.m
    n_orig = g.n
    if nv == 0:
        return Rat(2) ** n_orig, 0
    samples = max(64, math.ceil(12 * math.log(2 / delta) * nv / (eps * eps)))
    if all(f[0] for f in flat):
        y = [0] * nv
    else:
        start = _positive_even_config(nv, n_orig, pvert, evert, slot, flat)
        if start is None:
            raise DegenerateInstanceError(
                "every parity-consistent configuration has zero weight")
        y = start
    par = [0] * n_orig
    for q in range(nv):
        if y[q]:
            par[pvert[q]] ^= 1
    defects = sum(par)
    pinned = [False] * nv
    factors = []
    total_steps = 0
    randrange = rng.randrange
    for target in range(nv):
        free = [q for q in range(nv) if not pinned[q]]
        nf = len(free)
        # acceptance fractions acc[q][2*y_q + other_bit]: None = reject,
        # True = always, else (num, den) ints with probability num/den
        acc = {}
        for q in free:
            k = evert[q]
            other = 2 * k + 1 - slot[q]
            tab = flat[k]
            ent = []
            for bit in (0, 1):
                for ob in (0, 1):
                    if slot[q] == 0:
                        old = tab[bit + 2 * ob]
                        new = tab[(1 - bit) + 2 * ob]
                    else:
                        old = tab[ob + 2 * bit]
                        new = tab[ob + 2 * (1 - bit)]
                    if not new:
                        ent.append(None)
                    elif new >= old:
                        ent.append(True)
                    else:
                        fracn = new / old
                        ent.append((int(fracn.numerator), int(fracn.denominator)))
            acc[q] = (ent, other)
        burn = 32 + 8 * nf
        total0 = cnt1 = 0
        snap = [None, None]
        step = 0
        needed = burn + samples
        while step < needed or snap[1 if 2 * cnt1 >= total0 else 0] is None:
            step += 1
            if step > 64 * needed:
                raise AssertionError("worm chain failed to revisit "
                                     "defect-free states")
            q = free[randrange(nf)]
            v = pvert[q]
            d2 = defects + (1 if par[v] == 0 else -1)
            if d2 <= 2:
                ent, other = acc[q]
                a = ent[2 * y[q] + y[other]]
                if a is not None:
                    if a is True or randrange(a[1]) < a[0]:
                        y[q] ^= 1
                        par[v] ^= 1
                        defects = d2
            if step > burn and defects == 0:
                total0 += 1
                cnt1 += y[target]
                side = y[target]
                if snap[side] is None or total0 % 173 == 0:
                    snap[side] = y.copy()
        total_steps += step
        if total0 == 0:
            raise AssertionError("no defect-free samples observed")
        side = 1 if 2 * cnt1 >= total0 else 0
        factors.append(Rat(cnt1 if side else total0 - cnt1, total0))
        pinned[target] = True
        y = snap[side].copy()
        par = [0] * n_orig
        for q in range(nv):
            if y[q]:
                par[pvert[q]] ^= 1
        defects = sum(par)
    weight = Rat(1)
    for k in range(g.m):
        weight *= flat[k][y[2 * k] + 2 * y[2 * k + 1]]
    assert weight > 0 and defects == 0
    est = weight
    for f in factors:
        est /= f
    return Rat(2) ** n_orig * est, total_steps


def fpras_estimate(g: Multigraph, p: SpinParams, eps, delta,
                   seed: int = 0, chains: int = 1,
                   cap: Optional[int] = None) -> FprasResult:
    """Randomized approximation of Z_G for beta != gamma, |beta+gamma| >= 2
    on loop-free graphs: the incidence network's value is estimated by
    telescoping conditional marginals from the worm chain, then scaled by
    2^{|V|} and the branch sign.  `chains` independent replicas are
    aggregated by their median.  Reproducible from (seed, instance);
    every probability in the chain is an exact rational, and the final
    estimate is returned as an exact rational.

    Desk-scale guards: the incidence variable count obeys the enumeration
    cap; shell ergodicity is verified by reachability once per instance
    when the full state space is enumerable; an all-zero-weight network
    (possible only at beta + gamma = -2) raises DegenerateInstanceError.
    """
    eps, delta = rat(eps), rat(delta)
    if eps <= 0 or not 0 < delta < 1:
        raise ValueError("need eps > 0 and 0 < delta < 1")
    if chains < 1:
        raise ValueError("need at least one chain")
    if g.has_loop():
        raise ValueError("self-loops are not supported by the estimator")
    beta, gamma = p.beta, p.gamma
    if beta == gamma:
        raise RegionError("equal parameters are outside the estimator region")
    total = beta + gamma
    if total >= 2:
        if beta < gamma:  # swapping the two spin values preserves Z
            beta, gamma = gamma, beta
    elif total <= -2:
        if beta > gamma:
            beta, gamma = gamma, beta
    else:
        raise RegionError("|beta + gamma| >= 2 required")
    q = SpinParams(beta, gamma)
    nv = 2 * g.m
    limit = enumeration_cap(cap)
    if nv > limit:
        raise SizeCapError(f"{nv} incidence variables exceeds the cap {limit}")
    inst, flat, pvert, evert, slot = _chain_tables(g, q)
    if not all(f[0] for f in flat):
        if _positive_even_config(nv, g.n, pvert, evert, slot, flat) is None:
            raise DegenerateInstanceError(
                "every parity-consistent configuration has zero weight")
    if nv and nv <= 16:
        if not _shell_connected_cached(g.n, g.edges, str(beta), str(gamma)):
            raise AssertionError("worm shell is disconnected on this "
                                 "instance; estimates would be biased")
    estimates = []
    steps = 0
    for c in range(chains):
        rng = random.Random(f"{seed}:{c}")
        est, st = _estimate_once(g, q, flat, pvert, evert, slot,
                                 float(eps), float(delta), rng)
        estimates.append(est)
        steps += st
    ordered = sorted(estimates)
    mid = len(ordered) // 2
    if len(ordered) % 2:
        med = ordered[mid]
    else:
        med = (ordered[mid - 1] + ordered[mid]) / 2
    sign = -1 if inst.global_sign_exponent % 2 else 1
    return FprasResult(sign * med, tuple(sign * e for e in estimates),
                       chains, steps)
