"""Exact brute-force evaluation of two-state spin systems.

A configuration assigns each vertex a spin in {0, 1}.  With edge
interaction matrix

        A = [[beta, 1],
             [1,  gamma]]

and an optional external field lambda_v per vertex, the partition
function of a multigraph G is

    Z_G(lambda) = sum_sigma  prod_{(u,v) in E} A[sigma_u][sigma_v]
                             * prod_v lambda_v^{sigma_v}.

Self-loops contribute A[s][s]; parallel edges multiply.  Everything here
enumerates all 2^n configurations with exact rational (or complex
rational) arithmetic — these routines are the ground truth the rest of
the package is checked against, so they stay as close to the definition
as possible.  The enumeration cap (default 24 vertices, overridable via
the SPIN2_ENUM_CAP environment variable or per call) keeps accidental
exponential blowups loud instead of slow.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from .errors import SizeCapError, UndefinedRatioError
from .graphs import Multigraph
from .rationals import CRat, Rat, format_rat, rat

DEFAULT_ENUM_CAP = 24
_ENV_CAP = "SPIN2_ENUM_CAP"


def enumeration_cap(cap: Optional[int] = None) -> int:
    """Effective enumeration cap: explicit argument, else env var, else 24."""
    if cap is not None:
        return cap
    raw = os.environ.get(_ENV_CAP)
    if raw is None:
        return DEFAULT_ENUM_CAP
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{_ENV_CAP} must be an integer, got {raw!r}") from None


def _check_cap(g: Multigraph, cap: Optional[int]):
    eff = enumeration_cap(cap)
    if g.n > eff:
        raise SizeCapError(
            f"graph has {g.n} vertices, enumeration cap is {eff} "
            f"(raise via cap= or {_ENV_CAP})")


@dataclass(frozen=True)
class SpinParams:
    """Edge interaction (beta, gamma); off-diagonals are normalized to 1."""
    beta: object
    gamma: object

    def __init__(self, beta, gamma):
        object.__setattr__(self, "beta", rat(beta))
        object.__setattr__(self, "gamma", rat(gamma))

    def swapped(self) -> "SpinParams":
        return SpinParams(self.gamma, self.beta)

    def negated(self) -> "SpinParams":
        return SpinParams(-self.beta, -self.gamma)

    def __repr__(self):
        return f"SpinParams({format_rat(self.beta)}, {format_rat(self.gamma)})"


class ActivityVector(NamedTuple):
    """(z0, z1): partition function restricted to vertex spin 0 resp. 1."""
    z0: object
    z1: object

    def total(self):
        return self.z0 + self.z1

    def ratio(self):
        if _is_zero(self.z0):
            raise UndefinedRatioError("activity z0 = 0, ratio undefined")
        return self.z1 / self.z0


class PairMatrix(NamedTuple):
    """2x2 matrix of partition values restricted at two vertices u, v."""
    m00: object
    m01: object
    m10: object
    m11: object

    def total(self):
        return self.m00 + self.m01 + self.m10 + self.m11

    def rows(self):
        return ((self.m00, self.m01), (self.m10, self.m11))


def _is_zero(x) -> bool:
    if isinstance(x, CRat):
        return x.is_zero()
    return x == 0


def _normalize_fields(g: Multigraph, lam) -> Optional[list]:
    if lam is None:
        return None
    lam = list(lam)
    if len(lam) != g.n:
        raise ValueError(f"need {g.n} field values, got {len(lam)}")
    if any(isinstance(x, CRat) for x in lam):
        return [x if isinstance(x, CRat) else CRat(x) for x in lam]
    return [rat(x) for x in lam]


def _iter_weights(g: Multigraph, p: SpinParams, lam):
    """Yield (mask, weight) over all configurations.

    weight includes the field factors when lam is given.  Zero edge
    factors short-circuit.  The order of bits in mask matches vertex
    indices (bit v = spin of vertex v).
    """
    n, edges = g.n, g.edges
    beta, gamma = p.beta, p.gamma
    one = Rat(1)
    if lam is not None and lam and isinstance(lam[0], CRat):
        one = CRat(1)
    zero_mask = 0
    if lam is not None:
        for v, x in enumerate(lam):
            if _is_zero(x):
                zero_mask |= 1 << v
    for mask in range(1 << n):
        if mask & zero_mask:
            continue
        w = one
        dead = False
        for u, v in edges:
            su = (mask >> u) & 1
            sv = (mask >> v) & 1
            if su == sv:
                f = gamma if su else beta
                if _is_zero(f):
                    dead = True
                    break
                w = w * f
            # A01 = A10 = 1: nothing to multiply
        if dead:
            continue
        if lam is not None:
            m = mask
            while m:
                v = (m & -m).bit_length() - 1
                w = w * lam[v]
                m &= m - 1
        yield mask, w


def partition_fn(g: Multigraph, p: SpinParams, lam=None, cap: Optional[int] = None):
    """Z_G(lambda), exact.  Returns Rat, or CRat when any field is complex."""
    _check_cap(g, cap)
    lam = _normalize_fields(g, lam)
    total = CRat(0) if (lam and isinstance(lam[0], CRat)) else Rat(0)
    for _, w in _iter_weights(g, p, lam):
        total = total + w
    return total


def activity_vector(g: Multigraph, v: int, p: SpinParams, lam=None,
                    cap: Optional[int] = None) -> ActivityVector:
    """(z0, z1) at vertex v: Z restricted to sigma_v = 0 resp. 1."""
    if not (0 <= v < g.n):
        raise ValueError(f"vertex {v} out of range")
    _check_cap(g, cap)
    lam = _normalize_fields(g, lam)
    zero = CRat(0) if (lam and isinstance(lam[0], CRat)) else Rat(0)
    z0 = z1 = zero
    bit = 1 << v
    for mask, w in _iter_weights(g, p, lam):
        if mask & bit:
            z1 = z1 + w
        else:
            z0 = z0 + w
    return ActivityVector(z0, z1)


def all_activity_vectors(g: Multigraph, p: SpinParams, lam=None,
                         cap: Optional[int] = None) -> list:
    """Activity vectors for every vertex from a single enumeration pass."""
    _check_cap(g, cap)
    lam = _normalize_fields(g, lam)
    zero = CRat(0) if (lam and isinstance(lam[0], CRat)) else Rat(0)
    acc = [[zero, zero] for _ in range(g.n)]
    for mask, w in _iter_weights(g, p, lam):
        for v in range(g.n):
            acc[v][(mask >> v) & 1] += w
    return [ActivityVector(a[0], a[1]) for a in acc]


def ratio(g: Multigraph, v: int, p: SpinParams, lam=None,
          cap: Optional[int] = None):
    """R_{G,v} = z1/z0; raises UndefinedRatioError when z0 = 0."""
    return activity_vector(g, v, p, lam, cap).ratio()


def pair_matrix(g: Multigraph, u: int, v: int, p: SpinParams, lam=None,
                cap: Optional[int] = None) -> PairMatrix:
    """2x2 matrix of Z restricted at (sigma_u, sigma_v); u != v."""
    if u == v:
        raise ValueError("pair_matrix needs two distinct vertices")
    for x in (u, v):
        if not (0 <= x < g.n):
            raise ValueError(f"vertex {x} out of range")
    _check_cap(g, cap)
    lam = _normalize_fields(g, lam)
    zero = CRat(0) if (lam and isinstance(lam[0], CRat)) else Rat(0)
    m = [zero, zero, zero, zero]
    bu, bv = 1 << u, 1 << v
    for mask, w in _iter_weights(g, p, lam):
        idx = 2 * ((mask & bu) != 0) + ((mask & bv) != 0)
        m[idx] = m[idx] + w
    return PairMatrix(*m)


# -- univariate polynomial in a uniform field --------------------------------

@dataclass(frozen=True)
class UniPoly:
    """Polynomial with exact Rat coefficients, low degree first."""
    coeffs: tuple

    def __init__(self, coeffs: Sequence):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def __call__(self, x):
        """Horner evaluation; works for Rat and CRat arguments."""
        acc = CRat(0) if isinstance(x, CRat) else Rat(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shifted(self, c) -> "UniPoly":
        """Exact Taylor shift: returns q with q(u) = self(c + u)."""
        c = rat(c)
        out = list(self.coeffs)
        n = len(out)
        # repeated synthetic division by (x - c)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                out[j] = out[j] + c * out[j + 1]
        return UniPoly(out)

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __repr__(self):
        return f"UniPoly([{', '.join(format_rat(c) for c in self.coeffs)}])"


def z_polynomial(g: Multigraph, p: SpinParams, cap: Optional[int] = None) -> UniPoly:
    """Z_G(x) with a uniform field x at every vertex: coefficient of x^k
    collects configurations with exactly k spin-1 vertices."""
    _check_cap(g, cap)
    coeffs = [Rat(0)] * (g.n + 1)
    for mask, w in _iter_weights(g, p, None):
        coeffs[bin(mask).count("1")] += w
    return UniPoly(coeffs)
