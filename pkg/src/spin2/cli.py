"""Command-line front end: every subcommand is a thin adapter around one
library call, with exact rational flag parsing and exact output.

Numeric flags take integers or "p/q" literals only; decimal notation is
rejected so no input is ever silently rounded.  All emitted numbers are
exact "p/q" strings, except explicitly labeled decimal renderings that
carry their own error bars.  Exit status: 0 on success, 2 on
precondition or region errors (including flag parsing), 3 when an
enumeration size cap is exceeded.  The environment variable
SPIN2_ENUM_CAP overrides the enumeration cap globally.
"""

import argparse
import json
import sys
from dataclasses import dataclass, field

from .errors import SizeCapError, SpinError
from .exact import SpinParams, partition_fn, ratio
from .fptas import fptas_eval
from .gadgets import realize_exp
from .graphs import Multigraph
from .hardness import CutInstance, reduction_count_mincuts
from .holant import fpras_estimate, holant_exact, subgraphs_world
from .ising import realize_ising
from .rationals import Rat, format_rat, parse_rat
from .zerofree import classify, disk_radius, star_root_witness

COMMANDS = ("exact", "ratio", "realize", "ising-gadget", "mincut-demo",
            "classify", "zero-scan", "star-root", "fptas", "fpras",
            "holant-check")

ZERO_SCAN_HEADER = "# spin2 zero-scan v1"
FPTAS_SERIES_HEADER = "# spin2 fptas-series v1"


@dataclass(frozen=True)
class RunConfig:
    """A parsed invocation: the subcommand plus its flag values.

    Rational flags are stored as exact values (parse is bit-exact and
    round-trips through format_rat); unknown flags never reach here
    because the parser rejects them.
    """
    command: str
    options: dict = field(default_factory=dict)

    def __getattr__(self, name):
        try:
            return self.options[name]
        except KeyError:
            raise AttributeError(name) from None


def load_graph(path: str) -> Multigraph:
    """Read the line-based graph JSON {"n": int, "edges": [[u, v], ...]};
    self-loops and parallel edges are allowed, indices >= n are not."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or set(data) - {"n", "edges"}:
        raise ValueError(f"graph file {path!r} must hold n and edges only")
    n = data.get("n")
    edges = data.get("edges", [])
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError("graph field n must be an integer")
    for e in edges:
        if (not isinstance(e, (list, tuple)) or len(e) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool)
                           for x in e)):
            raise ValueError(f"bad edge entry {e!r}")
    return Multigraph(n, [tuple(e) for e in edges])


def graph_to_json(g: Multigraph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def _rational(text: str) -> Rat:
    try:
        return parse_rat(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _point_list(text: str) -> list:
    """Semicolon-separated parameter pairs, each "beta,gamma"."""
    points = []
    for chunk in text.split(";"):
        parts = chunk.split(",")
        if len(parts) != 2:
            raise argparse.ArgumentTypeError(
                f"expected 'beta,gamma' pairs separated by ';', got {chunk!r}")
        points.append((_rational(parts[0]), _rational(parts[1])))
    if not points:
        raise argparse.ArgumentTypeError("need at least one point")
    return points


def decimal_with_error(lo, hi, digits: int = 12) -> str:
    """Decimal rendering "m.mmm... ± k*10^-d" whose error bar covers
    both the enclosure width and the decimal truncation, exactly."""
    lo, hi = Rat(lo), Rat(hi)
    scaled = (lo + hi) * Rat(10) ** digits / 2  # midpoint * 10^digits
    mid_scaled = (2 * scaled.numerator + scaled.denominator) // (
        2 * scaled.denominator)  # nearest integer (ties up)
    err = (hi - lo) * Rat(10) ** digits / 2 + 1  # +1 covers mid rounding
    err_int = -((-err.numerator) // err.denominator)  # ceiling
    sign = "-" if mid_scaled < 0 else ""
    whole, frac = divmod(abs(mid_scaled), 10 ** digits)
    return f"{sign}{whole}.{frac:0{digits}d} ± {err_int}e-{digits}"


def _emit(out, text: str) -> None:
    out.write(text)
    if not text.endswith("\n"):
        out.write("\n")


# -- subcommand bodies ----------------------------------------------------------

def _cmd_exact(cfg, out):
    g = load_graph(cfg.graph)
    p = SpinParams(cfg.beta, cfg.gamma)
    _emit(out, format_rat(partition_fn(g, p)))
    return 0


def _cmd_ratio(cfg, out):
    g = load_graph(cfg.graph)
    p = SpinParams(cfg.beta, cfg.gamma)
    _emit(out, format_rat(ratio(g, cfg.vertex, p)))
    return 0


def _cmd_realize(cfg, out):
    p = SpinParams(cfg.beta, cfg.gamma)
    gadget = realize_exp(p, cfg.r, cfg.eps)
    _emit(out, gadget.to_json())
    return 0


def _cmd_ising_gadget(cfg, out):
    p = SpinParams(cfg.beta, cfg.gamma)
    gadget = realize_ising(p, cfg.mstar, cfg.eps)
    _emit(out, gadget.to_json())
    return 0


def _cmd_mincut_demo(cfg, out):
    g = load_graph(cfg.graph)
    inst = CutInstance(g, cfg.s, cfg.t)
    p = SpinParams(cfg.beta, cfg.gamma)
    res = reduction_count_mincuts(inst, p)
    payload = {
        "k": res.k,
        "C": res.C,
        "m": res.m,
        "p_final": format_rat(res.p_final),
        "q_final": format_rat(res.q_final),
        "oracle_queries": res.oracle_queries,
        "gadget_vertices": res.block.n_vertices,
        "gadget_edges": res.block.n_edges,
        "M0": format_rat(res.block.M0),
        "M1": format_rat(res.block.M1),
        "transcript": [
            {"p": format_rat(pv), "q": format_rat(qv), "sign": sgn}
            for pv, qv, sgn in res.transcript
        ],
    }
    _emit(out, json.dumps(payload))
    return 0


def _cmd_classify(cfg, out):
    p = SpinParams(cfg.beta, cfg.gamma)
    rc = classify(p)
    payload = {
        "point": [format_rat(p.beta), format_rat(p.gamma)],
        "tags": list(rc.tags),
        "witnesses": list(rc.witnesses),
    }
    _emit(out, json.dumps(payload))
    return 0


def _cmd_zero_scan(cfg, out):
    lines = [ZERO_SCAN_HEADER,
             "beta,gamma,radius,witness_n,root_lo,root_hi"]
    for beta, gamma in cfg.points:
        p = SpinParams(beta, gamma)
        radius = disk_radius(p)
        n, (lo, hi) = star_root_witness(p, cfg.rprime, cfg.width)
        lines.append(",".join([
            format_rat(beta), format_rat(gamma), format_rat(radius),
            str(n), format_rat(lo), format_rat(hi)]))
    text = "\n".join(lines)
    if cfg.out is not None:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        _emit(out, text)
    return 0


def _cmd_star_root(cfg, out):
    p = SpinParams(cfg.beta, cfg.gamma)
    n, (lo, hi) = star_root_witness(p, cfg.rprime, cfg.width)
    payload = {"n": n, "root_lo": format_rat(lo), "root_hi": format_rat(hi)}
    _emit(out, json.dumps(payload))
    return 0


def _cmd_fptas(cfg, out):
    g = load_graph(cfg.graph)
    p = SpinParams(cfg.beta, cfg.gamma)
    res = fptas_eval(g, p, cfg.eps)
    payload = {
        "value": format_rat(res.value),
        "lo": format_rat(res.lo),
        "hi": format_rat(res.hi),
        "decimal": decimal_with_error(res.lo, res.hi),
        "order": res.order,
        "radius": format_rat(res.radius),
        "branch": res.branch,
        "exact": res.exact,
    }
    if cfg.emit_series is not None:
        lines = [FPTAS_SERIES_HEADER, "order,coefficient"]
        if res.series is not None:
            lines.append("0," + format_rat(res.series.z0))
            for k, t in enumerate(res.series.coefficients, start=1):
                lines.append(f"{k},{format_rat(t)}")
        with open(cfg.emit_series, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
    _emit(out, json.dumps(payload))
    return 0


def _cmd_fpras(cfg, out):
    g = load_graph(cfg.graph)
    p = SpinParams(cfg.beta, cfg.gamma)
    res = fpras_estimate(g, p, cfg.eps, cfg.delta, seed=cfg.seed,
                         chains=cfg.chains)
    try:
        exact = format_rat(partition_fn(g, p))
    except SizeCapError:
        exact = None
    payload = {
        "estimate": format_rat(res.estimate),
        "exact": exact,
        "chains": res.chains,
        "steps": res.steps,
    }
    _emit(out, json.dumps(payload))
    return 0


def _cmd_holant_check(cfg, out):
    g = load_graph(cfg.graph)
    p = SpinParams(cfg.beta, cfg.gamma)
    inst = subgraphs_world(g, p)
    signed = holant_exact(inst)
    z = partition_fn(g, p)
    scaled = Rat(2) ** g.n * signed
    payload = {
        "z": format_rat(z),
        "network_value": format_rat(signed),
        "sign_exponent": inst.global_sign_exponent,
        "scaled": format_rat(scaled),
        "ok": scaled == z,
    }
    _emit(out, json.dumps(payload))
    return 0 if scaled == z else 2


_BODIES = {
    "exact": _cmd_exact,
    "ratio": _cmd_ratio,
    "realize": _cmd_realize,
    "ising-gadget": _cmd_ising_gadget,
    "mincut-demo": _cmd_mincut_demo,
    "classify": _cmd_classify,
    "zero-scan": _cmd_zero_scan,
    "star-root": _cmd_star_root,
    "fptas": _cmd_fptas,
    "fpras": _cmd_fpras,
    "holant-check": _cmd_holant_check,
}


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="spin2",
        description="Exact and approximate two-state spin-system computation")
    sub = top.add_subparsers(dest="command", required=True)

    def cmd(name, help_text):
        p = sub.add_parser(name, help=help_text)
        return p

    def point_flags(p):
        p.add_argument("--beta", type=_rational, required=True,
                       help="edge weight for two 0-spins, integer or p/q")
        p.add_argument("--gamma", type=_rational, required=True,
                       help="edge weight for two 1-spins, integer or p/q")

    p = cmd("exact", "exact partition value of a graph")
    point_flags(p)
    p.add_argument("--graph", required=True, help="graph JSON file")

    p = cmd("ratio", "exact activity ratio at a vertex")
    point_flags(p)
    p.add_argument("--graph", required=True)
    p.add_argument("--vertex", type=int, required=True)

    p = cmd("realize", "gadget whose ratio lies in (e^-eps R, e^eps R)")
    point_flags(p)
    p.add_argument("--r", type=_rational, required=True,
                   help="target ratio R")
    p.add_argument("--eps", type=_rational, required=True)

    p = cmd("ising-gadget", "near-balanced two-terminal interaction gadget")
    point_flags(p)
    p.add_argument("--mstar", type=int, required=True,
                   help="lower bound M* for both diagonal weights")
    p.add_argument("--eps", type=_rational, required=True)

    p = cmd("mincut-demo", "count minimum s-t cuts through the sign oracle")
    p.add_argument("--graph", required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--beta", type=_rational, default=Rat(1, 2))
    p.add_argument("--gamma", type=_rational, default=Rat(-1))

    p = cmd("classify", "tractability tags for a parameter point")
    point_flags(p)

    p = cmd("zero-scan", "CSV of zero-free radii and star-root witnesses")
    p.add_argument("--points", type=_point_list, required=True,
                   help="semicolon-separated beta,gamma pairs")
    p.add_argument("--rprime", type=_rational, required=True,
                   help="witness radius to search beyond the certified disk")
    p.add_argument("--width", type=_rational, default=Rat(1, 10 ** 6),
                   help="root bracket width")
    p.add_argument("--out", default=None, help="CSV output path (default stdout)")

    p = cmd("star-root", "bracketed star root just beyond the certified disk")
    point_flags(p)
    p.add_argument("--rprime", type=_rational, required=True)
    p.add_argument("--width", type=_rational, default=Rat(1, 10 ** 6))

    p = cmd("fptas", "deterministic certified approximation of Z at unit field")
    point_flags(p)
    p.add_argument("--eps", type=_rational, required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--emit-series", default=None, dest="emit_series",
                   help="write the truncated log series to this CSV path")

    p = cmd("fpras", "randomized estimate of Z via the incidence-network chain")
    point_flags(p)
    p.add_argument("--eps", type=_rational, required=True)
    p.add_argument("--delta", type=_rational, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--graph", required=True)
    p.add_argument("--chains", type=int, default=1)

    p = cmd("holant-check", "verify Z = 2^n * signed network value on a graph")
    point_flags(p)
    p.add_argument("--graph", required=True)

    return top


def parse_config(argv) -> RunConfig:
    ns = _build_parser().parse_args(argv)
    options = {k: v for k, v in vars(ns).items() if k != "command"}
    return RunConfig(ns.command, options)


def dispatch(cfg: RunConfig, out=None) -> int:
    """Run one parsed invocation; returns the process exit status."""
    out = sys.stdout if out is None else out
    body = _BODIES.get(cfg.command)
    if body is None:
        raise ValueError(f"unknown command {cfg.command!r}")
    try:
        return body(cfg, out)
    except SizeCapError as exc:
        print(f"spin2: size cap: {exc}", file=sys.stderr)
        return 3
    except (SpinError, ValueError, OSError) as exc:
        print(f"spin2: {exc}", file=sys.stderr)
        return 2


def main(argv=None) -> int:
    return dispatch(parse_config(argv))


if __name__ == "__main__":
    sys.exit(main())
