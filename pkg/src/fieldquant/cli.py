"""Command-line front end; every subcommand prints one JSON report.

Exit codes: 0 success, 1 a verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import __version__
from . import classical_modes as cm
from . import fock
from . import gupta_bleuler as gb
from . import little_group as lg
from .errors import FieldQuantError
from .jsonio import load_currents, load_matrix, load_modes, load_observable, load_state, rational_str, read_json
from .scalars import parse_rational

FLOAT_TOL = 1e-9


class InputError(Exception):
    """Bad flags or input files; reported with exit code 2."""


def tagged(value: float, tol: float = FLOAT_TOL) -> dict:
    return {"value": float(value), "tol": tol}


def _pair(z) -> list[str]:
    return z.to_pair()


def _report(command: str, inputs: dict, results: dict, seed=None) -> dict:
    return {"command": command, "inputs": inputs, "results": results, "seed": seed, "version": __version__}


# --------------------------------------------------------------------------
# subcommands; each returns (report, ok)
# --------------------------------------------------------------------------


def cmd_quantize(args) -> tuple[dict, bool]:
    if args.levels < 0:
        raise InputError("--levels must be non-negative")
    modes = load_modes(read_json(args.input)) if args.input else None
    if args.system == "scalar" and modes is None:
        modes = cm.cubic_stencil("scalar")
    choice = fock.QuantizationChoice(fock.System(args.system), fock.Variant(args.variant), modes)
    q = fock.build_quantization(choice)
    levels = []
    all_kets = []
    for n in range(args.levels + 1):
        basis = fock.level_basis(n, q.space)
        G, inertia = fock.gram_inertia(basis, q.table)
        levels.append(
            {
                "n": n,
                "dim": len(basis),
                "gram": [[_pair(x) for x in row] for row in G.entries] if len(basis) <= 64 else None,
                "inertia": list(inertia),
            }
        )
        all_kets.append(basis)
    # grades are mutually orthogonal
    orth = all(
        not fock.inner(x.bra(), y, q.table)
        for i, bi in enumerate(all_kets)
        for j, bj in enumerate(all_kets)
        if i < j
        for x in bi[:4]
        for y in bj[:4]
    )
    results = {"destroyer": q.destroyer, "slots": len(q.space), "levels": levels, "grades_orthogonal": orth}
    if len(q.space) == 1:
        results["norms"] = [lv["gram"][0][0][0] for lv in levels]
    inputs = {"system": args.system, "variant": args.variant, "levels": args.levels, "input": args.input}
    return _report("quantize", inputs, results), orth


def _parse_k(text: str) -> gb.LightlikeMomentum:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if len(parts) != 4:
        raise InputError("--k needs four comma-separated rationals")
    return gb.LightlikeMomentum(tuple(parse_rational(p) for p in parts))


def cmd_gb(args) -> tuple[dict, bool]:
    if args.n < 0:
        raise InputError("--n must be non-negative")
    k = _parse_k(args.k)
    basis = gb.constrained_basis(args.n, k)
    gauge = gb.gauge_basis(args.n, k)
    pos, zero, neg, G = gb.positivity_report(args.n, k)
    gauge_null = all(not gb.tensor_inner(g, t) for g in gauge for t in basis)
    gauge_constrained = all(not gb.contract_k(g, k) for g in gauge)
    expected_dim = math.comb(args.n + 2, 2)
    ok = (
        neg == 0
        and len(basis) == expected_dim
        and pos == args.n + 1
        and zero == len(gauge)
        and gauge_null
        and gauge_constrained
    )
    results = {
        "dim": len(basis),
        "gauge": len(gauge),
        "inertia": [pos, zero, neg],
        "gauge_null": gauge_null,
        "ok": ok,
    }
    inputs = {"n": args.n, "k": [rational_str(x) for x in k.k]}
    return _report("gb", inputs, results), ok


def cmd_little_element(args) -> tuple[dict, bool]:
    k = _parse_k(args.k)
    g = lg.E2Element(args.phi, args.alpha, args.beta)
    L = lg.e2_to_little(g, k)
    back = lg.little_to_e2(L, k)
    kf = np.array([float(x) for x in k.k])
    res = {
        "metric": lg.lorentz_residual(L),
        "fixes_k": float(np.max(np.abs(L @ kf - kf))),
        "roundtrip": g.distance(back),
    }
    ok = res["metric"] <= 1e-9 and res["fixes_k"] <= 1e-9 and res["roundtrip"] <= 1e-8
    results = {
        "matrix": [[tagged(x) for x in row] for row in L],
        "spiral": [[[tagged(z.real), tagged(z.imag)] for z in row] for row in lg.spiral_basis_matrix(L, k)],
        "residuals": {name: tagged(v, 1e-8 if name == "roundtrip" else 1e-9) for name, v in res.items()},
        "ok": ok,
    }
    inputs = {"phi": args.phi, "alpha": args.alpha, "beta": args.beta, "k": [rational_str(x) for x in k.k]}
    return _report("little-group element", inputs, results), ok


def cmd_little_verify(args) -> tuple[dict, bool]:
    if args.samples < 20:
        raise InputError("--samples must be at least 20")
    k = _parse_k(args.k)
    kf = np.array([float(x) for x in k.k])
    elems = lg.random_little(k, args.samples, args.seed)
    roundtrip = metric = fixes = tri = 0.0
    for g, L in elems:
        roundtrip = max(roundtrip, g.distance(lg.little_to_e2(L, k)))
        metric = max(metric, lg.lorentz_residual(L))
        fixes = max(fixes, float(np.max(np.abs(L @ kf - kf))))
        tri = max(tri, lg.block_triangular_residual(L, k))
    hom = 0.0
    for (g1, L1), (g2, L2) in zip(elems[::2], elems[1::2]):
        hom = max(hom, lg.little_to_e2(L1 @ L2, k).distance(lg.compose(g1, g2)))
    invariance = {}
    for tag in ("Mpar", "Mplus1", "Mminus1", "Mperp"):
        S = lg.standard_subspace(tag, k)
        invariance[tag] = max(lg.subspace_invariance_check(L, S)[1] for _, L in elems)
    kk, e1, _, n = lg.frame(k)
    orbits = {
        "outside_perp": lg.orbit_span(n, k, args.samples, args.seed),
        "perp_not_par": lg.orbit_span(e1, k, args.samples, args.seed),
        "k": lg.orbit_span(kk, k, args.samples, args.seed),
    }
    ok = (
        roundtrip <= 1e-8
        and metric <= 1e-9
        and fixes <= 1e-9
        and hom <= 1e-8
        and tri <= 1e-9
        and all(v <= 1e-9 for v in invariance.values())
        and orbits == {"outside_perp": 4, "perp_not_par": 3, "k": 1}
    )
    results = {
        "roundtrip": tagged(roundtrip, 1e-8),
        "metric": tagged(metric),
        "fixes_k": tagged(fixes),
        "homomorphism": tagged(hom, 1e-8),
        "block_triangular": tagged(tri),
        "invariance": {t: tagged(v) for t, v in invariance.items()},
        "orbit_span": orbits,
        "ok": ok,
    }
    inputs = {"samples": args.samples, "k": [rational_str(x) for x in k.k]}
    return _report("little-group verify", inputs, results, seed=args.seed), ok


def cmd_classical(args) -> tuple[dict, bool]:
    doc = read_json(args.input)
    modes = load_modes(doc)
    inputs = {"input": args.input, "field": modes.field, "modes": len(modes)}
    name = f"classical {args.action}"
    if args.action == "energy":
        c = load_state(doc, modes)
        P = cm.energy_momentum(c)
        G0 = cm.generator(c, cm.time_flow(c))
        ok = G0 == P[0]
        results = {"P": [rational_str(x) for x in P], "generator_time": rational_str(G0), "ok": ok}
        return _report(name, inputs, results), ok
    if args.action == "generator":
        c = load_state(doc, modes)
        P = cm.energy_momentum(c)
        gens = [cm.generator(c, cm.shift_flow(c, nu)) for nu in range(4)]
        ok = tuple(gens) == P
        results = {"generator": [rational_str(x) for x in gens], "P": [rational_str(x) for x in P], "ok": ok}
        return _report(name, inputs, results), ok
    if args.action == "radiate":
        J = load_currents(doc, modes)
        a, lorentz_ok = cm.radiated_field(J)
        field_ok = all(not r for r in cm.lorentz_residuals(a))
        ok = field_ok == lorentz_ok
        results = {
            "a": [[x.to_pair() for x in amps] for amps in a.amplitudes],
            "lorentz_ok": lorentz_ok,
            "current_residuals": [r.to_pair() for r in cm.lorentz_residuals(J)],
            "ok": ok,
        }
        return _report(name, inputs, results), ok
    if args.action == "bracket":
        obs = doc.get("observables")
        if not isinstance(obs, dict) or "f" not in obs or "g" not in obs:
            raise InputError("bracket input needs observables.f and observables.g")
        f, g = load_observable(obs["f"]), load_observable(obs["g"])
        weighted = bool(doc.get("weighted", False))
        fg = cm.poisson_bracket(f, g, modes, weighted)
        gf = cm.poisson_bracket(g, f, modes, weighted)
        ok = fg == -gf
        results = {"bracket": fg.to_pair(), "weighted": weighted, "antisymmetric": ok, "ok": ok}
        return _report(name, inputs, results), ok
    raise InputError(f"unknown classical action {args.action!r}")


def cmd_lagrangian1d(args) -> tuple[dict, bool]:
    try:
        a, b, c = (parse_rational(x) for x in (args.a, args.b, args.c))
        shifts = [parse_rational(x) for x in args.shift.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(str(exc)) from None
    L = cm.QuadraticLagrangian1D(a, b, c)
    sc, sd = (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))
    base = cm.lagrangian_1d_symplectic(L, sc, sd)
    shifted = [cm.lagrangian_1d_symplectic(cm.QuadraticLagrangian1D(a, b + s, c), sc, sd) for s in shifts]
    ok = all(v == base for v in shifted)
    results = {"omega": rational_str(base), "omega_shifted": [rational_str(v) for v in shifted], "invariant": ok}
    inputs = {"a": rational_str(a), "b": rational_str(b), "c": rational_str(c), "shifts": [rational_str(s) for s in shifts]}
    return _report("lagrangian1d", inputs, results), ok


def cmd_equiv(args) -> tuple[dict, bool]:
    if args.samples < 1:
        raise InputError("--samples must be positive")
    M1 = np.array(load_matrix(read_json(args.m1)))
    M2 = np.array(load_matrix(read_json(args.m2)))
    eps = cm.inner_equivalence(M1, M2)
    rng = np.random.default_rng(args.seed)
    slack = 0.0
    for _ in range(args.samples):
        z = rng.normal(size=4) + 1j * rng.normal(size=4)
        q1 = float(np.real(z.conj() @ M1 @ z))
        q2 = float(np.real(z.conj() @ M2 @ z))
        slack = max(slack, eps * q2 - q1, eps * q1 - q2)
    ok = slack <= 1e-10 * max(1.0, float(np.abs(M1).max()), float(np.abs(M2).max()))
    results = {"epsilon": tagged(eps, 1e-10), "max_violation": tagged(slack, 1e-10), "ok": ok}
    inputs = {"m1": args.m1, "m2": args.m2, "samples": args.samples}
    return _report("equiv", inputs, results, seed=args.seed), ok


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fieldquant", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("quantize", help="Gram matrices and inertia level by level")
    q.add_argument("--system", choices=["oscillator", "scalar", "em"], required=True)
    q.add_argument("--variant", type=int, choices=[1, 2], default=1)
    q.add_argument("--levels", type=int, default=3)
    q.add_argument("--input", help="mode-set JSON (default: built-in modes)")
    q.set_defaults(func=cmd_quantize)

    g = sub.add_parser("gb", help="constrained photon states at one momentum")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", default="1,0,0,1")
    g.set_defaults(func=cmd_gb)

    lgp = sub.add_parser("little-group", help="little group of a light-like vector")
    lsub = lgp.add_subparsers(dest="action", required=True)
    el = lsub.add_parser("element")
    el.add_argument("--phi", type=float, default=0.0)
    el.add_argument("--alpha", type=float, default=0.0)
    el.add_argument("--beta", type=float, default=0.0)
    el.add_argument("--k", default="1,0,0,1")
    el.set_defaults(func=cmd_little_element)
    ve = lsub.add_parser("verify")
    ve.add_argument("--samples", type=int, default=100)
    ve.add_argument("--seed", type=int, default=0)
    ve.add_argument("--k", default="1,0,0,1")
    ve.set_defaults(func=cmd_little_verify)

    c = sub.add_parser("classical", help="mode-space classical field calculations")
    c.add_argument("action", choices=["energy", "radiate", "bracket", "generator"])
    c.add_argument("--input", required=True)
    c.set_defaults(func=cmd_classical)

    l1 = sub.add_parser("lagrangian1d", help="symplectic form of L = a/2 v^2 + b x v - c/2 x^2")
    l1.add_argument("--a", required=True)
    l1.add_argument("--b", default="0")
    l1.add_argument("--c", default="0")
    l1.add_argument("--shift", default="5", help="comma-separated shifts of b")
    l1.set_defaults(func=cmd_lagrangian1d)

    e = sub.add_parser("equiv", help="equivalence constant of two scalar products")
    e.add_argument("--m1", required=True)
    e.add_argument("--m2", required=True)
    e.add_argument("--samples", type=int, default=100)
    e.add_argument("--seed", type=int, default=0)
    e.set_defaults(func=cmd_equiv)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report, ok = args.func(args)
    except (InputError, FieldQuantError, ValueError, KeyError, TypeError, OSError, json.JSONDecodeError) as exc:
        print(f"fieldquant: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
