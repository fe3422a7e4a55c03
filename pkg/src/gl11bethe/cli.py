"""Command-line front end producing deterministic JSON reports."""

from __future__ import annotations

import argparse
import json
import sys
from math import comb

from . import __version__
from .bethe import (
    enumerate_divisors,
    monic_divisors,
    multiplicity_binomial,
    phi_poly,
    total_divisor_count,
    verify_onshell,
    zeta,
)
from .errors import (
    DegenerateWeight,
    EigenvalueNotInField,
    NonSplitting,
    OutOfDeskRange,
    ParseError,
    TailNotVanishing,
)
from .field import format_scalar
from .gaudin import structural_identities, transfer_G12, transfer_T
from .linalg import OperatorMatrix
from .model import ModelSpec, integer_value, load_model
from .poly import split_linear_factors
from .psdo import berezinian, check_universal_oper, gaudin_series, oper_Dy, oper_eigen_check
from .spectral import spectral_report
from .tensor import build_tensor_module
from .weyl import (
    MAX_N,
    WeylModule,
    character_series,
    extract_BC,
    invariant_dimension_by_trace,
    invariant_dimensions,
    weyl_module,
)

COMMANDS = ("verify", "bae", "spectrum", "oper", "character", "weyl")
EXPLICIT_CHARACTER_N = 3
EXPLICIT_CHARACTER_DEGREE = 6


class Report:
    def __init__(self, command: str, config: dict, model: ModelSpec):
        self.command = command
        self.config = config
        self.model = model
        self.checks = []
        self.data = {}

    def check(self, name: str, claim: str, ok, payload=None):
        status = "skip" if ok is None else ("pass" if ok else "fail")
        self.checks.append({"name": name, "claim": claim, "status": status, "payload": payload})
        return ok

    @property
    def failed(self) -> list:
        return [c for c in self.checks if c["status"] == "fail"]

    def to_dict(self) -> dict:
        return {
            "tool": "gl11bethe",
            "version": __version__,
            "command": self.command,
            "config": self.config,
            "model": self.model.to_dict(),
            "data": self.data,
            "checks": self.checks,
            "status": "fail" if self.failed else "pass",
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _sectors(arg, top: int) -> list[int]:
    if arg == "all":
        return list(range(top + 1))
    return [int(arg)] if 0 <= int(arg) <= top else []


def _roots_payload(roots):
    return [[format_scalar(a), m] for a, m in roots]


def run_structure(rep: Report, model: ModelSpec):
    for name, ok in structural_identities(model).items():
        rep.check(name, "transfer-matrix identities", ok)


def split_phi(model: ModelSpec):
    """``(zeta, phi, roots)``; a ``NonSplitting`` error names ``phi``."""
    z, phi = phi_poly(model)
    try:
        roots = split_linear_factors(phi, model.field)
    except NonSplitting as exc:
        raise NonSplitting(phi, f"phi = {phi.to_str()} does not split over {model.field.value}") from exc
    return z, phi, roots


def run_bae(rep: Report, model: ModelSpec, sectors):
    z, phi, roots = split_phi(model)
    rep.data["zeta"] = z.to_str()
    rep.data["phi"] = phi.to_str()
    rep.data["phi_roots"] = _roots_payload(roots)
    rep.check(
        "number of divisors",
        "divisors of phi index the spectrum",
        total_divisor_count(model) == sum(len(enumerate_divisors(model, l)) for l in range(phi.degree + 1)),
        {"count": total_divisor_count(model)},
    )
    mod = build_tensor_module(model)
    out = {}
    for l in sectors:
        recs = []
        for sol in enumerate_divisors(model, l):
            on = verify_onshell(model, sol)
            status = "pole" if on.pole else ("zero" if not on.nonzero else ("ok" if on.ok else "fail"))
            rec = {
                "divisor": sol.y.to_str(),
                "roots": [format_scalar(t) for t in sol.roots],
                "eigenvalue_H": on.eig_H.to_str(),
                "eigenvalue_T": on.eig_T.to_str(),
                "bethe_vector": status,
            }
            recs.append(rec)
            if on.nonzero:
                rep.check(
                    f"on-shell l={l} y={rec['divisor']}",
                    "Bethe vectors are singular eigenvectors with the predicted eigenvalues",
                    on.ok,
                    {"singular": on.singular, "eigen_H": on.eigen_H, "eigen_T": on.eigen_T},
                )
            elif sol.is_simple() and not on.pole:
                rep.check(
                    f"nonvanishing l={l} y={rec['divisor']}",
                    "Bethe vectors for simple roots are nonzero",
                    False,
                )
        out[str(l)] = recs
        rep.check(
            f"sector dim l={l}",
            "singular sector has dimension binom(k-1, l)",
            len(mod.singular_basis(l)) == comb(model.k - 1, l),
            {"dim": len(mod.singular_basis(l)), "expected": comb(model.k - 1, l)},
        )
    rep.data["divisors"] = out


def run_spectrum(rep: Report, mod, sectors, seed: int):
    sr = spectral_report(mod, sectors=sectors, seed=seed)
    rep.data["spectrum"] = sr.to_dict()
    for s in sr.sectors:
        rep.check(
            f"spectrum l={s.l}",
            "simple spectrum, generalized dimensions, Frobenius and cyclic Bethe algebra",
            s.ok,
            {"failures": s.failures} if s.failures else None,
        )


def run_oper(rep: Report, model: ModelSpec, sectors, N: int):
    mod = build_tensor_module(model)
    G = gaudin_series(mod, N)
    g1, g2 = transfer_G12(mod)
    rep.check("G0 = Id", "Berezinian coefficients", G[0] == OperatorMatrix.identity(mod.dim), None)
    rep.check("G1 = e11(x) + e22(x)", "Berezinian coefficients", G[1] == g1)
    rep.check("G2 = T", "Berezinian coefficients", G[2] == g2 and G[2] == transfer_T(mod))
    ber, ber2 = berezinian(mod, N), berezinian(mod, N + 2)
    rep.check(f"truncation stability N={N} vs {N + 2}", "Berezinian coefficients", ber2.agrees_with(ber, N))
    uni = check_universal_oper(mod, N)
    rep.check(
        "universal oper",
        "Berezinian equals the universal oper",
        uni["ok"],
        {"full": uni["full"], "sectors": {str(k): v for k, v in sorted(uni["sectors"].items())}},
    )
    for l in sectors:
        for sol in enumerate_divisors(model, l):
            on = verify_onshell(model, sol)
            if not on.nonzero:
                continue
            ok = oper_eigen_check(model, on.vector, sol.y, N)
            dy = oper_Dy(model, sol.y, N)
            rep.check(
                f"oper eigenvalue l={l} y={sol.y.to_str()}",
                "Berezinian acts on Bethe vectors by the scalar oper D_y",
                ok,
                {"D_y": [dy.coeff(r).to_str() for r in range(N + 1)]},
            )


def _model_parts(model: ModelSpec):
    try:
        nparts = [integer_value(w.size) for w in model.weights]
    except ValueError:
        raise ParseError("weights: alpha + beta must be positive integers here") from None
    if any(m <= 0 for m in nparts):
        raise ParseError("weights: alpha + beta must be positive integers here")
    return nparts


def run_character(rep: Report, model: ModelSpec, sectors_arg, D: int):
    n = sum(_model_parts(model))
    if n > MAX_N:
        raise OutOfDeskRange(f"n = {n} exceeds {MAX_N}")
    rep.data["n"] = n
    out = {}
    for l in _sectors(sectors_arg, n):
        ch = character_series(n, l, D)
        sing = character_series(n, l, D, singular=True)
        out[str(l)] = {"character": str(ch), "singular_character": str(sing)}
        trace = [invariant_dimension_by_trace(n, l, d) for d in range(D + 1)]
        rep.check(
            f"character n={n} l={l} vs trace",
            "graded character of the invariant component",
            trace == ch.as_ints(),
            {"trace": trace},
        )
        if n <= EXPLICIT_CHARACTER_N:
            top = min(D, EXPLICIT_CHARACTER_DEGREE)
            dims = [invariant_dimensions(n, l, d) for d in range(top + 1)]
            rep.check(
                f"character n={n} l={l} vs explicit basis",
                "graded character of the invariant component and its singular part",
                [a for a, _ in dims] == ch.as_ints()[: top + 1] and [b for _, b in dims] == sing.as_ints()[: top + 1],
                {"degrees": top, "dims": [list(x) for x in dims]},
            )
    rep.data["characters"] = out


def _weyl_checks(rep: Report, mod: WeylModule):
    n = mod.n
    rep.check("dim W = 2^n", "Weyl module dimension", mod.dim == 2 ** n, {"dim": mod.dim})
    rep.check("eta relation", "Weyl module highest-vector relation", not any(mod.eta_relation_vector()))
    g1, g2 = transfer_G12(mod)
    rep.check("G1 = zeta Id", "transfer-matrix identities", g1 == OperatorMatrix.scalar(mod.dim, mod.zeta))
    rep.check("T = G2", "transfer-matrix identities", transfer_T(mod) == g2)
    for l in range(n):
        m = len(mod.singular_basis(l))
        try:
            B, C = extract_BC(mod, l)
        except TailNotVanishing as exc:
            rep.check(f"B2 = nl, C = a, l={l}", "B_2 = nl and B_i = 0 for i > n", False, {"error": str(exc)})
            continue
        ok = C == mod.a and (not B or B[0] == OperatorMatrix.scalar(m, n * l))
        rep.check(f"B2 = nl, C = a, l={l}", "B_2 = nl and B_i = 0 for i > n", ok, {"singular_dim": m})


def run_weyl(rep: Report, model: ModelSpec, sectors_arg, seed: int):
    nparts = _model_parts(model)
    mod = weyl_module(tuple(nparts), tuple(model.points))
    psi = mod.eta.derivative()
    rep.data["nparts"] = nparts
    rep.data["eta"] = mod.eta.to_str()
    rep.data["psi"] = psi.to_str()
    try:
        roots = split_linear_factors(psi, mod.field)
    except NonSplitting as exc:
        raise NonSplitting(psi, f"psi = {psi.to_str()} does not split over {mod.field.value}") from exc
    rep.data["psi_roots"] = _roots_payload(roots)
    count, weighted = 0, 0
    for l in range(mod.n):
        for rs in monic_divisors(roots, l):
            count += 1
            weighted += multiplicity_binomial(roots, rs)
    rep.check(
        "sum of generalized dims = 2^(n-1)",
        "Weyl spectrum indexed by divisors of psi",
        weighted == 2 ** (mod.n - 1),
        {"divisors": count, "weighted": weighted},
    )
    _weyl_checks(rep, mod)
    run_spectrum(rep, mod, _sectors(sectors_arg, mod.n - 1), seed)


def run(args) -> Report:
    model = load_model(args.model)
    config = {
        "command": args.command,
        "model": str(args.model),
        "order": args.order,
        "qdegree": args.qdegree,
        "sector": args.sector,
        "seed": args.seed,
    }
    rep = Report(args.command, config, model)
    cmd = args.command
    if cmd in ("character", "weyl"):
        if cmd == "character":
            run_character(rep, model, args.sector, args.qdegree)
        else:
            run_weyl(rep, model, args.sector, args.seed)
        return rep
    model.check_nondegenerate()
    sectors = _sectors(args.sector, model.k - 1)
    if model.sector is not None and args.sector == "all":
        sectors = [model.sector]
    rep.data["zeta"] = zeta(model).to_str()
    if cmd == "verify":
        run_structure(rep, model)
    if cmd in ("verify", "bae"):
        run_bae(rep, model, sectors)
    split_phi(model)
    if cmd in ("verify", "spectrum"):
        run_spectrum(rep, model, sectors, args.seed)
    if cmd in ("verify", "oper"):
        run_oper(rep, model, sectors, args.order)
    return rep


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gl11bethe", description="Exact verification of gl(1|1) Gaudin models.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--model", required=True, help="model file (JSON)")
    p.add_argument("--sector", default="all", help="sector L or 'all'")
    p.add_argument("--order", type=int, default=6, help="pseudo-differential truncation N")
    p.add_argument("--qdegree", type=int, default=8, help="q-degree D for characters")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the report here instead of stdout")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.sector != "all" and not args.sector.lstrip("-").isdigit():
        print(f"error: --sector must be an integer or 'all', got {args.sector!r}", file=sys.stderr)
        return 2
    if args.order < 2 or args.qdegree < 0:
        print("error: --order must be >= 2 and --qdegree >= 0", file=sys.stderr)
        return 2
    try:
        rep = run(args)
    except NonSplitting as exc:
        print(f"error: NonSplitting: {exc}", file=sys.stderr)
        return 2
    except (ParseError, DegenerateWeight, OutOfDeskRange, EigenvalueNotInField) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    text = rep.dumps()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for c in rep.failed:
        print(f"FAILED {c['name']} ({c['claim']}): {json.dumps(c['payload'], sort_keys=True)}", file=sys.stderr)
    return 1 if rep.failed else 0


if __name__ == "__main__":
    sys.exit(main())
