"""Command-line interface: reports, identity verification, corpus runs.

Commands
--------
report        invariants of one (phi, f) pair as JSON or aligned text
verify        assert every cross-route identity over a corpus; exit 1 on failure
corpus        full reports for every corpus pair, expected values checked
tau-routes    Tjurina number through tangent-module quotients for given forms
oracle-check  replay every colength of a report through the jet oracle

Exit status: 0 success, 1 failed assertion (verify/corpus/tau-routes/
oracle-check), 2 input error.  Reports are byte-identical for fixed seed and
inputs; the per-germ random stream is derived from the seed and the germ
name, so corpus results do not depend on evaluation order.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .corpus import GERM_LEVEL_KEYS, GermSpec, load_corpus
from .errors import ParseError
from .invariants import (
    DEFAULT_DRAWS,
    DEFAULT_SEED,
    UNDEFINED,
    GermPair,
    InvariantReport,
    br_via_trivial,
    full_report,
    is_finitely_determined,
    milnor_number,
    morsification_count,
    polar_multiplicity,
    theta_quotient_dim,
    tjurina_number,
    tjurina_via_linear,
)
from .oracle import (
    NO_CERTIFICATE,
    jet_colength,
    jet_module_colength,
    verify_certificate,
    verify_module_certificate,
)
from .parser import parse_polynomial
from .poly import PolyVector, render_polynomial
from .standard_basis import INFINITE, is_finite, quotient_dimension
from .tangent_fields import apply_differential, theta_x, trivial_generators

REPORT_KEYS = (
    "name", "vars", "phi", "f", "mu_f", "mu_X", "tau_X", "mu_icis",
    "br_direct", "br_trivial", "br_formula", "br_section", "theta_quotient",
    "polar_mult", "euler_obstruction", "N", "finitely_determined",
    "routes_agree", "seed",
)


def _germ_rng(seed: int, name: str) -> random.Random:
    # string seeding is stable across runs and platforms
    return random.Random(f"{seed}:{name}")


def _encode(v):
    if v is INFINITE or v == INFINITE:
        return "INFINITE"
    if v is UNDEFINED or v == UNDEFINED:
        return "UNDEFINED"
    return v


def report_dict(name: str, pair: GermPair, rep: InvariantReport, seed: int) -> dict:
    return {
        "name": name,
        "vars": list(pair.vars),
        "phi": render_polynomial(pair.phi, pair.vars),
        "f": render_polynomial(pair.f, pair.vars),
        "mu_f": _encode(rep.mu_f),
        "mu_X": _encode(rep.mu_X),
        "tau_X": _encode(rep.tau_X),
        "mu_icis": _encode(rep.mu_icis),
        "br_direct": _encode(rep.br_direct),
        "br_trivial": _encode(rep.br_trivial_route),
        "br_formula": _encode(rep.br_formula),
        "br_section": _encode(rep.br_section_route),
        "theta_quotient": _encode(rep.theta_quotient),
        "polar_mult": _encode(rep.polar_mult),
        "euler_obstruction": _encode(rep.euler_obstruction),
        "N": _encode(rep.morsification_N),
        "finitely_determined": rep.finitely_determined,
        "routes_agree": rep.routes_agree,
        "seed": seed,
    }


def _print_text(doc: dict, out) -> None:
    width = max(len(k) for k in doc)
    for k in REPORT_KEYS:
        v = doc[k]
        if isinstance(v, list):
            v = ",".join(v)
        print(f"{k:<{width}}  {v}", file=out)


def _emit(docs, fmt, out) -> None:
    if fmt == "json":
        print(json.dumps(docs if len(docs) != 1 else docs[0], indent=2), file=out)
    else:
        for i, doc in enumerate(docs):
            if i:
                print(file=out)
            _print_text(doc, out)


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


def _parse_pair(args) -> GermPair:
    names = tuple(v.strip() for v in args.vars.split(","))
    phi = parse_polynomial(args.phi, names)
    f = parse_polynomial(args.f, names)
    return GermPair(names, phi, f)


def cmd_report(args) -> int:
    pair = _parse_pair(args)
    rep = full_report(pair, draws=args.draws, rng=_germ_rng(args.seed, args.name))
    if args.timings:
        for k, v in rep.timings.items():
            print(f"timing {k}: {v:.3f}s", file=sys.stderr)
    _emit([report_dict(args.name, pair, rep, args.seed)], args.format, sys.stdout)
    return 0


# ---------------------------------------------------------------------------
# corpus
# ---------------------------------------------------------------------------


def _run_germ(spec: GermSpec, seed: int, draws: int) -> list[dict]:
    docs = []
    for f_src in spec.f_list:
        pair = spec.pair(f_src)
        rep = full_report(pair, draws=draws, rng=_germ_rng(seed, spec.name))
        docs.append(report_dict(spec.name, pair, rep, seed))
    return docs


def _corpus_problems(spec: GermSpec, docs: list[dict]) -> list[str]:
    problems = []
    for key, want in spec.expected.items():
        got = docs[0][key]
        if got != want:
            problems.append(f"{spec.name}: expected {key}={want}, got {got}")
    for doc in docs:
        if not doc["routes_agree"]:
            problems.append(f"{spec.name} f={doc['f']}: routes disagree")
    return problems


def cmd_corpus(args) -> int:
    specs = load_corpus(args.corpus)
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            futures = [pool.submit(_run_germ, spec, args.seed, args.draws) for spec in specs]
            results = [f.result() for f in futures]
    else:
        results = [_run_germ(spec, args.seed, args.draws) for spec in specs]
    problems = []
    docs = []
    for spec, germ_docs in zip(specs, results):
        docs.extend(germ_docs)
        problems.extend(_corpus_problems(spec, germ_docs))
    _emit(docs, args.format, sys.stdout)
    for p in problems:
        print(f"FAIL {p}", file=sys.stderr)
    return 1 if problems else 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


class _Checker:
    def __init__(self):
        self.lines = []
        self.failed = 0

    def check(self, ok: bool, germ: str, what: str, detail: str = ""):
        if ok:
            self.lines.append(("ok", germ, what, detail))
        else:
            self.failed += 1
            self.lines.append(("FAIL", germ, what, detail))

    def note(self, germ: str, what: str, detail: str = ""):
        self.lines.append(("skip", germ, what, detail))


def _tau_route_forms(names) -> list[str]:
    if len(names) == 2:
        return ["x", "y", "x+y", "x+2y", "x-y"]
    return ["x", "y", "z", "x+y+z", "x+2y+3z"]


SYMMETRY_PAIRS = (
    ("x^3+y^2", "x^2+y^3"),
    ("x^3+y^2", "x^5+y^5+x^2*y^2"),
    ("x^2+y^2", "x^3+y^4"),
)


def _verify_germ(spec: GermSpec, seed: int, draws: int, chk: _Checker) -> None:
    phi = parse_polynomial(spec.phi, spec.vars)
    name = spec.name
    mu_x = milnor_number(phi)
    if not is_finite(mu_x):
        chk.note(name, "isolated-hypothesis", "mu(X) infinite; identity checks skipped")
        for f_src in spec.f_list:
            fd = is_finitely_determined(spec.pair(f_src))
            chk.check(not fd, name, f"non-isolated-not-determined f={f_src}")
        return

    tau = tjurina_number(phi)
    chk.check(theta_quotient_dim(phi) == tau, name, "tangent-quotient-equals-tau",
              f"tau={tau}")

    # Tjurina via linear forms, including non-generic directions, for every
    # form that is finitely determined over X (the theorem's effective case)
    agreed = 0
    for p_src in _tau_route_forms(spec.vars):
        p = parse_polynomial(p_src, spec.vars)
        if not is_finitely_determined(GermPair(spec.vars, phi, p)):
            chk.note(name, f"tau-route p={p_src}", "not finitely determined; skipped")
            continue
        value = tjurina_via_linear(phi, p)
        chk.check(value == tau, name, f"tau-route p={p_src}", f"value={value}")
        if value == tau:
            agreed += 1
    chk.check(agreed >= 3, name, "tau-route-coverage", f"{agreed} forms agreed")

    fields = theta_x(phi)
    triv = trivial_generators(phi)
    rng = _germ_rng(seed, name)
    polar = polar_multiplicity(phi, draws, rng)

    if len(spec.vars) == 2:
        sign = 1 if phi.n % 2 == 0 else -1
        eu = polar.value - mu_x + sign
        chk.check(eu == phi.multiplicity(), name, "curve-euler-equals-multiplicity",
                  f"Eu={eu} mult={phi.multiplicity()}")

    # generic linear form achieving the polar multiplicity has no
    # Morsification critical points away from the origin
    n_generic = morsification_count(GermPair(spec.vars, phi, polar.form),
                                    draws, _germ_rng(seed, name))
    chk.check(n_generic == 0, name, "generic-morsification-zero", f"N={n_generic}")

    quotients = []
    for f_src in spec.f_list:
        pair = spec.pair(f_src)
        rep = full_report(pair, draws=draws, rng=_germ_rng(seed, name))
        if not rep.finitely_determined:
            chk.check(rep.br_direct == INFINITE, name,
                      f"finiteness-lemma f={f_src}", "br_direct infinite")
            continue
        four = [rep.br_direct, rep.br_trivial_route, rep.br_formula, rep.br_section_route]
        chk.check(all(is_finite(v) for v in four) and len(set(four)) == 1,
                  name, f"main-theorem f={f_src}", f"routes={four}")
        trivial_colength = next(r.value for r in rep.records if r.label == "df_trivial")
        chk.check(trivial_colength == rep.mu_f + rep.mu_icis + rep.mu_X,
                  name, f"trivial-route-identity f={f_src}",
                  f"{trivial_colength} = {rep.mu_f}+{rep.mu_icis}+{rep.mu_X}")
        chk.check(rep.morsification_N >= 0, name, f"morsification-nonnegative f={f_src}",
                  f"N={rep.morsification_N}")
        if "weighted-homogeneous" in spec.tags:
            chk.check(rep.mu_X == rep.tau_X, name, "weighted-homogeneous-mu-tau")
            chk.check(rep.br_direct == rep.mu_f + rep.mu_icis, name,
                      f"weighted-homogeneous-route f={f_src}")
        numer = [PolyVector([apply_differential(pair.f, xi)]) for xi in fields]
        denom = [PolyVector([apply_differential(pair.f, xi)]) for xi in triv]
        quotients.append((f_src, quotient_dimension(numer, denom)))
    for f_src, q in quotients:
        chk.check(q == tau, name, f"f-independence f={f_src}", f"quotient={q}")


def _verify_symmetry(chk: _Checker) -> None:
    names = ("x", "y")
    for f_src, phi_src in SYMMETRY_PAIRS:
        f = parse_polynomial(f_src, names)
        phi = parse_polynomial(phi_src, names)
        fwd = GermPair(names, phi, f)
        rev = GermPair(names, f, phi)
        if not (is_finitely_determined(fwd) and is_finitely_determined(rev)):
            chk.note("-", f"symmetry {f_src} | {phi_src}", "not doubly determined")
            continue
        lhs = br_via_trivial(fwd) - br_via_trivial(rev)
        rhs = tjurina_number(f) - tjurina_number(phi)
        chk.check(lhs == rhs, "-", f"symmetry {f_src} | {phi_src}", f"{lhs} == {rhs}")


def cmd_verify(args) -> int:
    specs = load_corpus(args.corpus)
    chk = _Checker()
    for spec in specs:
        _verify_germ(spec, args.seed, args.draws, chk)
    _verify_symmetry(chk)
    if args.format == "json":
        payload = {
            "checks": [
                {"status": s, "germ": g, "check": w, "detail": d}
                for s, g, w, d in chk.lines
            ],
            "failed": chk.failed,
        }
        print(json.dumps(payload, indent=2))
    else:
        for status, germ, what, detail in chk.lines:
            print(f"{status:<4} {germ:<16} {what}" + (f"  [{detail}]" if detail else ""))
        total = sum(1 for line in chk.lines if line[0] != "skip")
        print(f"\n{total} checks, {chk.failed} failed")
    return 1 if chk.failed else 0


# ---------------------------------------------------------------------------
# tau-routes
# ---------------------------------------------------------------------------


def cmd_tau_routes(args) -> int:
    names = tuple(v.strip() for v in args.vars.split(","))
    phi = parse_polynomial(args.phi, names)
    tau = tjurina_number(phi)
    rows = [("tjurina_number", _encode(tau)), ("theta_quotient", _encode(theta_quotient_dim(phi)))]
    failures = 0
    if is_finite(tau) and rows[1][1] != tau:
        failures += 1
    for p_src in args.p:
        p = parse_polynomial(p_src, names)
        value = tjurina_via_linear(phi, p)
        determined = is_finitely_determined(GermPair(names, phi, p))
        rows.append((f"dp-quotient p={p_src}", _encode(value)))
        if determined and value != tau:
            failures += 1
        if not determined:
            rows.append((f"note p={p_src}", "not finitely determined over X; "
                         "identity not asserted"))
    if args.format == "json":
        print(json.dumps({"rows": [list(r) for r in rows], "failed": failures}, indent=2))
    else:
        width = max(len(r[0]) for r in rows)
        for k, v in rows:
            print(f"{k:<{width}}  {v}")
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# oracle-check
# ---------------------------------------------------------------------------


def _replay_records(name: str, records, cap: int, chk: _Checker) -> None:
    for rec in records:
        if not is_finite(rec.value):
            chk.note(name, f"oracle {rec.label}", "infinite colength; oracle abstains")
            continue
        if rec.kind == "ideal":
            gens = [v.components[0] if isinstance(v, PolyVector) else v
                    for v in rec.generators]
            value, cert = jet_colength(gens, cap)
            sound = cert is not None and verify_certificate(gens, cert)
        else:
            value, cert = jet_module_colength(list(rec.generators), rec.rank, cap)
            sound = cert is not None and verify_module_certificate(
                list(rec.generators), rec.rank, cert)
        chk.check(value == rec.value and sound, name, f"oracle {rec.label}",
                  f"engine={rec.value} oracle={_encode(value) if value is not NO_CERTIFICATE else 'NO_CERTIFICATE'}")


def cmd_oracle_check(args) -> int:
    chk = _Checker()
    if args.corpus:
        specs = load_corpus(args.corpus)
        for spec in specs:
            for f_src in spec.f_list:
                pair = spec.pair(f_src)
                rep = full_report(pair, draws=args.draws, rng=_germ_rng(args.seed, spec.name))
                _replay_records(f"{spec.name} f={f_src}", rep.records, args.cap, chk)
    else:
        if not (args.vars and args.phi and args.f):
            print("oracle-check needs --corpus or all of --vars/--phi/--f", file=sys.stderr)
            return 2
        pair = _parse_pair(args)
        rep = full_report(pair, draws=args.draws, rng=_germ_rng(args.seed, args.name))
        _replay_records(args.name, rep.records, args.cap, chk)
    for status, germ, what, detail in chk.lines:
        print(f"{status:<4} {germ:<24} {what}" + (f"  [{detail}]" if detail else ""))
    total = sum(1 for line in chk.lines if line[0] != "skip")
    print(f"\n{total} replays, {chk.failed} failed")
    return 1 if chk.failed else 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="locsing",
                                 description="singularity invariants of hypersurface germs")
    ap.add_argument("--version", action="version", version=f"locsing {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, germ=True):
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--draws", type=int, default=DEFAULT_DRAWS)
        p.add_argument("--format", choices=("json", "text"), default="json")
        if germ:
            p.add_argument("--vars", required=True, help="comma-separated variable names")
            p.add_argument("--phi", required=True, help="defining equation of X")

    p = sub.add_parser("report", help="invariants of one (phi, f) pair")
    common(p)
    p.add_argument("--f", required=True, help="function germ on X")
    p.add_argument("--name", default="adhoc")
    p.add_argument("--timings", action="store_true", help="print route timings to stderr")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("verify", help="assert the cross-route identities over a corpus")
    common(p, germ=False)
    p.add_argument("--corpus", default="builtin", help="'builtin' or a corpus JSON path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("corpus", help="reports for every corpus pair")
    common(p, germ=False)
    p.add_argument("--corpus", default="builtin")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("tau-routes", help="Tjurina number through tangent-module quotients")
    common(p)
    p.add_argument("--p", action="append", required=True,
                   help="linear form; repeatable")
    p.set_defaults(func=cmd_tau_routes)

    p = sub.add_parser("oracle-check", help="replay report colengths through the jet oracle")
    common(p, germ=False)
    p.add_argument("--vars")
    p.add_argument("--phi")
    p.add_argument("--f")
    p.add_argument("--name", default="adhoc")
    p.add_argument("--corpus")
    p.add_argument("--cap", type=int, default=40)
    p.set_defaults(func=cmd_oracle_check)

    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
