"""Built-in corpus of hypersurface germs and corpus file loading.

Every `expected` value below was computed by the standard-basis engine and
independently reproduced by the jet oracle with a verified Nakayama
certificate; the classical values (ADE Milnor numbers, multiplicities,
curve Euler obstructions) agree.  The umbrella-like surface is deliberately
non-isolated and carries no expected values: it exercises the INFINITE and
UNDEFINED paths.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .invariants import GermPair
from .parser import parse_polynomial

GERM_LEVEL_KEYS = ("mu_X", "tau_X", "theta_quotient", "polar_mult", "euler_obstruction")


@dataclass(frozen=True)
class GermSpec:
    """One corpus record: a germ, its test functions, and expected invariants."""

    name: str
    vars: tuple[str, ...]
    phi: str
    f_list: tuple[str, ...]
    expected: dict = field(default_factory=dict)
    tags: tuple[str, ...] = ()

    def pair(self, f_src: str) -> GermPair:
        phi = parse_polynomial(self.phi, self.vars)
        f = parse_polynomial(f_src, self.vars)
        return GermPair(self.vars, phi, f)


def _curve(name, phi, mu, tau, polar, eu, f_list=("x+2y", "y", "x^2-y^2"), tags=()):
    return GermSpec(
        name=name, vars=("x", "y"), phi=phi, f_list=tuple(f_list),
        expected={"mu_X": mu, "tau_X": tau, "theta_quotient": tau,
                  "polar_mult": polar, "euler_obstruction": eu},
        tags=("curve",) + tuple(tags),
    )


BUILTIN: tuple[GermSpec, ...] = (
    _curve("A1", "x^2+y^2", 1, 1, 2, 2, tags=("ADE", "weighted-homogeneous")),
    _curve("A2", "x^3+y^2", 2, 2, 3, 2, tags=("ADE", "weighted-homogeneous")),
    _curve("A3", "x^4+y^2", 3, 3, 4, 2, tags=("ADE", "weighted-homogeneous")),
    _curve("A4", "x^5+y^2", 4, 4, 5, 2, tags=("ADE", "weighted-homogeneous")),
    _curve("A5", "x^6+y^2", 5, 5, 6, 2, tags=("ADE", "weighted-homogeneous")),
    _curve("A6", "x^7+y^2", 6, 6, 7, 2, tags=("ADE", "weighted-homogeneous")),
    _curve("D4", "x^3+x*y^2", 4, 4, 6, 3, tags=("ADE", "weighted-homogeneous")),
    _curve("D5", "x^4+x*y^2", 5, 5, 7, 3, tags=("ADE", "weighted-homogeneous")),
    _curve("D6", "x^5+x*y^2", 6, 6, 8, 3, tags=("ADE", "weighted-homogeneous")),
    _curve("E6", "x^3+y^4", 6, 6, 8, 3, tags=("ADE", "weighted-homogeneous")),
    _curve("E7", "x^3+x*y^3", 7, 7, 9, 3, tags=("ADE", "weighted-homogeneous")),
    _curve("E8", "x^3+y^5", 8, 8, 10, 3, tags=("ADE", "weighted-homogeneous")),
    _curve("normal_crossing", "x*y", 1, 1, 2, 2,
           f_list=("x+y", "x", "x^2-y^2"), tags=("weighted-homogeneous",)),
    _curve("nwh_quintic", "x^5+y^5+x^2*y^2", 11, 10, 14, 4,
           f_list=("x+2y", "x-y", "y+x^2"), tags=("non-weighted-homogeneous",)),
    _curve("nwh_mixed", "x^4+y^5+x^2*y^3", 12, 11, 15, 4,
           tags=("non-weighted-homogeneous",)),
    GermSpec(
        name="A1_surface", vars=("x", "y", "z"), phi="x^2+y^2+z^2",
        f_list=("x+2y+3z", "z", "x*y+z^2"),
        expected={"mu_X": 1, "tau_X": 1, "theta_quotient": 1,
                  "polar_mult": 2, "euler_obstruction": 0},
        tags=("surface", "ADE", "weighted-homogeneous"),
    ),
    GermSpec(
        name="umbrella_like", vars=("x", "y", "z"), phi="x^2*y-z^2",
        f_list=("x+2y+3z", "z", "x*y+z^2"),
        expected={},
        tags=("surface", "non-isolated"),
    ),
)


def load_corpus(source: str) -> list[GermSpec]:
    """'builtin' or a path to a JSON array of germ records."""
    if source == "builtin":
        return list(BUILTIN)
    raw = json.loads(Path(source).read_text())
    if not isinstance(raw, list):
        raise ValueError("corpus file must contain a JSON array")
    specs = []
    for entry in raw:
        spec = GermSpec(
            name=entry["name"],
            vars=tuple(entry["vars"]),
            phi=entry["phi"],
            f_list=tuple(entry["f_list"]),
            expected=dict(entry.get("expected", {})),
            tags=tuple(entry.get("tags", ())),
        )
        for key in spec.expected:
            if key not in GERM_LEVEL_KEYS:
                raise ValueError(f"unknown expected key {key!r} in germ {spec.name!r}")
        # parse now so input errors surface before any computation
        phi = parse_polynomial(spec.phi, spec.vars)
        if not phi or phi.constant_term():
            raise ValueError(f"germ {spec.name!r}: phi must be nonzero and vanish at 0")
        for f in spec.f_list:
            parse_polynomial(f, spec.vars)
        specs.append(spec)
    return specs
