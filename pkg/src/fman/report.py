"""Analysis pipeline and report serialization.

``run_analysis`` walks axioms -> Leibnizator -> distribution -> connection ->
curvature (both formulas) -> holonomy -> inclusions and stops after the axiom
section when an axiom fails.  Reports serialize to canonical JSON or to a
markdown summary; wall-clock timings are kept out of the canonical JSON so
identical inputs give identical bytes.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Optional

from . import algebra as alg
from . import coord
from .connection import curvature_commutator, curvature_split, torsion, bianchi_defect
from .dpois import check_dpois_closures, dpois_fiber
from .exact import MatQ, rank
from .holonomy import (
    check_inclusion,
    extended_poisson_holonomy,
    holonomy_algebra,
    holonomy_diagnostics,
    poisson_holonomy,
)
from .inputs import InputSpec, field_to_json

EXIT_OK = 0
EXIT_AXIOM = 1
EXIT_INPUT = 2

DEFAULT_DEGREE = 1


class ReportIntegrityError(RuntimeError):
    """The two curvature formulas disagree on an input that passed the axioms."""


def _q(x) -> str:
    return str(x)


def _v(v) -> list:
    return [_q(x) for x in v]


def _m(m: MatQ) -> list:
    return [[_q(x) for x in row] for row in m.entries]


def fmt_vec(v, prefix: str = "e") -> str:
    """Render a coordinate vector as a combination of basis labels, e.g. ``1/2 e2 - e3``."""
    parts = []
    for i, c in enumerate(v):
        if not c:
            continue
        mag = abs(c)
        coef = "" if mag == 1 else f"{mag} "
        parts.append(("-" if c < 0 else "+", f"{coef}{prefix}{i + 1}"))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, t in parts[1:]:
        out += f" {sign} {t}"
    return out


def _verdict_json(v: alg.Verdict) -> dict:
    d = {"ok": v.ok}
    if not v.ok:
        d["witness"] = [i + 1 for i in v.witness]
        d["residual"] = _v(v.residual)
    return d


@dataclass
class AnalysisReport:
    """Results for one algebra input; sections after ``axioms`` are None when an axiom failed."""

    name: str
    dim: int
    axioms: dict
    exit_code: int
    is_poisson: Optional[bool] = None
    leibnizator: Optional[list] = None
    dpois: Optional[dict] = None
    torsion_zero: Optional[bool] = None
    flat: Optional[bool] = None
    curvature: Optional[list] = None
    curvature_agree: Optional[bool] = None
    bianchi_ok: Optional[bool] = None
    holonomy: Optional[dict] = None
    inclusions: Optional[dict] = None
    timings: dict = field(default_factory=dict)

    @property
    def complete(self) -> bool:
        return self.exit_code == EXIT_OK

    def to_dict(self, timings: bool = False) -> dict:
        if self.curvature is not None and not self.curvature_agree:
            raise ReportIntegrityError(
                f"{self.name}: commutator and split curvature disagree; refusing to serialize"
            )
        d = {
            "kind": "algebra",
            "name": self.name,
            "dim": self.dim,
            "axioms": self.axioms,
            "complete": self.complete,
        }
        if self.complete:
            d.update(
                is_poisson=self.is_poisson,
                leibnizator=self.leibnizator,
                dpois=self.dpois,
                torsion_zero=self.torsion_zero,
                flat=self.flat,
                curvature=self.curvature,
                curvature_formulas_agree=self.curvature_agree,
                bianchi_ok=self.bianchi_ok,
                holonomy=self.holonomy,
                inclusions=self.inclusions,
            )
        if timings:
            d["timings_ms"] = {k: round(v * 1000, 3) for k, v in self.timings.items()}
        return d


@dataclass
class CoordReport:
    name: str
    nvars: int
    hm_zero: bool
    hm_witness: Optional[dict]
    degree_bound: int
    ansatz_solutions: list
    ranks_at_points: list
    splitting: Optional[dict]
    exit_code: int
    timings: dict = field(default_factory=dict)

    def to_dict(self, timings: bool = False) -> dict:
        d = {
            "kind": "poly-manifold",
            "name": self.name,
            "nvars": self.nvars,
            "hm_zero": self.hm_zero,
            "hm_witness": self.hm_witness,
            "degree_bound": self.degree_bound,
            "ansatz_solutions": self.ansatz_solutions,
            "ansatz_rank_at_points": self.ranks_at_points,
            "splitting": self.splitting,
        }
        if timings:
            d["timings_ms"] = {k: round(v * 1000, 3) for k, v in self.timings.items()}
        return d


class _Clock:
    def __init__(self):
        self.timings = {}
        self._t = time.perf_counter()

    def lap(self, name):
        now = time.perf_counter()
        self.timings[name] = now - self._t
        self._t = now


def analyze_algebra(a: alg.AlgebraStructure) -> AnalysisReport:
    clock = _Clock()
    verdict = alg.is_fman(a)
    clock.lap("axioms")
    axioms = {
        "lie": _verdict_json(verdict.lie),
        "comm_assoc": _verdict_json(verdict.comm_assoc),
        "hm": _verdict_json(verdict.hm),
    }
    if not verdict.ok:
        return AnalysisReport(a.name, a.dim, axioms, EXIT_AXIOM, timings=clock.timings)

    L = alg.leibnizator(a)
    leib = [{"args": [i + 1, j + 1, k + 1], "value": _v(val)} for (i, j, k), val in L.nonzero()]
    clock.lap("leibnizator")

    fiber = dpois_fiber(a, L)
    closures = check_dpois_closures(a, fiber)
    dpois = {
        "rank": fiber.rank,
        "basis": [_v(b) for b in fiber.basis],
        "bracket_closed": closures.bracket_closed,
        "circ_closed": closures.circ_closed,
        "autoparallel": closures.autoparallel,
    }
    clock.lap("dpois")

    tor = torsion(a)
    cc = curvature_commutator(a)
    cs = curvature_split(a, L)
    agree = cc.same_total(cs)
    curv = []
    for p in cs.pairs():
        i, j = p
        curv.append(
            {
                "pair": [i + 1, j + 1],
                "commutator": _m(cc.r_total[p]),
                "split": _m(cs.r_total[p]),
                "r0": _m(cs.r0[p]),
                "rl": _m(cs.rl[p]),
                "rank": rank(cs.r_total[p]),
            }
        )
    clock.lap("curvature")

    hol = holonomy_algebra(a, cs)
    diag = holonomy_diagnostics(hol)
    holonomy = {
        "dim": diag.dim,
        "abelian": diag.abelian,
        "nilpotent_generators": diag.nilpotent_generators,
        "basis": [_m(m) for m in hol.matrices()],
        "rounds": hol.rounds,
        "log": list(hol.generators_log),
    }
    clock.lap("holonomy")

    ph = poisson_holonomy(a)
    ext = extended_poisson_holonomy(a, L)
    inc_p = check_inclusion(ph, hol)
    inc_e = check_inclusion(ext, hol)
    inclusions = {
        "poisson_holonomy_dim": ph.rank,
        "poisson_in_hol": inc_p.ok,
        "poisson_witness": None if inc_p.ok else _m(inc_p.witness),
        "extended_dim": ext.rank,
        "extended_in_hol": inc_e.ok,
        "extended_witness": None if inc_e.ok else _m(inc_e.witness),
    }
    clock.lap("inclusions")

    return AnalysisReport(
        a.name,
        a.dim,
        axioms,
        EXIT_OK,
        is_poisson=L.is_zero(),
        leibnizator=leib,
        dpois=dpois,
        torsion_zero=tor.is_zero(),
        flat=cs.is_flat,
        curvature=curv,
        curvature_agree=agree,
        bianchi_ok=bianchi_defect(cs) is None,
        holonomy=holonomy,
        inclusions=inclusions,
        timings=clock.timings,
    )


def analyze_manifold(spec: InputSpec, degree_bound: Optional[int] = None, leaf_vars=None, points=None) -> CoordReport:
    m = spec.payload
    clock = _Clock()
    hm = coord.hm_tensor_field(m)
    witness = None
    if not hm.zero:
        i, j, a, b, k, p = hm.witness
        witness = {"args": [i + 1, j + 1, a + 1, b + 1], "component": k + 1, "poly": p.to_json()}
    clock.lap("hm")
    degree = spec.options.get("degree_bound", DEFAULT_DEGREE) if degree_bound is None else degree_bound
    sols = coord.solve_dpois_ansatz(m, degree)
    clock.lap("ansatz")
    points = spec.options.get("points", ()) if points is None else points
    ranks = [{"point": _v(pt), "rank": coord.rank_at(sols, pt)} for pt in points]
    leaf = spec.options.get("leaf_vars") if leaf_vars is None else leaf_vars
    splitting = None
    if leaf:
        sv = coord.splitting_check(m, [l - 1 for l in leaf])
        splitting = {
            "leaf_vars": list(leaf),
            "leaf_derivatives_zero": sv.leaf_derivatives_zero,
            "leaf_fields_kill_S": sv.leaf_fields_kill_S,
            "coherent": sv.coherent,
        }
        if sv.derivative_witness:
            l, i, j, k, p = sv.derivative_witness
            splitting["witness"] = {"var": l + 1, "component": [i + 1, j + 1, k + 1], "derivative": p.to_json()}
        clock.lap("splitting")
    return CoordReport(
        spec.name,
        m.nvars,
        hm.zero,
        witness,
        degree,
        [field_to_json(x) for x in sols],
        ranks,
        splitting,
        EXIT_OK if hm.zero else EXIT_AXIOM,
        clock.timings,
    )


def run_analysis(spec: InputSpec, **kw):
    if spec.kind == "algebra":
        return analyze_algebra(spec.payload)
    return analyze_manifold(spec, **kw)


def emit_report(r, fmt: str = "json", timings: bool = False) -> bytes:
    d = r.to_dict(timings=timings)
    if fmt == "json":
        return (json.dumps(d, sort_keys=True, indent=2) + "\n").encode("utf-8")
    if fmt == "md":
        return markdown(d).encode("utf-8")
    raise ValueError(f"unknown report format {fmt!r}")


def _mat_md(rows: list) -> list:
    width = max((len(x) for row in rows for x in row), default=1)
    return ["    [" + " ".join(x.rjust(width) for x in row) + "]" for row in rows]


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def markdown(d: dict) -> str:
    if d["kind"] == "poly-manifold":
        return _markdown_manifold(d)
    out = [f"# {d['name']} (dimension {d['dim']})", "", "## Axioms", ""]
    labels = {"lie": "Jacobi identity", "comm_assoc": "commutative and associative product", "hm": "Hertling-Manin condition"}
    for key, label in labels.items():
        v = d["axioms"][key]
        line = f"- {label}: {'holds' if v['ok'] else 'FAILS'}"
        if not v["ok"]:
            w = ",".join(f"e{i}" for i in v["witness"])
            line += f" at ({w}), residual {fmt_vec([_frac(x) for x in v['residual']])}"
        out.append(line)
    if not d["complete"]:
        out += ["", "Analysis stopped: the input is not an F_man-algebra.", ""]
        return "\n".join(out)

    out += ["", "## Geometric characteristics", ""]
    if d["is_poisson"]:
        out.append("- It is a Poisson algebra (L = 0).")
    else:
        out.append("- It is not a Poisson algebra (L != 0). Non-zero Leibnizator values:")
        for entry in d["leibnizator"]:
            i, j, k = entry["args"]
            out.append(f"  - L(e{i},e{j},e{k}) = {fmt_vec([_frac(x) for x in entry['value']])}")
    dp = d["dpois"]
    span = ", ".join(fmt_vec([_frac(x) for x in b]) for b in dp["basis"]) or "0"
    out.append(f"- The Poisson-algebra distribution has rank {dp['rank']}, spanned by {{{span}}}.")
    out.append(
        f"- Distribution closures: bracket {_yes(dp['bracket_closed'])}, product {_yes(dp['circ_closed'])}, "
        f"autoparallel {_yes(dp['autoparallel'])}."
    )
    out.append(f"- The canonical connection is {'torsion-free' if d['torsion_zero'] else 'NOT torsion-free'}.")
    out.append("- The canonical connection is flat (R = 0)." if d["flat"] else "- The canonical connection is not flat (R != 0).")
    for c in d["curvature"]:
        if any(any(x != "0" for x in row) for row in c["split"]):
            i, j = c["pair"]
            out.append(f"  - R(e{i},e{j}) has rank {c['rank']}:")
            out += ["  " + line for line in _mat_md(c["split"])]
    h = d["holonomy"]
    out.append(
        f"- The holonomy algebra is {'abelian' if h['abelian'] else 'non-abelian'} and has dimension {h['dim']}"
        f"{'; every basis element is nilpotent' if h['nilpotent_generators'] and h['dim'] else ''}."
    )
    for k, mat in enumerate(h["basis"], 1):
        out.append(f"  - holonomy basis element {k}:")
        out += ["  " + line for line in _mat_md(mat)]
    inc = d["inclusions"]
    out.append(
        f"- ad_[g,g] + A_[g,[g,g]] (dimension {inc['poisson_holonomy_dim']}) inside the holonomy algebra: "
        f"{_yes(inc['poisson_in_hol'])}."
    )
    out.append(
        f"- Adding L(g,g) (dimension {inc['extended_dim']}) inside the holonomy algebra: {_yes(inc['extended_in_hol'])}."
    )
    out.append("")
    return "\n".join(out)


def _markdown_manifold(d: dict) -> str:
    out = [f"# {d['name']} (polynomial chart, {d['nvars']} variables)", ""]
    out.append(f"- Hertling-Manin tensor: {'vanishes' if d['hm_zero'] else 'does NOT vanish'}.")
    if d["hm_witness"]:
        w = d["hm_witness"]
        out.append(f"  - first non-zero component {w['component']} at {tuple(w['args'])}")
    out.append(
        f"- Polynomial fields of degree <= {d['degree_bound']} with L_X S = 0: "
        f"{len(d['ansatz_solutions'])} independent solution(s)."
    )
    for r in d["ansatz_rank_at_points"]:
        out.append(f"  - rank at ({', '.join(r['point'])}): {r['rank']}")
    s = d["splitting"]
    if s:
        out.append(
            f"- Leaf variables {s['leaf_vars']}: derivatives vanish {_yes(s['leaf_derivatives_zero'])}, "
            f"coordinate fields preserve S {_yes(s['leaf_fields_kill_S'])}."
        )
    out.append("")
    return "\n".join(out)


def _frac(s: str):
    from fractions import Fraction

    return Fraction(s)
