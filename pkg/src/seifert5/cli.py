"""Command line front end.

Exit status: 0 on success, 2 when the input fails validation or a
precondition, 1 when an internal consistency check fails.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from . import serialize
from .abgroup import AbGroup
from .catalog import MAIN_SERIES, catalog, catalog_names
from .classify import enumerate_del_pezzo, torsion_allowed
from .errors import ConsistencyError, PreconditionError, ValidationError
from .ke import certify_catalog_surface, certify_elliptic_anticanonical, lemma75_certify, lemma77_certify
from .orbsurface import Violation, global_multiplicities, is_log_del_pezzo, validate, validate_branch
from .rhs import check_rhs_conditions, construct
from .seifert import anticanonical_bundle, chern_class, cohomology, h1_total_space, is_smooth, w2_report
from .topology import h1_orb, h1_smooth_locus_trivial

__all__ = ["JobSpec", "run", "main", "parse_group", "parse_branch"]

COMMANDS = ("invariants", "construct-rhs", "enumerate", "classify-torsion", "check-ke", "catalog")


@dataclass(frozen=True)
class JobSpec:
    command: str
    input_path: str | None = None
    parameters: dict = field(default_factory=dict)
    output_format: str = "table"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.output_format == "structured":
            object.__setattr__(self, "output_format", "json")
        if self.output_format not in ("table", "json"):
            raise ValueError("output format must be 'table' or 'json' ('structured' is an alias for 'json')")


def parse_branch(spec: str) -> dict:
    """``cubic:m=5`` or ``cubic:5``, optionally ``:id=name``, into a catalog branch reference."""
    parts = spec.split(":")
    out: dict[str, Any] = {"curve": parts[0]}
    for p in parts[1:]:
        if "=" in p:
            k, v = p.split("=", 1)
        else:
            k, v = "m", p
        if k == "m":
            out["m"] = int(v)
        elif k == "id":
            out["id"] = v
        else:
            raise ValidationError([Violation("branch", f"unknown key {k!r} in {spec!r}")])
    if "m" not in out:
        raise ValidationError([Violation("branch", f"{spec!r} has no multiplicity")])
    return out


def parse_group(text: str) -> AbGroup:
    """``5^4``, ``2,4``, ``Z^2 + (Z/3)^2`` style descriptions; ``0`` is the trivial group."""
    text = text.strip()
    if text in ("0", "", "1"):
        return AbGroup()
    orders: list[int] = []
    free = 0
    for tok in re.split(r"\s*[,+]\s*", text):
        m = re.fullmatch(r"\(?Z(?:/(\d+))?\)?(?:\^(\d+))?|(\d+)(?:\^(\d+))?", tok)
        if not m:
            raise ValidationError([Violation("group", f"cannot parse {tok!r}")])
        if m.group(3):
            orders += [int(m.group(3))] * int(m.group(4) or 1)
        elif m.group(1):
            orders += [int(m.group(1))] * int(m.group(2) or 1)
        else:
            free += int(m.group(2) or 1)
    return AbGroup.from_cyclic_orders(orders, free)


def _load_input(job: JobSpec) -> serialize.ParsedInput:
    p = job.parameters
    if job.input_path:
        try:
            with open(job.input_path) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise ValidationError([Violation("input", str(e))]) from None
    else:
        if not p.get("catalog"):
            raise ValidationError([Violation("input", "give --input FILE or --catalog NAME")])
        doc = {"catalog": p["catalog"], "branch": [parse_branch(b) for b in p.get("branch") or []]}
    parsed = serialize.parse_input(doc)
    bad = validate(parsed.surface) + validate_branch(parsed.surface, parsed.delta)
    if bad:
        raise ValidationError(bad)
    return parsed


def _choose_bundle(parsed: serialize.ParsedInput):
    if parsed.bundle is not None:
        return parsed.bundle, "input"
    s, delta = parsed.surface, parsed.delta
    if s.weil_rank == 1 and check_rhs_conditions(s, delta).all_pass:
        return construct(s, delta).data, "rational homology sphere construction, c1 = 1/M"
    return anticanonical_bundle(s, delta), "c1 proportional to -(K + Delta)"


def _invariants(job: JobSpec) -> dict:
    parsed = _load_input(job)
    s, delta = parsed.surface, parsed.delta
    rep: dict[str, Any] = {"command": "invariants", "surface": s.name,
                           "branch": tuple((c.id, c.multiplicity) for c in delta)}
    rep["multiplicities"] = global_multiplicities(s, delta)
    rep["smooth_locus_h1"] = h1_smooth_locus_trivial(s)
    orb = h1_orb(s, delta)
    rep["h1_orb"] = orb.group
    if s.ample_cone_tests:
        rep["log_del_pezzo"] = is_log_del_pezzo(s, delta)
    if not orb.trivial and parsed.bundle is None:
        rep["bundle"] = None
        rep["note"] = "H_1^orb != 0: no bundle with H_1 = 0 exists over this base"
        return rep
    sd, source = _choose_bundle(parsed)
    rep["bundle"] = {"B": sd.B, "b": sd.b, "source": source}
    rep["chern"] = chern_class(sd)
    rep["smoothness"] = is_smooth(sd)
    rep["h1"] = h1_total_space(sd)
    try:
        rep["cohomology"] = cohomology(sd)
    except PreconditionError as e:
        rep["cohomology"] = None
        rep["note"] = str(e)
    rep["w2_zero"] = w2_report(sd)
    return rep


def _construct(job: JobSpec) -> dict:
    parsed = _load_input(job)
    c = construct(parsed.surface, parsed.delta, int(job.parameters.get("orientation") or 1))
    return {"command": "construct-rhs", "surface": parsed.surface.name, "construction": c,
            "cohomology": cohomology(c.data)}


def _enumerate(job: JobSpec) -> dict:
    p = job.parameters
    rows = list(enumerate_del_pezzo())
    if p.get("base"):
        rows = [t for t in rows if t.base == p["base"] or t.family == p["base"]]
    if p.get("max_picard") is not None:
        rows = [t for t in rows if t.picard_number <= int(p["max_picard"])]
    return {"command": "enumerate", "count": len(rows), "types": tuple(rows)}


def _classify_torsion(job: JobSpec) -> dict:
    g = parse_group(job.parameters["group"])
    return {"command": "classify-torsion", "group": g, "verdict": torsion_allowed(g)}


def _check_ke(job: JobSpec) -> dict:
    p = job.parameters
    m = p.get("m")
    if m is None:
        raise ValidationError([Violation("check-ke", "--m is required")])
    m = int(m)
    rule = p.get("rule") or "lemma75"
    if p.get("catalog"):
        name = catalog(p["catalog"]).surface.name
        curve = p.get("curve")
        if curve is None:
            if name in MAIN_SERIES:
                curve = MAIN_SERIES[name][0]
            elif "quadric_section" in catalog(name).curves:
                curve = "quadric_section"
            else:
                curve = "anticanonical"
        if rule == "lemma77":
            cert = certify_elliptic_anticanonical(name, curve, m)
        else:
            cert = certify_catalog_surface(name, curve, m)
    else:
        if rule == "lemma77":
            cert = lemma77_certify(m, p.get("attestation"))
        else:
            missing = [k for k in ("d", "a", "b") if p.get(k) is None]
            if missing:
                raise ValidationError([Violation("check-ke", f"missing {missing} (or give --catalog)")])
            att = {k: p["attestation"] for k in ("anticanonical_multiple", "curve_multiple",
                                                 "local_group_order", "line_through_singular")} \
                if p.get("attestation") else None
            cert = lemma75_certify(int(p["d"]), Fraction(p["a"]), Fraction(p["b"]), m, att)
    return {"command": "check-ke", "certificate": cert}


def _catalog(job: JobSpec) -> dict:
    name = job.parameters.get("name")
    if not name:
        rows = []
        for n in catalog_names():
            e = catalog(n)
            rows.append((n, e.surface.weil_rank, tuple(f"{p.id}:{p.local_order}" for p in e.surface.singular_points),
                         tuple(sorted(e.curves))))
        return {"command": "catalog", "surfaces": tuple(rows)}
    try:
        e = catalog(name)
    except KeyError as err:
        raise ValidationError([Violation("catalog", str(err.args[0]))]) from None
    return {"command": "catalog", "surface": serialize.surface_to_json(e.surface),
            "curves": {k: {"degree": c.degree, "genus": c.genus, "through_points": tuple(sorted(c.through_points))}
                       for k, c in sorted(e.curves.items())},
            "violations": tuple(validate(e.surface))}


_HANDLERS = {
    "invariants": _invariants,
    "construct-rhs": _construct,
    "enumerate": _enumerate,
    "classify-torsion": _classify_torsion,
    "check-ke": _check_ke,
    "catalog": _catalog,
}


def _render_table(rep: dict) -> str:
    cmd = rep["command"]
    lines = []
    if cmd == "enumerate":
        lines.append(f"{'type':<22} {'family':<12} {'K^2':>3} {'rho':>3}  singularities")
        for t in rep["types"]:
            lines.append(f"{t.name:<22} {t.family:<12} {t.k_squared_remaining:>3} {t.picard_number:>3}  "
                         + (" ".join(t.singularity_profile) or "-"))
        lines.append(f"{rep['count']} deformation types")
    elif cmd == "invariants" or cmd == "construct-rhs":
        lines.append(f"surface: {rep['surface']}")
        if cmd == "construct-rhs":
            c = rep["construction"]
            lines.append(f"B = {c.data.B}, b = {dict(c.data.b)}, orientation {c.orientation:+d}")
            for name, value, ok in c.certificates:
                lines.append(f"  [{'ok' if ok else 'FAIL'}] {name}: {value}")
            lines.append(f"S^5: {c.is_S5.status.value} ({c.is_S5.reason})")
        else:
            lines.append(f"branch: {', '.join(f'{i} (m={m})' for i, m in rep['branch']) or 'none'}")
            lines.append(f"H_1^orb: {rep['h1_orb']}")
            if "log_del_pezzo" in rep:
                lines.append(f"log Del Pezzo: {bool(rep['log_del_pezzo'])}")
            if rep.get("bundle"):
                b = rep["bundle"]
                lines.append(f"bundle: B = {b['B']}, b = {dict(b['b'])} ({b['source']})")
                ch = rep["chern"]
                lines.append(f"c1 = ({', '.join(str(x) for x in ch.c1)})")
                lines.append(f"smooth: {bool(rep['smoothness'])}")
                lines.append(f"H_1(L): {rep['h1']}")
                lines.append(f"w_2 = 0: {rep['w2_zero']}")
        table = rep.get("cohomology")
        if table is not None:
            lines.append(f"cohomology (d = {table.d}):")
            lines += [f"  {k} = {v}" for k, v in table.rows()]
        if rep.get("note"):
            lines.append(f"note: {rep['note']}")
    elif cmd == "classify-torsion":
        v = rep["verdict"]
        clause = f" (clause {v.clause})" if v.clause else ""
        lines.append(f"{rep['group']}: {'allowed' if v.allowed else 'not allowed'}{clause}; {v.reason}")
    elif cmd == "check-ke":
        c = rep["certificate"]
        params = ", ".join(f"{k}={v}" for k, v in c.parameters)
        lines.append(f"{c.rule} {c.surface_name or ''} {c.curve or ''} m={c.m} ({params}): {c.verdict.value}")
        for i in c.inequalities:
            lines.append(f"  [{'ok' if i.holds else 'no'}] {i.expression} = {i.value} vs {i.bound}")
        for k, v in c.attestations:
            lines.append(f"  {k}: {v or 'MISSING'}")
    elif cmd == "catalog":
        if "surfaces" in rep:
            for n, r, pts, curves in rep["surfaces"]:
                lines.append(f"{n:<8} rank {r}  points {' '.join(pts) or '-':<12} curves {', '.join(curves)}")
        else:
            s = rep["surface"]
            lines.append(f"{s['name']}: Weil rank {s['weil_rank']}, K = {s['canonical']}, Pic basis {s['pic_basis']}")
            for k, c in rep["curves"].items():
                lines.append(f"  {k}: degree {list(c['degree'])}, genus {c['genus']}")
    return "\n".join(lines)


def run(job: JobSpec) -> tuple[int, str]:
    """Execute one job; returns the exit status and the rendered report (or error text)."""
    try:
        rep = _HANDLERS[job.command](job)
    except ValidationError as e:
        return 2, "validation failed:\n" + "\n".join(f"  {v}" for v in e.violations)
    except PreconditionError as e:
        return 2, f"precondition failed: {e}"
    except ConsistencyError as e:
        return 1, f"internal consistency failure: {e}"
    except KeyError as e:
        return 2, f"unknown name: {e.args[0]}"
    if job.output_format == "json":
        return 0, serialize.dumps(rep)
    return 0, _render_table(rep)


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="seifert5", description="Seifert bundles over orbifold surfaces")
    ap.add_argument("--seed", type=int, default=None, help="accepted for harness compatibility; never affects results")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_input=True):
        p.add_argument("--format", choices=("table", "json", "structured"), default="table")
        if with_input:
            p.add_argument("--input", help="JSON file with surface and branch data")
            p.add_argument("--catalog", help="catalog surface name")
            p.add_argument("--branch", action="append", help="catalog curve with multiplicity, e.g. cubic:m=5")

    common(sub.add_parser("invariants", help="topological invariants of the bundle over (S, Delta)"))
    p = sub.add_parser("construct-rhs", help="construct the rational homology sphere bundle")
    common(p)
    p.add_argument("--orientation", type=int, choices=(1, -1), default=1)
    p = sub.add_parser("enumerate", help="list the Del Pezzo deformation types")
    common(p, with_input=False)
    p.add_argument("--base")
    p.add_argument("--max-picard", type=int)
    p = sub.add_parser("classify-torsion", help="is a group an allowed torsion of H_2")
    common(p, with_input=False)
    p.add_argument("group", help="e.g. '5^4', '2,4' or '(Z/3)^2'")
    p = sub.add_parser("check-ke", help="Kahler-Einstein certificate")
    common(p, with_input=False)
    p.add_argument("--catalog")
    p.add_argument("--curve")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d", type=int)
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--rule", choices=("lemma75", "lemma77"), default="lemma75")
    p.add_argument("--attestation", help="provenance for the structural hypotheses (raw mode)")
    p = sub.add_parser("catalog", help="browse the surface catalog")
    common(p, with_input=False)
    p.add_argument("name", nargs="?")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    params = {k: v for k, v in vars(args).items() if k not in ("command", "format", "input", "seed")}
    job = JobSpec(args.command, getattr(args, "input", None), params, args.format)
    status, text = run(job)
    print(text, file=sys.stdout if status == 0 else sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
