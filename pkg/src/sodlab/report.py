"""Job configuration, report assembly and deterministic rendering.

Reports are plain dictionaries with rationals serialized as "p" or "p/q"
strings and integral weights as integer arrays; JSON rendering sorts keys, so
identical inputs produce byte-identical output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .linalg import Vec, frac, is_integral, vec
from .linprog import InputError
from .characters import hom_block_dims
from .partition import (HALF_OPEN_MODE, STANDARD, PreconditionError,
                        make_profile, partition_region)
from .reps import (TwistData, construct_rep, find_destabilizer,
                   has_t_stable_point, is_quasi_symmetric, weight_signs)
from .rootdata import build_group, full_levi, invariant_subspace, levi
from .sod import (NccrCertificate, Preset, SodComponent, certify_nccr,
                  enumerate_sod, pick_epsilon)

TOOL_NAME = "sodlab"
TOOL_VERSION = "0.1.0"

SUBCOMMANDS = ("analyze", "partition", "sod", "nccr", "hilbert")


def rational_str(x: Fraction) -> str:
    x = frac(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, bool):
        raise InputError("expected a rational, got a boolean")
    if isinstance(s, (int, str, Fraction)):
        try:
            return frac(s if not isinstance(s, str) else s.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"bad rational {s!r}: {e}") from None
    raise InputError(f"bad rational {s!r} (floats are not accepted)")


def weight_json(w: Vec):
    if is_integral(w):
        return [int(x) for x in w]
    return [rational_str(x) for x in w]


def vector_json(v: Vec):
    return [rational_str(x) for x in v]


# ---------------------------------------------------------------------------
# Configuration.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JobConfig:
    group: str
    representation: tuple
    nu: tuple | None
    epsilon: tuple | None
    twist: TwistData | None
    r_max: Fraction | None
    box_radius: int
    mode: str
    genericity_assertion: bool | None
    degree_bound: int
    prazno_mode: str


_ALLOWED_KEYS = {
    "group", "representation", "nu", "epsilon", "twist", "r_max",
    "box_radius", "mode", "genericity_assertion", "degree_bound",
    "prazno_mode",
}


def parse_config(raw: dict) -> JobConfig:
    if not isinstance(raw, dict):
        raise InputError("config must be a JSON object")
    unknown = set(raw) - _ALLOWED_KEYS
    if unknown:
        raise InputError(f"unknown config keys: {sorted(unknown)}")
    if "group" not in raw or "representation" not in raw:
        raise InputError("config needs 'group' and 'representation'")
    group = raw["group"]
    if not isinstance(group, str):
        raise InputError("'group' must be a catalog tag string")
    rep_pieces = _parse_rep(raw["representation"])
    nu = tuple(parse_rational(x) for x in raw["nu"]) if "nu" in raw and raw["nu"] is not None else None
    epsilon = tuple(parse_rational(x) for x in raw["epsilon"]) \
        if "epsilon" in raw and raw["epsilon"] is not None else None
    twist = _parse_twist(raw.get("twist"))
    r_max = parse_rational(raw["r_max"]) if raw.get("r_max") is not None else None
    box_radius = raw.get("box_radius", 6)
    if not isinstance(box_radius, int) or box_radius < 0:
        raise InputError("'box_radius' must be a nonnegative integer")
    mode = raw.get("mode", "standard")
    if mode not in ("standard", "quasi_symmetric"):
        raise InputError(f"unknown mode {mode!r}")
    assertion = raw.get("genericity_assertion")
    if assertion is not None and not isinstance(assertion, bool):
        raise InputError("'genericity_assertion' must be a boolean or null")
    degree_bound = raw.get("degree_bound", 6)
    if not isinstance(degree_bound, int) or degree_bound < 0:
        raise InputError("'degree_bound' must be a nonnegative integer")
    prazno_mode = raw.get("prazno_mode", "set")
    if prazno_mode not in ("set", "minkowski"):
        raise InputError(f"unknown prazno_mode {prazno_mode!r}")
    return JobConfig(group, rep_pieces, nu, epsilon, twist, r_max, box_radius,
                     mode, assertion, degree_bound, prazno_mode)


def _parse_rep(raw) -> tuple:
    if not isinstance(raw, list) or not raw:
        raise InputError("'representation' must be a nonempty list of pieces")
    pieces = []
    for item in raw:
        if not isinstance(item, dict) or "kind" not in item:
            raise InputError("representation pieces are objects with a 'kind'")
        kind = item["kind"]
        if kind == "weights":
            entries = item.get("weights")
            if not isinstance(entries, list) or not entries:
                raise InputError("'weights' piece needs a weight list")
            pairs = []
            for e in entries:
                if not isinstance(e, dict) or "weight" not in e:
                    raise InputError("weight entries are {'weight': [...], 'mult': n}")
                w = tuple(parse_rational(x) for x in e["weight"])
                m = e.get("mult", 1)
                if not isinstance(m, int) or m < 1:
                    raise InputError("weight multiplicities are positive integers")
                pairs.append((w, m))
            pieces.append(("weights", tuple(pairs)))
        elif kind in ("vector_power", "dual_vector_power"):
            pieces.append((kind, _positive_int(item, "h")))
        elif kind == "sym_power":
            pieces.append((kind, _positive_int(item, "d")))
        elif kind == "trivial":
            pieces.append((kind, _positive_int(item, "copies")))
        else:
            raise InputError(f"unknown representation piece kind {kind!r}")
    return tuple(pieces)


def _positive_int(item: dict, key: str) -> int:
    v = item.get(key)
    if not isinstance(v, int) or v < 1:
        raise InputError(f"piece {item.get('kind')!r} needs a positive integer {key!r}")
    return v


def _parse_twist(raw) -> TwistData | None:
    if raw is None:
        return None
    if not isinstance(raw, dict):
        raise InputError("'twist' must be an object")
    basis = raw.get("sublattice_basis")
    offset = raw.get("coset_offset")
    if not isinstance(basis, list) or not isinstance(offset, list):
        raise InputError("twist needs 'sublattice_basis' and 'coset_offset'")
    return TwistData(tuple(tuple(parse_rational(x) for x in row) for row in basis),
                     tuple(parse_rational(x) for x in offset))


def config_json(cfg: JobConfig) -> dict:
    rep = []
    for kind, arg in cfg.representation:
        if kind == "weights":
            rep.append({"kind": kind,
                        "weights": [{"weight": weight_json(vec(w)), "mult": m}
                                    for w, m in arg]})
        else:
            key = {"vector_power": "h", "dual_vector_power": "h",
                   "sym_power": "d", "trivial": "copies"}[kind]
            rep.append({"kind": kind, key: arg})
    out = {
        "group": cfg.group,
        "representation": rep,
        "box_radius": cfg.box_radius,
        "mode": cfg.mode,
        "degree_bound": cfg.degree_bound,
        "prazno_mode": cfg.prazno_mode,
    }
    if cfg.nu is not None:
        out["nu"] = vector_json(cfg.nu)
    if cfg.epsilon is not None:
        out["epsilon"] = vector_json(cfg.epsilon)
    if cfg.twist is not None:
        out["twist"] = {
            "sublattice_basis": [weight_json(r) for r in cfg.twist.sublattice_basis],
            "coset_offset": weight_json(cfg.twist.coset_offset)}
    if cfg.r_max is not None:
        out["r_max"] = rational_str(cfg.r_max)
    if cfg.genericity_assertion is not None:
        out["genericity_assertion"] = cfg.genericity_assertion
    return out


def preset_config(p: Preset, box_radius: int = 6) -> JobConfig:
    """A JobConfig mirroring a preset's worked-example conventions."""
    if p.family == "pfaffian":
        rep = (("vector_power", p.expected["h"]),)
        assertion = True
    elif p.family == "determinantal":
        rep = (("vector_power", p.expected["h"]),
               ("dual_vector_power", p.expected["h"]))
        assertion = True
    elif p.family == "sl2":
        rep = tuple(("sym_power", d) if d > 0 else ("trivial", 1)
                    for d in p.expected["degrees"])
        assertion = None
    else:
        rep = (("weights", p.rep.weights),)
        assertion = None
    return JobConfig(
        group=p.datum.label, representation=rep, nu=None,
        epsilon=p.recommended_eps, twist=None, r_max=Fraction(3),
        box_radius=box_radius, mode="quasi_symmetric"
        if is_quasi_symmetric(p.rep) else "standard",
        genericity_assertion=assertion, degree_bound=6, prazno_mode="set")


# ---------------------------------------------------------------------------
# Report assembly.
# ---------------------------------------------------------------------------

def _signature_json(sig) -> dict:
    return {"r": rational_str(sig.r), "trivial": sig.trivial,
            "s_plus": list(sig.s_plus), "s_minus": list(sig.s_minus),
            "s_zero": list(sig.s_zero)}


def _cell_json(cell) -> dict:
    return {
        "signature": _signature_json(cell.signature),
        "lambda": weight_json(cell.lam),
        "nu": vector_json(cell.nu_levi),
        "chi_p": vector_json(cell.chi_p),
        "members_in_box": [weight_json(w) for w in cell.members],
    }


def _component_json(c: SodComponent) -> dict:
    kind, arg = c.window_kind
    return {
        "index": c.index,
        "is_d0": c.is_d0,
        "signature": _signature_json(c.signature),
        "lambda": weight_json(c.lam),
        "levi": c.levi_label,
        "nu": vector_json(c.nu),
        "window_kind": {"kind": kind,
                        "r" if kind == "rel_int_scaled" else "epsilon":
                        rational_str(arg) if kind == "rel_int_scaled"
                        else vector_json(arg)},
        "window": [weight_json(w) for w in c.window],
        "module_summands": [{"highest_weight": weight_json(w), "dim": d}
                            for w, d in c.u_summands],
        "coinvariant_weights": [{"weight": weight_json(w), "mult": m}
                                for w, m in c.coinvariants.weights],
        "algebra": c.algebra,
    }


def _certificate_json(cert: NccrCertificate) -> dict:
    return {
        "quasi_symmetric": cert.quasi_symmetric,
        "epsilon": vector_json(cert.epsilon),
        "eps_status": cert.eps_status,
        "window_nonempty": cert.window_nonempty,
        "window": [weight_json(w) for w in cert.window],
        "prazno_empty": cert.prazno_empty,
        "prazno_points": [weight_json(w) for w in cert.prazno_points],
        "genericity": cert.genericity,
        "verdict": cert.verdict,
        "prazno_mode": cert.prazno_mode,
    }


def _destabilizer_json(report) -> dict:
    return {
        "case": report.case,
        "sigma": None if report.sigma is None else weight_json(report.sigma),
        "nu": vector_json(report.nu),
        "sigma_annihilates_all": report.sigma_annihilates_all,
    }


def _base_document(subcommand: str, cfg: JobConfig) -> dict:
    return {
        "tool": {"name": TOOL_NAME, "version": TOOL_VERSION},
        "subcommand": subcommand,
        "input": config_json(cfg),
    }


def build_objects(cfg: JobConfig):
    datum = build_group(cfg.group)
    rep = construct_rep(datum, cfg.representation)
    threshold = STANDARD if cfg.mode == "standard" else HALF_OPEN_MODE
    profile = make_profile(datum, cfg.nu, threshold)
    return datum, rep, profile


def run_job(subcommand: str, cfg: JobConfig) -> dict:
    """Execute a subcommand; raises InputError / PreconditionError."""
    if subcommand not in SUBCOMMANDS:
        raise InputError(f"unknown subcommand {subcommand!r}")
    datum, rep, profile = build_objects(cfg)
    doc = _base_document(subcommand, cfg)
    if subcommand == "analyze":
        doc["analysis"] = {
            "group": datum.label,
            "rank": datum.rank,
            "dim": rep.dim,
            "weights": [{"weight": weight_json(w), "mult": m}
                        for w, m in rep.weights],
            "quasi_symmetric": is_quasi_symmetric(rep),
            "has_t_stable_point": has_t_stable_point(rep),
            "destabilizer": _destabilizer_json(find_destabilizer(rep)),
            "invariant_subspace": [vector_json(v)
                                   for v in invariant_subspace(datum)],
        }
        return doc
    if subcommand == "partition":
        cells = partition_region(rep, profile, cfg.box_radius)
        doc["partition"] = {"cells": [_cell_json(c) for c in cells]}
        return doc
    result = enumerate_sod(rep, profile, r_max=cfg.r_max,
                           box_radius=cfg.box_radius, epsilon=cfg.epsilon,
                           twist=cfg.twist)
    doc["sod"] = {
        "epsilon": vector_json(result.epsilon),
        "threshold": result.threshold,
        "components": [_component_json(c) for c in result.components],
        "absorbed_cells": [_cell_json(c) for c in result.absorbed],
        "truncation_frontier": {
            "r_max": None if result.r_max is None else rational_str(result.r_max),
            "box_radius": result.box_radius,
            "cells_beyond": [_cell_json(c) for c in result.frontier],
        },
    }
    if subcommand == "sod":
        return doc
    if subcommand == "nccr":
        certs = []
        for comp in result.components:
            lv = levi(datum, comp.lam)
            gens = tuple(rep.expanded[i]
                         for i in weight_signs(rep, comp.lam).t_zero)
            if comp.window_kind[0] == "half_size_eps":
                eps = comp.window_kind[1]
            elif comp.is_d0 and cfg.epsilon is not None:
                eps = cfg.epsilon
            else:
                eps = pick_epsilon(rep, lv, gens)
            cert = certify_nccr(
                rep, comp.lam, comp.nu, eps, twist=cfg.twist,
                genericity_assertion=cfg.genericity_assertion,
                prazno_mode=cfg.prazno_mode)
            certs.append({"component_index": comp.index,
                          "lambda": weight_json(comp.lam),
                          "certificate": _certificate_json(cert)})
        doc["nccr"] = certs
        return doc
    # hilbert: graded Hom blocks of the tail component
    tail = result.components[-1]
    lv = full_levi(datum)
    blocks = []
    for mu in tail.window:
        for mu2 in tail.window:
            dims = hom_block_dims(datum, mu, mu2, tail.coinvariants, lv,
                                  up_to=cfg.degree_bound)
            blocks.append({
                "source": weight_json(mu), "target": weight_json(mu2),
                "dims_by_degree": [d for _, d in dims.entries]})
    doc["hilbert"] = {"component_index": tail.index, "blocks": blocks}
    return doc


# ---------------------------------------------------------------------------
# Rendering.
# ---------------------------------------------------------------------------

def render(doc: dict, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode()
    if fmt != "text":
        raise InputError(f"unknown format {fmt!r}")
    return _render_text(doc).encode()


def _render_text(doc: dict) -> str:
    lines = [f"{doc['tool']['name']} {doc['tool']['version']} :: {doc['subcommand']}"]
    if "analysis" in doc:
        a = doc["analysis"]
        lines.append(f"group {a['group']} rank {a['rank']} dim {a['dim']}")
        lines.append(f"quasi_symmetric={a['quasi_symmetric']} "
                     f"t_stable={a['has_t_stable_point']}")
        d = a["destabilizer"]
        lines.append(f"destabilizer: case={d['case']} sigma={d['sigma']} nu={d['nu']}")
    if "partition" in doc:
        lines.append(f"{len(doc['partition']['cells'])} cells")
        for c in doc["partition"]["cells"]:
            s = c["signature"]
            lines.append(f"  r={s['r']:>6} |S+|={len(s['s_plus'])} "
                         f"|S-|={len(s['s_minus'])} |S0|={len(s['s_zero'])} "
                         f"lambda={c['lambda']} members={c['members_in_box']}")
    if "sod" in doc:
        comps = doc["sod"]["components"]
        lines.append(f"{len(comps)} components (epsilon={doc['sod']['epsilon']})")
        lines.append("  index      r  S+/S-/S0  lambda           |L|  algebra")
        for c in comps:
            s = c["signature"]
            kind = c["window_kind"]
            rtxt = kind.get("r", "eps") if kind["kind"] == "rel_int_scaled" else "1/2+e"
            lines.append(
                f"  {c['index']:>5}  {rtxt:>5}  {len(s['s_plus'])}/{len(s['s_minus'])}"
                f"/{len(s['s_zero'])}       {str(c['lambda']):<15} "
                f"{len(c['window']):>4}  {c['algebra']}")
    if "nccr" in doc:
        for entry in doc["nccr"]:
            c = entry["certificate"]
            lines.append(
                f"  component {entry['component_index']}: verdict={c['verdict']} "
                f"eps={c['eps_status']} window_nonempty={c['window_nonempty']} "
                f"prazno_empty={c['prazno_empty']} genericity={c['genericity']}")
    if "hilbert" in doc:
        for b in doc["hilbert"]["blocks"]:
            lines.append(f"  Hom({b['source']}, {b['target']}): "
                         f"{b['dims_by_degree']}")
    if "error" in doc:
        lines.append(f"error: {doc['error']['message']}")
        if doc["error"].get("destabilizer"):
            d = doc["error"]["destabilizer"]
            lines.append(f"destabilizer: case={d['case']} sigma={d['sigma']}")
    return "\n".join(lines) + "\n"


def error_document(subcommand: str, cfg: JobConfig | None, exc: Exception) -> dict:
    doc = {"tool": {"name": TOOL_NAME, "version": TOOL_VERSION},
           "subcommand": subcommand,
           "error": {"message": str(exc)}}
    if cfg is not None:
        doc["input"] = config_json(cfg)
    if isinstance(exc, PreconditionError) and exc.report is not None:
        doc["error"]["destabilizer"] = _destabilizer_json(exc.report)
    return doc
