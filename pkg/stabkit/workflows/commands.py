"""One function per CLI command: load documents, compute, and shape the result.

Each returns a :class:`CommandOutcome`; mathematical failures that are verdicts rather
than exceptions come back with ``passed=False`` and a witness.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from stabkit.cy2.mukai import certify, certify_path, check_P0_membership
from stabkit.deformation.lift import lift_path
from stabkit.deformation.walls import find_walls, status_label, status_profile
from stabkit.errors import InputError
from stabkit.hn.filtration import hn_filtration
from stabkit.hn.polygon import TruncatedPolygon
from stabkit.lattice import linalg
from stabkit.lattice.forms import signature
from stabkit.lattice.normalize import kernel_data, normalize
from stabkit.lattice.phase import heart_charge
from stabkit.lattice.rational import format_rational
from stabkit.quiver.subobjects import enumerate_subobject_classes
from stabkit.reductions.extension import chain_embedding, radical, reduce_and_lift
from stabkit.render.svg import render_svg
from stabkit.slicing.distance import distance_rows
from stabkit.utils.codec import (
    jsonable,
    load_document,
    parse_charge_document,
    parse_mukai,
    parse_path,
    parse_representation,
    parse_sample,
    parse_sigma,
)
from stabkit.utils.config_loader import get_config
from stabkit.workflows.models import ErrorInfo, RunConfig

logger = logging.getLogger(__name__)


@dataclass
class CommandOutcome:
    result: Dict[str, Any]
    passed: bool = True
    failure: Optional[ErrorInfo] = None
    table: Optional[Tuple[List[str], List[List[Any]]]] = None
    svg: Optional[str] = None


def _load(config: RunConfig, name: str) -> Any:
    return load_document(config.inputs[name])


def _optional(config: RunConfig, name: str) -> Optional[Any]:
    return _load(config, name) if name in config.inputs else None


def _kernel_json(kd) -> Dict[str, Any]:
    return {
        "dim": kd.dim,
        "basis": [[format_rational(x) for x in b] for b in kd.kernel_basis],
        "neg_gram": linalg.format_matrix(kd.neg_gram),
    }


def run_validate(config: RunConfig) -> CommandOutcome:
    sigma = parse_sigma(_load(config, "sigma"), config.budget)
    result: Dict[str, Any] = {
        "stability_function": True,
        "generators": [list(r.dims) for r in sigma.generators],
        "Z": sigma.charge.to_json(),
        "action": sigma.action.to_json(),
    }
    form_doc = _optional(config, "q")
    if form_doc is not None:
        q = parse_charge_document(form_doc, "form", "q").need_form()
        kd = kernel_data(q, sigma.charge)
        sig = signature(q)
        result["kernel"] = _kernel_json(kd)
        result["signature"] = list(sig)
        if sig == (2, q.rank - 2, 0):
            norm = normalize(q, sigma.charge)
            result["normalization"] = {
                "g": norm.g.to_json(),
                "metric": linalg.format_matrix(norm.metric),
            }
    logger.info(f"Validated σ on {len(sigma.generators)} generators")
    return CommandOutcome(result)


def run_hn(config: RunConfig) -> CommandOutcome:
    r = parse_representation(_load(config, "object"))
    doc = parse_charge_document(_load(config, "charge"), "charge", "charge")
    z = doc.need_charge()
    if r.is_zero:
        raise InputError("HN data of the zero object is empty")
    classes = enumerate_subobject_classes(r, config.budget)
    for c in classes.nonzero():
        heart_charge(z, c)
    hn = hn_filtration(r, z, config.budget)
    polygon = hn.polygon
    m = polygon.mass()
    result: Dict[str, Any] = {
        "object": list(r.dims),
        "polygon": [list(v.to_json()) for v in polygon.vertices],
        "vertex_classes": [list(c) for c in polygon.vertex_classes],
        "subobject_classes": [list(c) for c in classes],
        "semistable": polygon.is_single_edge,
        "filtration": hn.to_json(),
        "mass": {"exact": m.exact(), "float": m.value},
        "abs_Z": abs(z(r.dims)),
    }
    passed = True
    failure = None
    if doc.form is not None:
        kd = kernel_data(doc.form, z)
        norm_p = kd.norm(r.dims)
        bound_ok = norm_p <= m.value + config.tolerance
        result["mass_bound"] = {"norm_p": norm_p, "mass": m.value, "passed": bound_ok}
        if config.truncated:
            trunc = TruncatedPolygon(polygon, z)
            classes = trunc.integer_classes_within(kd, config.tolerance)
            result["truncated_classes"] = [list(c) for c in classes]
        if not bound_ok:
            passed = False
            failure = ErrorInfo(
                type="MassBound", message="‖p(E)‖ exceeds the mass", witness=list(r.dims)
            )
    rows = [
        [i, " ".join(map(str, f.dims)), f"{f.phase.value:.12f}",
         format_rational(z(f.dims).re), format_rational(z(f.dims).im)]
        for i, f in enumerate(hn.factors)
    ]
    svg = None
    if config.svg_out is not None:
        settings = get_config()
        svg = render_svg(
            polygon,
            truncated=config.truncated,
            title=f"HN polygon of {list(r.dims)}",
            size=int(settings.get("render.viewbox", 600)),
            margin=int(settings.get("render.margin", 40)),
            decimals=int(settings.get("render.decimals", 3)),
        )
    table = (["index", "class", "phase", "re", "im"], rows)
    return CommandOutcome(result, passed, failure, table, svg)


def _wall_rows(walls: Sequence) -> List[List[Any]]:
    return [
        [str(w.t_value), " ".join(map(str, w.object_class)),
         " ".join(map(str, w.destabilizer_class)),
         w.exact, w.status_before, w.status_after]
        for w in walls
    ]


WALL_HEADER = ["t", "object", "destabilizer", "exact", "before", "after"]


def run_walls(config: RunConfig) -> CommandOutcome:
    r = parse_representation(_load(config, "object"))
    form_doc = _optional(config, "q")
    form = None
    if form_doc is not None:
        form = parse_charge_document(form_doc, "form", "q").need_form()
    path = parse_path(_load(config, "path"), form)
    walls = find_walls(r, path, form, config.budget, config.width)
    profile = status_profile(r, path, walls, config.budget)
    result = {
        "object": list(r.dims),
        "path": path.to_json(),
        "walls": [w.to_json() for w in walls],
        "profile": [{"t": format_rational(t), "status": status_label(s)} for t, s in profile],
    }
    return CommandOutcome(result, table=(WALL_HEADER, _wall_rows(walls)))


def run_deform(config: RunConfig) -> CommandOutcome:
    sigma = parse_sigma(_load(config, "sigma"), config.budget)
    q = parse_charge_document(_load(config, "q"), "form", "q").need_form()
    path = parse_path(_load(config, "path"), q)
    report = lift_path(
        sigma, q, path, config.steps,
        budget=config.budget,
        margin=config.margin,
        max_subdivisions=config.max_subdivisions,
        tolerance=config.tolerance,
        corpus_max_dim=config.corpus_max_dim,
        width=config.width,
    )
    result = report.to_json()
    result["walls"] = [w.to_json() for w in report.walls]
    failure = None
    if not report.passed:
        row = next(row for row in report.rows if not row.passed)
        failure = ErrorInfo(
            type="SupportCheck",
            message=f"Checks fail on leg {row.leg} at t = {row.t}",
            witness={"leg": row.leg, "t": format_rational(row.t),
                     "support_violations": [list(c) for c in row.support_violations]},
        )
    rows = [
        [r.leg, str(r.t), r.kernel_dim, ";".join(r.reasons),
         ";".join(f"{' '.join(map(str, s.dims))}:{s.status}" for s in r.statuses), r.passed]
        for r in report.rows
    ]
    return CommandOutcome(result, report.passed, failure,
                          (["leg", "t", "kernel_dim", "reasons", "objects", "passed"], rows))


def run_dist(config: RunConfig) -> CommandOutcome:
    sigma1 = parse_sigma(_load(config, "sigma1"), config.budget, "sigma1")
    sigma2 = parse_sigma(_load(config, "sigma2"), config.budget, "sigma2")
    sample = parse_sample(_load(config, "sample"))
    report = distance_rows(sigma1, sigma2, sample, config.budget)
    rows = [[row.obj.label(), row.phi.value, row.psi_minus.value, row.psi_plus.value, row.value]
            for row in report.rows]
    return CommandOutcome(report.to_json(),
                          table=(["object", "phi", "psi_minus", "psi_plus", "value"], rows))


def run_qext(config: RunConfig) -> CommandOutcome:
    doc = parse_charge_document(_load(config, "q"), "form", "q")
    q = doc.need_form()
    z_doc = _optional(config, "z")
    if z_doc is not None:
        z = parse_charge_document(z_doc, "charge", "z").need_charge()
    else:
        z = doc.need_charge()
    if z.rank != q.rank:
        raise InputError(f"Form of rank {q.rank} and charge of rank {z.rank} disagree")
    sig = signature(q)
    if sig == (2, q.rank - 2, 0):
        return CommandOutcome({"chain": [], "signature": list(sig), "rank": q.rank,
                               "note": "Form already nondegenerate of signature (2, rk − 2)"})
    chain = reduce_and_lift(q, z)
    last = chain[-1]
    result = {
        "chain": [step.to_json() for step in chain],
        "source": {"Q": q.to_json(), "Z": z.to_json(), "signature": list(sig),
                   "radical_dim": len(radical(q))},
        "final": {"Q": last.q_bar.to_json(), "Z": last.z_bar.to_json(),
                  "signature": list(signature(last.q_bar))},
        "embedding": linalg.format_matrix(chain_embedding(chain)),
        "rank": [q.rank, last.q_bar.rank],
    }
    rows = [[i, step.kind, step.source_form.rank, step.q_bar.rank] for i, step in enumerate(chain)]
    return CommandOutcome(result, table=(["step", "kind", "rank_in", "rank_out"], rows))


def run_cy2(config: RunConfig) -> CommandOutcome:
    lattice = parse_mukai(_load(config, "lattice"))
    z = parse_charge_document(_load(config, "z"), "charge", "z").need_charge()
    member = check_P0_membership(lattice, z)
    if not member:
        return CommandOutcome(
            {"member": False, "detail": member.detail},
            passed=False,
            failure=ErrorInfo(
                type="NotInP0", message=member.detail, witness=jsonable(member.witness)
            ),
        )
    cert = certify(lattice, z)
    result: Dict[str, Any] = {"member": True, "certificate": cert.to_json()}
    passed, failure = True, None
    path_doc = _optional(config, "path")
    if path_doc is not None:
        path = parse_path(path_doc)
        samples = [Fraction(i, config.path_samples) for i in range(config.path_samples + 1)]
        path_cert = certify_path(lattice, path, samples)
        result["path"] = path_cert.to_json()
        if not path_cert.passed:
            passed = False
            failure = ErrorInfo(type="PathCertificate", message=path_cert.failure.detail,
                                witness=path_cert.failure.witness)
    rows = [[" ".join(map(str, r)), format_rational(z(r).abs2()), format_rational(cert.form(r))]
            for r in cert.roots]
    return CommandOutcome(result, passed, failure, (["root", "abs2_Z", "Q"], rows))


COMMANDS: Dict[str, Callable[[RunConfig], CommandOutcome]] = {
    "validate": run_validate,
    "hn": run_hn,
    "walls": run_walls,
    "deform": run_deform,
    "dist": run_dist,
    "qext": run_qext,
    "cy2": run_cy2,
}
