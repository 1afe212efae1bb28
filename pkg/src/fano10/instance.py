"""Instance and report documents (JSON embedding the polynomial text form)."""
from __future__ import annotations

import hashlib
import json
from typing import Any

from . import netdisc as nd
from . import verra as vr
from .exactalg.fields import Field, parse_field
from .exactalg.linalg import ScalarMatrix
from .exactalg.poly import MultiPoly
from .exactalg.rng import SplitMix64, derive_seed
from .records import Check, DegenerateInput, check
from .suites import ConfigError, RunConfig, nodal_model, require_prime_field, verra_model, working_wo

SPEC_VERSION = "fano10-1"


class InstanceError(ValueError):
    """Unreadable, malformed or version-incompatible document."""


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _matrix_text(F: Field, rows) -> list[list[str]]:
    return [[F.to_text(x) for x in r] for r in rows]


def _matrix_parse(F: Field, rows) -> list[list]:
    return [[F.parse(x) for x in r] for r in rows]


# --- instances -------------------------------------------------------------------------------------

def net_section(m: nd.NodalXModel) -> dict:
    F, E = m.field, m.ext
    return {
        "omega": _matrix_text(F, m.omega.rows),
        "certificate": m.certificate,
        "attempts": m.attempts,
        "resamples": m.failures,
        "septic": m.disc.septic.to_text(),
        "sextic": m.disc.sextic.to_text(),
        "gamma6_star": m.gamma6_star.to_text(),
        "extension": E.spec,
        "six_points": [p.to_text() for p in m.p_points],
        "nodes": [s.to_text() for s in m.s_points],
    }


def verra_section(inst: vr.VerraInstance) -> dict:
    m = inst.model
    return {
        "lambda2": m.lam2.to_text(),
        "lambda4": m.lam4.to_text(),
        "q": m.q.to_text(),
        "attempts": inst.attempts,
        "resamples": inst.failures,
        "solid": inst.solid.poly.to_text(),
        "extension": inst.ext.spec,
        "six_points": [p.to_text() for p in inst.p_points],
    }


def generate(cfg: RunConfig, engineered: str | None = None) -> dict:
    """Instance document for ``cfg``; raises DegenerateInput when the budget is exhausted."""
    doc: dict[str, Any] = {"spec_version": SPEC_VERSION, "kind": "instance", "config": cfg.echo(),
                           "net": None, "verra": None}
    if engineered is not None:
        if engineered != "tangent":
            raise ConfigError(f"unknown engineered instance {engineered!r}")
        F = require_prime_field(cfg.field)
        omega = nd.engineered_tangent_omega(F, SplitMix64(derive_seed(cfg.seed, 0x54414E)))
        doc["net"] = {"omega": _matrix_text(F, omega.rows), "engineered": engineered}
        return doc
    if cfg.wants("net") or cfg.wants("rulings"):
        doc["net"] = net_section(nodal_model(cfg))
    if cfg.wants("verra"):
        doc["verra"] = verra_section(verra_model(cfg))
    return doc


def load(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"not a JSON document: {exc}") from exc
    if not isinstance(doc, dict) or "spec_version" not in doc:
        raise InstanceError("missing spec_version")
    if doc["spec_version"] != SPEC_VERSION:
        raise InstanceError(f"spec_version {doc['spec_version']!r} is not {SPEC_VERSION!r}")
    return doc


def config_of(doc: dict) -> RunConfig:
    try:
        c = doc["config"]
        return RunConfig(parse_field(c["field"]), int(c["seed"]), c["suite"], int(c["trials"]), int(c["budget"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceError(f"malformed config: {exc}") from exc


def omega_of(doc: dict, F: Field) -> ScalarMatrix | None:
    net = doc.get("net")
    if not net:
        return None
    try:
        return ScalarMatrix(F, _matrix_parse(F, net["omega"]), symmetric=True, coerce=False)
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceError(f"malformed omega: {exc}") from exc


def normal_form_of(doc: dict, F: Field) -> vr.NormalFormModel | None:
    sec = doc.get("verra")
    if not sec:
        return None
    try:
        polys = [MultiPoly.from_text(F, sec[k]) for k in ("lambda2", "lambda4", "q")]
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceError(f"malformed normal form: {exc}") from exc
    return vr.NormalFormModel(F, *polys)


def reproduction_checks(doc: dict, cfg: RunConfig) -> list[Check]:
    """Stored derived data agrees with a recomputation from the stored inputs."""
    out = []
    F = cfg.field
    net = doc.get("net")
    if net and "septic" in net:
        m = nd.nodal_x_from_omega(working_wo(require_prime_field(F)), omega_of(doc, F),
                                  SplitMix64(derive_seed(cfg.seed, 0x4F4D)))
        same = (net["septic"] == m.disc.septic.to_text() and net["sextic"] == m.disc.sextic.to_text()
                and net["gamma6_star"] == m.gamma6_star.to_text() and net["extension"] == m.ext.spec
                and net["six_points"] == [p.to_text() for p in m.p_points])
        out.append(check("stored net data reproduced", "instance.reproduced", same))
    sec = doc.get("verra")
    if sec:
        inst = verra_model(cfg, normal_form_of(doc, F))
        out.append(check("stored normal-form data reproduced", "instance.reproduced",
                         sec["solid"] == inst.solid.poly.to_text()))
    return out


# --- reports ---------------------------------------------------------------------------------------

def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def make_report(cfg: RunConfig, checks: list[Check], instance_digest: str | None = None,
                degenerate: DegenerateInput | None = None) -> dict:
    passed = sum(c.ok for c in checks)
    failed = len(checks) - passed
    if degenerate is not None:
        verdict = "degenerate"
    else:
        verdict = "pass" if failed == 0 else "fail"
    doc: dict[str, Any] = {
        "spec_version": SPEC_VERSION,
        "kind": "report",
        "config": cfg.echo(),
        "instance_sha256": instance_digest,
        "checks": [c.to_json() for c in checks],
        "summary": {"checks": len(checks), "passed": passed, "failed": failed},
        "verdict": verdict,
    }
    if degenerate is not None:
        doc["degeneracy"] = {"reason": str(degenerate), "failed_checks": degenerate.failed_checks,
                             "attempts": degenerate.attempts}
    return doc


def render_text(doc: dict) -> str:
    if doc.get("kind") != "report":
        raise InstanceError("not a report document")
    lines = [f"fano10 report ({doc['spec_version']}): field {doc['config']['field']}, "
             f"seed {doc['config']['seed']}, suite {doc['config']['suite']}"]
    for c in doc["checks"]:
        lines.append(f"{c['status'].upper():4}  {c['anchor']:34}  {c['name']}")
    s = doc["summary"]
    lines.append(f"verdict: {doc['verdict']} ({s['passed']}/{s['checks']} passed)")
    if "degeneracy" in doc:
        d = doc["degeneracy"]
        lines.append(f"degenerate input: {d['reason']} [{', '.join(d['failed_checks'])}]")
    return "\n".join(lines) + "\n"
