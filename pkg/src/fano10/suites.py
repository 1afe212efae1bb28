"""Verification suites: each returns check records in a fixed order."""
from __future__ import annotations

from dataclasses import dataclass

from . import netdisc as nd
from . import verra as vr
from .exactalg import linalg as la
from .exactalg.fields import GF, QQ, Field, PrimeField
from .exactalg.linalg import ScalarMatrix
from .exactalg.pit import pit_zero
from .exactalg.rng import SplitMix64, derive_seed
from .grassw import (
    B, WOModel, build_w, bundle_rank_check, gamma_w_poly, mv4_matches_bundle, project_from_node,
    tangent_equations_at_node, v8_poly_to_po,
)
from .projgeom import LinSubspace, contains, enumerate_families, rank_vertex, same_ruling, standard_split_form
from .records import Check, DegenerateInput, check

SUITES = ("appendix", "net", "rulings", "verra", "all")


class ConfigError(ValueError):
    """The run configuration cannot be executed as given."""


@dataclass(frozen=True)
class RunConfig:
    field: Field
    seed: int = 1
    suite: str = "all"
    trials: int = 20
    budget: int = 16

    def __post_init__(self):
        if self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}")
        if self.budget < 1:
            raise ConfigError("budget must be at least 1")
        if self.trials < 1:
            raise ConfigError("trials must be at least 1")
        if not 0 <= self.seed < 1 << 64:
            raise ConfigError("seed must be a 64-bit unsigned integer")

    def echo(self) -> dict:
        return {"field": self.field.spec, "seed": self.seed, "suite": self.suite,
                "trials": self.trials, "budget": self.budget}

    def wants(self, name: str) -> bool:
        return self.suite in (name, "all")


# --- appendix (symbolic identities over Q) -----------------------------------------------------

def appendix_suite(field: Field = QQ) -> list[Check]:
    w = build_w(field)
    out = []
    param = list(w.o4_param)
    out.append(check("dense-orbit chart satisfies the seven equations of W", "W.dense-orbit-chart",
                     all(not f.subs(param).terms for f in w.equations), equations=len(w.equations)))

    node = [field.zero] * 10
    node[B["45"]] = field.one
    jac = [[f.diff(i).evaluate(node) for i in range(10)] for f in w.equations]
    listed = tangent_equations_at_node(field)
    out.append(check("tangent space at the node is cut by the listed equations", "W.tangent-at-node",
                     la.same_row_space(field, jac, listed) and la.rank(field, listed) == 5))
    tangent = LinSubspace.from_equations(field, listed, 9)
    out.append(check("tangent space at the node misses the beta-plane", "W.tangent-misses-beta-plane",
                     tangent.intersect(w.beta_plane).dim == -1))

    wo = project_from_node(w)
    co = wo.c_o_symbolic()
    out.append(check("C_O parametrization satisfies the twisted-cubic minors and the pencil", "WO.vertex-cubic",
                     all(not f.subs(co).terms for f in wo.twcu_minors() + list(wo.pencil))))
    q5 = v8_poly_to_po(gamma_w_poly(w, [0, 0, 0, 0, 1]))
    q4 = v8_poly_to_po(gamma_w_poly(w, [0, 0, 0, 1, 0]))
    r5, r4 = q5.is_proportional(wo.pencil[0]), q4.is_proportional(wo.pencil[1])
    out.append(check("hyperplane quadrics of e5 and e4 give the pencil", "WO.pencil-from-hyperplanes",
                     r5 is not None and r4 is not None,
                     scalars=[field.to_text(r) if r is not None else None for r in (r5, r4)]))
    out.append(check("hyperplane fiber at b = (0,0,1) equals the bundle fiber at a = (1,0,0)",
                     "WO.hyperplane-fibers", mv4_matches_bundle(wo, (0, 0, 1))))
    # the pencil vertex at (t : s) is C_O(s, t)
    ok = all(wo.pencil_vertex((t, s)) == wo.c_o_point(s, t) for s, t in ((1, 0), (0, 1), (2, 3), (-1, 5)))
    out.append(check("pencil vertices trace C_O", "WO.vertex-cubic", ok))
    return out


# --- rulings oracle ----------------------------------------------------------------------------

def ruling_oracle_check(p: int = 5) -> Check:
    """Parity rule on the rank-6 cone in P^6 against the component oracle, on every pair.

    The oracle colours the maximal isotropic subspaces of the nondegenerate
    form in six variables; joining each with the vertex gives all isotropic
    3-planes of the cone.
    """
    F = GF(p, small_ok=True)
    order, color = enumerate_families(standard_split_form(F, 3))
    cone = standard_split_form(F, 3, extra=1)
    _, vert = rank_vertex(cone)
    apex = [F.zero] * 6 + [F.one]
    planes = [LinSubspace(F, [list(r) + [F.zero] for r in key] + [apex], 6, coerce=False) for key in order]
    bad = [k for k, pl in enumerate(planes) if not contains(cone, pl)]
    mismatches = 0
    pairs = 0
    for i in range(len(planes)):
        for j in range(i + 1, len(planes)):
            pairs += 1
            same = same_ruling(cone, planes[i], planes[j], vertex=vert, checked=True)
            if same != (color[order[i]] == color[order[j]]):
                mismatches += 1
    return check("parity rule matches the exhaustive family oracle", "rulings.parity-rule",
                 mismatches == 0 and not bad and len(set(color.values())) == 2,
                 field=F.spec, planes=len(planes), pairs=pairs, mismatches=mismatches)


# --- field gates --------------------------------------------------------------------------------

def require_prime_field(field: Field) -> PrimeField:
    if field == QQ:
        raise DegenerateInput("extension required: the six points are not rational for this seed",
                              ["six points rational"])
    if not isinstance(field, PrimeField):
        raise ConfigError("the net, rulings and verra suites run over a prime field fp:p")
    return field


def working_wo(field: PrimeField) -> WOModel:
    return project_from_node(build_w(field))


# --- net and rulings ---------------------------------------------------------------------------

def nodal_model(cfg: RunConfig, omega: ScalarMatrix | None = None) -> nd.NodalXModel:
    F = require_prime_field(cfg.field)
    wo = working_wo(F)
    if omega is not None:
        return nd.nodal_x_from_omega(wo, omega, SplitMix64(derive_seed(cfg.seed, 0x4F4D)))
    return nd.sample_nodal_x(wo, cfg.seed, cfg.budget)


def septic_pit_check(m: nd.NodalXModel, trials: int, seed: int) -> Check:
    """Black-box det(member) minus the interpolated septic is zero (Schwartz-Zippel)."""
    F = m.field

    def diff(pt):
        return F.sub(m.net.member(pt).gram.det(), m.disc.septic.evaluate(pt))

    v = pit_zero(diff, trials, seed, degree=7, field=F, nvars=3)
    return check("septic agrees with the determinant at random points", "net.discriminant-septic", v.zero,
                 trials=v.trials, failure_bound=str(v.failure_bound))


def net_suite(cfg: RunConfig, m: nd.NodalXModel) -> list[Check]:
    rng = SplitMix64(derive_seed(cfg.seed, 0x4E4554))
    out = bundle_rank_check(m.wo, rng.split(1))
    out.append(septic_pit_check(m, cfg.trials, derive_seed(cfg.seed, 0x504954)))
    out.extend(nd.net_checks(m, rng.split(2)))
    out.extend(nd.conic_bundle_checks(m, rng.split(3)))
    return out


def rulings_suite(cfg: RunConfig, m: nd.NodalXModel, oracle: bool = True) -> list[Check]:
    rng = SplitMix64(derive_seed(cfg.seed, 0x52554C))
    out = [ruling_oracle_check()] if oracle else []
    out.extend(nd.gamma1_section_and_labels(m, rng.split(1)))
    out.append(fiber_conic_labels_check(m, rng.split(2)))
    return out


def fiber_conic_labels_check(m: nd.NodalXModel, rng: SplitMix64) -> Check:
    """A p_W fiber conic gives a line of members and six labelled points over Γ6."""
    F = m.field
    for _ in range(16):
        a = [F.random(rng) for _ in range(3)]
        if all(F.is_zero(c) for c in a):
            continue
        try:
            lc, cps = nd.rho_g_point(m, nd.fiber_conic_plane(m, a), rng)
        except nd.GeometryError:
            continue
        ok = len(cps) == 6 and all(m.disc.gamma6.contains(c.base) for c in cps)
        return check("fiber conic gives six labelled points over its line of members", "rulings.conic-line-section",
                     ok, base=[F.to_text(c) for c in a], extension_degree=getattr(cps[0].base.field, "k", 1))
    return check("fiber conic gives six labelled points over its line of members", "rulings.conic-line-section",
                 False, reason="no admissible fiber found")


# --- verra -------------------------------------------------------------------------------------

def verra_model(cfg: RunConfig, model: vr.NormalFormModel | None = None) -> vr.VerraInstance:
    F = require_prime_field(cfg.field)
    if model is not None:
        return vr.verra_instance_from_model(model, SplitMix64(derive_seed(cfg.seed, 0x5652, 1)))
    return vr.build_verra_instance(F, cfg.seed, cfg.budget)


def verra_suite(cfg: RunConfig, inst: vr.VerraInstance) -> list[Check]:
    return vr.verra_checks(inst, SplitMix64(derive_seed(cfg.seed, 0x564552)))


# --- everything --------------------------------------------------------------------------------

def run(cfg: RunConfig, omega: ScalarMatrix | None = None, normal: vr.NormalFormModel | None = None) -> list[Check]:
    """Checks of the selected suite; raises DegenerateInput for a degenerate seed."""
    out: list[Check] = []
    if cfg.wants("appendix"):
        out.extend(appendix_suite(QQ))
    if cfg.wants("net") or cfg.wants("rulings"):
        m = nodal_model(cfg, omega)
        if cfg.wants("net"):
            out.extend(net_suite(cfg, m))
        if cfg.wants("rulings"):
            out.extend(rulings_suite(cfg, m))
    if cfg.wants("verra"):
        out.extend(verra_suite(cfg, verra_model(cfg, normal)))
    return out
