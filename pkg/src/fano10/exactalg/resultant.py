"""Resultants and a resultant-based certificate that ternary forms share no zero.

Sign convention: ``Res(f, g) = lc(f)^deg(g) * prod g(r)`` over the roots ``r``
of ``f``, i.e. the determinant of the Sylvester matrix with the ``deg g``
shifted rows of ``f`` on top.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .fields import Field
from .linalg import bareiss_det, det, inverse
from .poly import ArityError, MultiPoly
from .rng import SplitMix64
from .univariate import ugcd, utrim


def sylvester_rows(fc: list, gc: list, zero) -> list[list]:
    """Sylvester matrix from coefficient lists given highest degree first."""
    m, n = len(fc) - 1, len(gc) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(fc) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(gc) + [zero] * (size - n - 1 - i))
    return rows


def resultant_uni(f: MultiPoly, g: MultiPoly, var: int) -> MultiPoly:
    """Sylvester resultant eliminating variable ``var`` (arity is kept)."""
    if f.nvars != g.nvars:
        raise ArityError("arity mismatch")
    F, nv = f.field, f.nvars
    df, dg = f.degree_in(var), g.degree_in(var)
    if df <= 0 and dg <= 0:
        raise ArityError("both inputs are constant in the eliminated variable")
    if not f.terms or not g.terms:
        return MultiPoly.zero(F, nv)
    if dg == 0:
        return g ** df
    if df == 0:
        return f ** dg
    cf, cg = f.coefficients_in(var), g.coefficients_in(var)
    zero = MultiPoly.zero(F, nv)
    fc = [cf.get(k, zero) for k in range(df, -1, -1)]
    gc = [cg.get(k, zero) for k in range(dg, -1, -1)]
    return bareiss_det(sylvester_rows(fc, gc, zero))


def _form_coeffs_at(form: MultiPoly, d: int, pt12) -> list:
    """Coefficients (in x0, highest formal degree ``d`` first) after x1, x2 := pt12."""
    F = form.field
    out = [F.zero] * (d + 1)
    a, b = pt12
    for (e0, e1, e2), c in form.terms.items():
        out[d - e0] = F.add(out[d - e0], F.mul(c, F.mul(F.pow(a, e1), F.pow(b, e2))))
    return out


def binary_resultant_x0(f: MultiPoly, g: MultiPoly) -> list:
    """``Res_{x0}(f, g)`` of ternary forms with formal degrees, as a binary form.

    Returned as the dense list ``r`` with ``R(x1, x2) = sum r[k] x1^(D-k) x2^k``
    of length ``D + 1``, ``D = deg f * deg g``. Computed by evaluation at
    ``(x1, x2) = (1, t)`` and interpolation; at ``t`` the formal Sylvester
    determinant is exact, so the interpolant is the resultant itself.
    """
    F = f.field
    d, e = f.homogeneous_degree, g.homogeneous_degree
    if d is None or e is None or f.nvars != 3 or g.nvars != 3:
        raise ArityError("expected nonzero ternary forms")
    D = d * e
    if F.order is not None and F.order < D + 1:
        raise ArithmeticError("field too small for interpolation")
    nodes = [F.from_int(k) for k in range(D + 1)]
    vals = []
    for t in nodes:
        fc = _form_coeffs_at(f, d, (F.one, t))
        gc = _form_coeffs_at(g, e, (F.one, t))
        vals.append(det(F, sylvester_rows(fc, gc, F.zero)) if d + e else F.one)
    vinv = inverse(F, [[F.pow(x, k) for k in range(D + 1)] for x in nodes])
    coeffs = []
    for row in vinv:
        s = F.zero
        for a, v in zip(row, vals):
            s = F.add(s, F.mul(a, v))
        coeffs.append(s)
    # coefficient of t^k is the coefficient of x1^(D-k) x2^k
    return coeffs


def _random_change(F: Field, rng: SplitMix64):
    while True:
        m = [[F.random(rng) for _ in range(3)] for _ in range(3)]
        if not F.is_zero(det(F, m)):
            return m


def _apply_change(forms, m):
    F = forms[0].field
    xs = MultiPoly.gens(F, 3)
    images = []
    for row in m:
        im = MultiPoly.zero(F, 3)
        for c, x in zip(row, xs):
            im = im + x.scale(c)
        images.append(im)
    return [f.subs(images) for f in forms]


@dataclass
class ZeroCertificate:
    """Outcome of :func:`no_common_projective_zero`."""

    certified: bool
    common_zero: tuple | None = None
    attempts: int = 0
    notes: list[str] = dc_field(default_factory=list)


def no_common_projective_zero(forms: list[MultiPoly], rng: SplitMix64 | None = None,
                              attempts: int = 4) -> ZeroCertificate:
    """Certify that ternary forms have no common zero in the projective plane.

    After a random linear change of coordinates, random combinations ``f`` and
    ``g_i`` of the forms are eliminated against each other in ``x0``. A common
    zero ``(a0:a1:a2)`` either is ``(1:0:0)`` (tested directly) or makes every
    ``Res_{x0}(f, g_i)`` vanish at ``(a1:a2)``; so if those binary forms have no
    common root (infinity included) the forms have no common zero. A
    nontrivial gcd may be spurious, hence several attempts; if none succeeds
    the result is "not certified" (which does not prove a common zero).
    """
    forms = [f for f in forms if f.terms]
    if len(forms) < 2:
        return ZeroCertificate(False, notes=["fewer than two nonzero forms"])
    F = forms[0].field
    rng = rng or SplitMix64(0xC0FFEE)
    cert = ZeroCertificate(False)
    by_degree: dict[int, list[MultiPoly]] = {}
    for f in forms:
        d = f.homogeneous_degree
        if d is None or f.nvars != 3:
            raise ArityError("expected ternary forms")
        if d == 0:
            return ZeroCertificate(True, notes=["nonzero constant among the forms"])
        by_degree.setdefault(d, []).append(f)
    for attempt in range(attempts):
        cert.attempts = attempt + 1
        change = _random_change(F, rng) if attempt else [[F.one if i == j else F.zero for j in range(3)] for i in range(3)]
        groups = {d: _apply_change(fs, change) for d, fs in sorted(by_degree.items())}

        def combo(fs):
            out = MultiPoly.zero(F, 3)
            for f in fs:
                out = out + f.scale(F.random_nonzero(rng))
            return out

        if all(f.evaluate((F.one, F.zero, F.zero)) == F.zero for fs in groups.values() for f in fs):
            cert.notes.append("all forms vanish at (1:0:0) in the chosen coordinates")
            continue
        dmin = min(groups)
        f = combo(groups[dmin])
        if not f.terms:
            continue
        gs = []
        for d, fs in groups.items():
            gs.append(combo(fs))
            if len(fs) > 1:
                gs.append(combo(fs))
        gcd = None
        at_infinity = True
        degenerate = False
        for g in gs:
            if not g.terms:
                continue
            r = binary_resultant_x0(f, g)
            dense = utrim(F, r)
            if not dense:
                degenerate = True
                break
            # a root at x1 = 0 means the top formal coefficient vanishes
            at_infinity = at_infinity and F.is_zero(r[-1])
            gcd = dense if gcd is None else ugcd(F, gcd, dense)
        if degenerate or gcd is None:
            cert.notes.append("resultant vanished identically")
            continue
        if len(gcd) <= 1 and not at_infinity:
            cert.certified = True
            return cert
        cert.notes.append(f"binary gcd of degree {len(gcd) - 1}, root at infinity: {at_infinity}")
    return cert


def exhaustive_common_zeros(forms: list[MultiPoly], stop_at_first: bool = True) -> list[tuple]:
    """Brute-force common projective zeros over a (small) prime field."""
    F = forms[0].field
    p = F.order
    pts = [(1, a, b) for a in range(p) for b in range(p)]
    pts += [(0, 1, b) for b in range(p)] + [(0, 0, 1)]
    out = []
    for pt in pts:
        if all(f.evaluate(pt) == F.zero for f in forms):
            out.append(pt)
            if stop_at_first:
                break
    return out
