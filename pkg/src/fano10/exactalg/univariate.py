"""Dense univariate polynomials over a finite field and their factorization.

Polynomials are lists of raw coefficients, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``). Factorization follows the
classical pipeline: squarefree decomposition, distinct-degree splitting,
then Cantor-Zassenhaus equal-degree splitting (odd characteristic).
"""
from __future__ import annotations

import math
from functools import reduce

from .fields import ExtensionField, Field, FiniteFieldRequired, PrimeField
from .poly import ArityError, MultiPoly
from .rng import SplitMix64


def utrim(F: Field, f: list) -> list:
    f = list(f)
    while f and F.is_zero(f[-1]):
        f.pop()
    return f


def uadd(F, f, g):
    n = max(len(f), len(g))
    z = F.zero
    return utrim(F, [F.add(f[i] if i < len(f) else z, g[i] if i < len(g) else z) for i in range(n)])


def usub(F, f, g):
    n = max(len(f), len(g))
    z = F.zero
    return utrim(F, [F.sub(f[i] if i < len(f) else z, g[i] if i < len(g) else z) for i in range(n)])


def uscale(F, f, c):
    return utrim(F, [F.mul(a, c) for a in f])


def umul(F, f, g):
    if not f or not g:
        return []
    if isinstance(F, PrimeField):
        p = F.p
        out = [0] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if a:
                for j, b in enumerate(g):
                    out[i + j] += a * b
        return utrim(F, [c % p for c in out])
    out = [F.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if F.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return utrim(F, out)


def udivmod(F, f, g):
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(f)
    dg = len(g) - 1
    if len(r) - 1 < dg:
        return [], utrim(F, r)
    q = [F.zero] * (len(r) - dg)
    inv = F.inv(g[-1])
    for k in range(len(r) - 1 - dg, -1, -1):
        c = F.mul(r[k + dg], inv)
        q[k] = c
        if F.is_zero(c):
            continue
        for i, gi in enumerate(g):
            r[k + i] = F.sub(r[k + i], F.mul(c, gi))
    return utrim(F, q), utrim(F, r[:dg])


def umod(F, f, g):
    return udivmod(F, f, g)[1]


def umonic(F, f):
    if not f:
        return f
    return uscale(F, f, F.inv(f[-1]))


def ugcd(F, f, g):
    f, g = utrim(F, f), utrim(F, g)
    while g:
        f, g = g, umod(F, f, g)
    return umonic(F, f)


def uderiv(F, f):
    return utrim(F, [F.mul(F.from_int(i), f[i]) for i in range(1, len(f))])


def upowmod(F, base, e: int, m):
    result = [F.one]
    base = umod(F, base, m)
    while e:
        if e & 1:
            result = umod(F, umul(F, result, base), m)
        e >>= 1
        if e:
            base = umod(F, umul(F, base, base), m)
    return result


def ueval(F, f, x):
    acc = F.zero
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def _pth_root(F: Field, f: list) -> list:
    """``g`` with ``g(x)^p = f(x)``, assuming only exponents divisible by p occur."""
    p = F.characteristic
    # a -> a^(p^(k-1)) inverts Frobenius on GF(p^k)
    k = F.degree
    root = (lambda a: F.pow(a, p ** (k - 1))) if k > 1 else (lambda a: a)
    return utrim(F, [root(f[i]) for i in range(0, len(f), p)])


def squarefree_decomposition(F: Field, f: list) -> list[tuple[list, int]]:
    """``[(g_i, m_i)]`` with ``f = lc * prod g_i^m_i``, each ``g_i`` squarefree and monic."""
    if not F.is_finite:
        raise FiniteFieldRequired("factorization needs a finite field")
    f = umonic(F, utrim(F, f))
    if len(f) <= 1:
        return []
    p = F.characteristic
    out: list[tuple[list, int]] = []
    i = 1
    g = uderiv(F, f)
    if g:
        c = ugcd(F, f, g)
        w = udivmod(F, f, c)[0]
        while len(w) > 1:
            y = ugcd(F, w, c)
            z = udivmod(F, w, y)[0]
            if len(z) > 1:
                out.append((z, i))
            i += 1
            w, c = y, udivmod(F, c, y)[0]
        if len(c) > 1:
            for h, m in squarefree_decomposition(F, _pth_root(F, c)):
                out.append((h, m * p))
    else:
        for h, m in squarefree_decomposition(F, _pth_root(F, f)):
            out.append((h, m * p))
    merged: dict[tuple, int] = {}
    for h, m in out:
        merged[tuple(h)] = merged.get(tuple(h), 0) + m
    return [(list(h), m) for h, m in merged.items()]


def distinct_degree(F: Field, f: list) -> list[tuple[list, int]]:
    """Split a squarefree monic ``f`` into products of irreducibles of equal degree."""
    q = F.order
    out = []
    h = [F.zero, F.one]
    x = [F.zero, F.one]
    d = 0
    rest = f
    while len(rest) - 1 >= 2 * (d + 1):
        d += 1
        h = upowmod(F, h, q, rest)
        g = ugcd(F, rest, usub(F, h, x))
        if len(g) > 1:
            out.append((g, d))
            rest = udivmod(F, rest, g)[0]
            h = umod(F, h, rest)
    if len(rest) > 1:
        out.append((rest, len(rest) - 1))
    return out


def equal_degree(F: Field, f: list, d: int, rng: SplitMix64) -> list[list]:
    """Cantor-Zassenhaus split of a monic product of degree-``d`` irreducibles."""
    n = len(f) - 1
    if n == d:
        return [f]
    if F.characteristic == 2:
        raise FiniteFieldRequired("odd characteristic required")
    q = F.order
    e = (q ** d - 1) // 2
    while True:
        a = utrim(F, [F.random(rng) for _ in range(n)])
        if len(a) < 2:
            continue
        g = ugcd(F, f, a)
        if 1 < len(g) < len(f):
            break
        b = upowmod(F, a, e, f)
        g = ugcd(F, f, usub(F, b, [F.one]))
        if 1 < len(g) < len(f):
            break
    return equal_degree(F, g, d, rng) + equal_degree(F, udivmod(F, f, g)[0], d, rng)


def _sort_key(F, f):
    return (len(f), [F.to_text(c) for c in reversed(f)])


def factor_dense(F: Field, f: list, rng: SplitMix64 | None = None) -> list[tuple[list, int]]:
    if not F.is_finite:
        raise FiniteFieldRequired(f"cannot factor over {F.spec}")
    f = utrim(F, f)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    rng = rng or SplitMix64(0x5EED)
    out = []
    for g, m in squarefree_decomposition(F, f):
        for h, d in distinct_degree(F, g):
            for irr in equal_degree(F, h, d, rng):
                out.append((irr, m))
    out.sort(key=lambda t: (_sort_key(F, t[0]), t[1]))
    return out


def to_dense(f: MultiPoly) -> list:
    if f.nvars != 1:
        raise ArityError("expected a univariate polynomial")
    F = f.field
    if not f.terms:
        return []
    out = [F.zero] * (f.degree() + 1)
    for (k,), c in f.terms.items():
        out[k] = c
    return out


def from_dense(F: Field, f: list) -> MultiPoly:
    return MultiPoly(F, 1, {(k,): c for k, c in enumerate(f) if not F.is_zero(c)}, coerce=False)


def uni_factor(f: MultiPoly, rng: SplitMix64 | None = None) -> list[tuple[MultiPoly, int]]:
    """Monic irreducible factors with multiplicities of a univariate polynomial."""
    F = f.field
    return [(from_dense(F, g), m) for g, m in factor_dense(F, to_dense(f), rng)]


def roots(F: Field, f: list, rng: SplitMix64 | None = None) -> list:
    """Roots in ``F`` (with multiplicity ignored), sorted by text form."""
    f = umonic(F, utrim(F, f))
    if len(f) <= 1:
        return []
    rng = rng or SplitMix64(0x5EED)
    x = [F.zero, F.one]
    g = ugcd(F, f, usub(F, upowmod(F, x, F.order, f), x))
    if len(g) <= 1:
        return []
    lin = equal_degree(F, g, 1, rng)
    out = [F.neg(h[0]) for h in lin]
    return sorted(out, key=F.to_text)


def binary_form_to_dense(f: MultiPoly) -> tuple[list, int]:
    """Dehomogenize a binary form at ``x1 = 1``; also return its degree."""
    if f.nvars != 2:
        raise ArityError("expected a binary form")
    d = f.homogeneous_degree
    if d is None:
        raise ArityError("expected a nonzero homogeneous binary form")
    F = f.field
    out = [F.zero] * (d + 1)
    for (a, _b), c in f.terms.items():
        out[a] = c
    return utrim(F, out), d


def binary_roots(f: MultiPoly, rng: SplitMix64 | None = None) -> list[tuple]:
    """Projective roots ``(s, t)`` of a binary form in its own field.

    Affine roots are returned as ``(r, 1)``; a root at infinity as ``(1, 0)``.
    """
    F = f.field
    dense, d = binary_form_to_dense(f)
    out = [(r, F.one) for r in roots(F, dense, rng)]
    if len(dense) - 1 < d:
        out.append((F.one, F.zero))
    return out


def is_squarefree_binary(f: MultiPoly) -> bool:
    """No repeated projective root (infinity included)."""
    dense, d = binary_form_to_dense(f)
    F = f.field
    if d - (len(dense) - 1) >= 2:
        return False
    if len(dense) <= 2:
        return True
    return len(ugcd(F, dense, uderiv(F, dense))) <= 1


def splitting_degree(F: PrimeField, f: list) -> tuple[int, list[tuple[list, int]]]:
    """Degree ``k`` of the splitting field of ``f`` over GF(p) and its factorization."""
    fac = factor_dense(F, f)
    k = reduce(lambda a, b: a * b // math.gcd(a, b), [len(g) - 1 for g, _ in fac], 1)
    return k, fac


def splitting_field(F: PrimeField, f: list, rng: SplitMix64 | None = None) -> ExtensionField | PrimeField:
    """GF(p^k) over which ``f`` splits into linear factors.

    The modulus is an irreducible factor of ``f`` of degree ``k`` when one
    exists, otherwise a seeded random irreducible of degree ``k``.
    """
    from .fields import random_irreducible

    k, fac = splitting_degree(F, f)
    if k == 1:
        return F
    for g, _ in fac:
        if len(g) - 1 == k:
            return ExtensionField(F.p, g, small_ok=True)
    rng = rng or SplitMix64(0x5EED ^ k)
    return ExtensionField(F.p, random_irreducible(F.p, k, rng), small_ok=True)


def binary_gcd(forms: list[MultiPoly]) -> MultiPoly:
    """Monic gcd of binary forms (as a binary form); the zero form is ignored."""
    nz = [f for f in forms if f.terms]
    if not nz:
        raise ArityError("gcd of zero forms")
    F = nz[0].field
    g = None
    inf = None
    for f in nz:
        dense, d = binary_form_to_dense(f)
        g = dense if g is None else ugcd(F, g, dense)
        m = d - (len(dense) - 1)
        inf = m if inf is None else min(inf, m)
    g = umonic(F, g)
    dg = len(g) - 1
    terms = {(a, dg - a + inf): c for a, c in enumerate(g) if not F.is_zero(c)}
    return MultiPoly(F, 2, terms, coerce=False)


def reduce_binary_forms(forms: list[MultiPoly]) -> list[MultiPoly]:
    """Divide a tuple of binary forms by their common factor."""
    g = binary_gcd(forms)
    if g.homogeneous_degree == 0:
        return list(forms)
    return [f.exact_div(g) if f.terms else f for f in forms]
