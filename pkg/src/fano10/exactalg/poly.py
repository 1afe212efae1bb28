"""Sparse multivariate polynomials over an exact field."""
from __future__ import annotations

import operator
from typing import Iterable, Sequence

from .fields import Field, FieldElement, PrimeField


class ArityError(ValueError):
    pass


class NotDivisible(ArityError):
    pass


def _add_exp(a, b):
    return tuple(map(operator.add, a, b))


class MultiPoly:
    """Polynomial in ``nvars`` variables stored as ``{exponent tuple: raw coefficient}``.

    No zero coefficients are stored. Terms are ordered lexicographically with
    ``x0 > x1 > ...`` whenever an order is needed (leading term, division,
    serialization).
    """

    __slots__ = ("field", "nvars", "terms", "_hdeg")

    def __init__(self, field: Field, nvars: int, terms: dict | None = None, *, coerce: bool = True):
        self.field = field
        self.nvars = nvars
        self._hdeg = False  # not yet computed
        if not terms:
            self.terms = {}
            return
        if coerce:
            clean = {}
            for e, c in terms.items():
                e = tuple(int(x) for x in e)
                if len(e) != nvars:
                    raise ArityError(f"exponent {e} does not have length {nvars}")
                if any(x < 0 for x in e):
                    raise ArityError(f"negative exponent in {e}")
                c = field.coerce(c)
                if not field.is_zero(c):
                    if e in clean:
                        c = field.add(clean[e], c)
                        if field.is_zero(c):
                            del clean[e]
                            continue
                    clean[e] = c
            self.terms = clean
        else:
            self.terms = terms

    # --- constructors -----------------------------------------------------------------
    @classmethod
    def zero(cls, field: Field, nvars: int) -> "MultiPoly":
        return cls(field, nvars)

    @classmethod
    def const(cls, field: Field, nvars: int, c) -> "MultiPoly":
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, field: Field, nvars: int, i: int) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(field, nvars, {tuple(e): field.one}, coerce=False)

    @classmethod
    def gens(cls, field: Field, nvars: int) -> list["MultiPoly"]:
        return [cls.var(field, nvars, i) for i in range(nvars)]

    @classmethod
    def linear_form(cls, field: Field, coeffs: Sequence) -> "MultiPoly":
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(field, n, terms)

    # --- basic queries ----------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i: int) -> int:
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    @property
    def homogeneous_degree(self) -> int | None:
        """The common total degree of all terms, or ``None`` (zero poly included)."""
        if self._hdeg is False:
            degs = {sum(e) for e in self.terms}
            self._hdeg = degs.pop() if len(degs) == 1 else None
        return self._hdeg

    def is_homogeneous(self) -> bool:
        return self.homogeneous_degree is not None

    def coeff(self, exp) -> object:
        return self.terms.get(tuple(exp), self.field.zero)

    def leading_term(self):
        e = max(self.terms)
        return e, self.terms[e]

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, x in enumerate(e) if x}

    # --- arithmetic -------------------------------------------------------------------
    def _coerce_other(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ArityError(f"arity mismatch: {self.nvars} vs {other.nvars}")
            if other.field != self.field:
                raise ArityError(f"field mismatch: {self.field.spec} vs {other.field.spec}")
            return other
        return MultiPoly.const(self.field, self.nvars, other)

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce_other(other)
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = F.add(out[e], c)
                if F.is_zero(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return MultiPoly(F, self.nvars, out, coerce=False)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        F = self.field
        return MultiPoly(F, self.nvars, {e: F.neg(c) for e, c in self.terms.items()}, coerce=False)

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce_other(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce_other(other) - self

    def scale(self, c) -> "MultiPoly":
        F = self.field
        c = F.coerce(c)
        if F.is_zero(c):
            return MultiPoly.zero(F, self.nvars)
        return MultiPoly(F, self.nvars, {e: F.mul(v, c) for e, v in self.terms.items()}, coerce=False)

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            if isinstance(other, FieldElement):
                return self.scale(self.field.coerce(other))
            return self.scale(self.field.coerce(other))
        other = self._coerce_other(other)
        F = self.field
        if not self.terms or not other.terms:
            return MultiPoly.zero(F, self.nvars)
        out: dict = {}
        if isinstance(F, PrimeField):
            p = F.p
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(map(operator.add, e1, e2))
                    out[e] = out.get(e, 0) + c1 * c2
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            mul, add = F.mul, F.add
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(map(operator.add, e1, e2))
                    c = mul(c1, c2)
                    out[e] = add(out[e], c) if e in out else c
            out = {e: c for e, c in out.items() if not F.is_zero(c)}
        return MultiPoly(F, self.nvars, out, coerce=False)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.const(self.field, self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.field == other.field and self.terms == other.terms
        try:
            return self == MultiPoly.const(self.field, self.nvars, other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    # --- division ---------------------------------------------------------------------
    def divmod(self, g: "MultiPoly") -> tuple["MultiPoly", "MultiPoly"]:
        """Division by a single polynomial in lex order; ``r == 0`` iff ``g`` divides."""
        g = self._coerce_other(g)
        if not g.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        F = self.field
        ge, gc = g.leading_term()
        ginv = F.inv(gc)
        rest = [(e, c) for e, c in g.terms.items() if e != ge]
        work = dict(self.terms)
        q: dict = {}
        r: dict = {}
        while work:
            e = max(work)
            c = work.pop(e)
            if all(a >= b for a, b in zip(e, ge)):
                qe = tuple(a - b for a, b in zip(e, ge))
                qc = F.mul(c, ginv)
                q[qe] = qc
                for e2, c2 in rest:
                    t = _add_exp(qe, e2)
                    v = F.sub(work.get(t, F.zero), F.mul(qc, c2))
                    if F.is_zero(v):
                        work.pop(t, None)
                    else:
                        work[t] = v
            else:
                r[e] = c
        return MultiPoly(F, self.nvars, q, coerce=False), MultiPoly(F, self.nvars, r, coerce=False)

    def exact_div(self, g: "MultiPoly") -> "MultiPoly":
        q, r = self.divmod(g)
        if r.terms:
            raise NotDivisible("polynomial is not divisible")
        return q

    def divides(self, f: "MultiPoly") -> bool:
        """``self | f`` by exact trial division."""
        return not f.divmod(self)[1].terms

    # --- calculus / substitution ------------------------------------------------------
    def diff(self, i: int) -> "MultiPoly":
        F = self.field
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                c2 = F.mul(c, F.from_int(k))
                if not F.is_zero(c2):
                    e2 = e[:i] + (k - 1,) + e[i + 1:]
                    out[e2] = c2
        return MultiPoly(F, self.nvars, out, coerce=False)

    def gradient(self) -> list["MultiPoly"]:
        return [self.diff(i) for i in range(self.nvars)]

    def evaluate(self, point: Sequence):
        """Value at ``point`` (raw values or anything the field coerces)."""
        F = self.field
        if len(point) != self.nvars:
            raise ArityError(f"point has {len(point)} coordinates, expected {self.nvars}")
        pt = [F.coerce(x) for x in point]
        if isinstance(F, PrimeField):
            p = F.p
            pows = _power_tables(pt, self.terms, lambda a, b: a * b % p, 1)
            total = 0
            for e, c in self.terms.items():
                t = c
                for i, k in enumerate(e):
                    if k:
                        t = t * pows[i][k] % p
                total += t
            return total % p
        pows = _power_tables(pt, self.terms, F.mul, F.one)
        total = F.zero
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    t = F.mul(t, pows[i][k])
            total = F.add(total, t)
        return total

    def __call__(self, *point):
        return FieldElement(self.field, self.evaluate(point))

    def subs(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Compose: replace variable ``i`` by ``images[i]`` (all of one arity)."""
        if len(images) != self.nvars:
            raise ArityError(f"need {self.nvars} images, got {len(images)}")
        F = self.field
        arity = images[0].nvars if images else 0
        for im in images:
            if im.nvars != arity:
                raise ArityError("substitution images differ in arity")
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = images[i] if k == 1 else power(i, k - 1) * images[i]
            return cache[key]

        result = MultiPoly.zero(F, arity)
        for e, c in self.terms.items():
            t = MultiPoly.const(F, arity, c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            result = result + t
        return result

    def specialize(self, values: dict) -> "MultiPoly":
        """Set some variables to constants; the arity is unchanged (their exponents become 0)."""
        F = self.field
        vals = {i: F.coerce(v) for i, v in values.items()}
        out: dict = {}
        for e, c in self.terms.items():
            t = c
            e2 = list(e)
            for i, v in vals.items():
                if e[i]:
                    t = F.mul(t, F.pow(v, e[i]))
                    e2[i] = 0
            if F.is_zero(t):
                continue
            e2 = tuple(e2)
            out[e2] = F.add(out[e2], t) if e2 in out else t
        return MultiPoly(F, self.nvars, {e: c for e, c in out.items() if not F.is_zero(c)}, coerce=False)

    def select_vars(self, keep: Sequence[int]) -> "MultiPoly":
        """Re-index onto the variables ``keep`` (others must not occur)."""
        out = {}
        keep = list(keep)
        for e, c in self.terms.items():
            if any(e[i] for i in range(self.nvars) if i not in keep):
                raise ArityError("dropped variable occurs in polynomial")
            out[tuple(e[i] for i in keep)] = c
        return MultiPoly(self.field, len(keep), out, coerce=False)

    def homogenize(self, i: int, degree: int | None = None) -> "MultiPoly":
        """Fill variable ``i`` up so every term has total degree ``degree``."""
        d = self.degree() if degree is None else degree
        out = {}
        for e, c in self.terms.items():
            s = sum(e)
            if s > d:
                raise ArityError("term degree exceeds homogenization degree")
            e2 = list(e)
            e2[i] += d - s
            out[tuple(e2)] = c
        return MultiPoly(self.field, self.nvars, out, coerce=False)

    def map_field(self, target: Field, fn=None) -> "MultiPoly":
        """Coefficients pushed into ``target`` (e.g. GF(p) -> GF(p^k))."""
        if fn is None:
            if hasattr(target, "embed") and self.field.degree == 1 and target != self.field:
                fn = target.embed
            else:
                fn = target.coerce
        return MultiPoly(target, self.nvars, {e: fn(c) for e, c in self.terms.items()}, coerce=False)

    def coefficients_in(self, i: int) -> dict[int, "MultiPoly"]:
        """``{k: c_k}`` with ``self = sum c_k * x_i^k`` (``c_k`` free of ``x_i``)."""
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[i]
            out.setdefault(k, {})[e[:i] + (0,) + e[i + 1:]] = c
        return {k: MultiPoly(self.field, self.nvars, t, coerce=False) for k, t in out.items()}

    def monic(self) -> "MultiPoly":
        if not self.terms:
            return self
        return self.scale(self.field.inv(self.leading_term()[1]))

    def is_proportional(self, other: "MultiPoly"):
        """Scalar ``c`` with ``self == c * other`` or ``None``."""
        if not self.terms or not other.terms:
            return None
        if set(self.terms) != set(other.terms):
            return None
        F = self.field
        e, c = other.leading_term()
        ratio = F.div(self.terms[e], c)
        for e, c in other.terms.items():
            if self.terms[e] != F.mul(ratio, c):
                return None
        return ratio

    # --- text -------------------------------------------------------------------------
    def to_text(self) -> str:
        F = self.field
        body = " ".join(
            "[" + " ".join(str(x) for x in e) + " : " + F.to_text(self.terms[e]) + "]"
            for e in sorted(self.terms, reverse=True)
        )
        return f"{self.nvars}; {body}".rstrip()

    @classmethod
    def from_text(cls, field: Field, text: str) -> "MultiPoly":
        head, _, body = text.partition(";")
        nvars = int(head.strip())
        terms = {}
        # manual scan: coefficient lists may contain brackets
        i = 0
        body = body.strip()
        while i < len(body):
            if body[i].isspace():
                i += 1
                continue
            if body[i] != "[":
                raise ValueError(f"malformed polynomial text near {body[i:i + 20]!r}")
            colon = body.index(":", i)
            exps = tuple(int(x) for x in body[i + 1:colon].split())
            depth, j = 0, colon + 1
            while True:
                ch = body[j]
                if ch == "[":
                    depth += 1
                elif ch == "]":
                    if depth == 0:
                        break
                    depth -= 1
                j += 1
            coeff = body[colon + 1:j].strip()
            if len(exps) != nvars:
                raise ArityError(f"exponent {exps} does not have length {nvars}")
            terms[exps] = field.parse(coeff)
            i = j + 1
        return cls(field, nvars, terms)

    def __repr__(self) -> str:
        return self.pretty()

    def pretty(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(
                (names[i] if k == 1 else f"{names[i]}^{k}") for i, k in enumerate(e) if k
            )
            c = self.field.to_text(self.terms[e]).replace(f" mod {self.field.characteristic}", "")
            parts.append(f"{c}*{mono}" if mono else c)
        return " + ".join(parts)


def _power_tables(pt, terms, mul, one):
    n = len(pt)
    maxdeg = [0] * n
    for e in terms:
        for i, k in enumerate(e):
            if k > maxdeg[i]:
                maxdeg[i] = k
    tables = []
    for i in range(n):
        row = [one]
        for _ in range(maxdeg[i]):
            row.append(mul(row[-1], pt[i]))
        tables.append(row)
    return tables


def polys_from_matrix_form(field: Field, gram_rows) -> MultiPoly:
    """Quadratic form ``x^T A x`` of a raw symmetric matrix."""
    n = len(gram_rows)
    F = field
    terms = {}
    two = F.from_int(2)
    for i in range(n):
        for j in range(i, n):
            a = gram_rows[i][j]
            if F.is_zero(a):
                continue
            e = [0] * n
            e[i] += 1
            e[j] += 1
            terms[tuple(e)] = a if i == j else F.mul(two, a)
    return MultiPoly(F, n, terms, coerce=False)


def sum_polys(polys: Iterable[MultiPoly], field: Field, nvars: int) -> MultiPoly:
    total = MultiPoly.zero(field, nvars)
    for p in polys:
        total = total + p
    return total
