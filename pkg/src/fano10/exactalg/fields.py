"""Exact coefficient fields: the rationals, prime fields GF(p) and extensions GF(p^k).

Every field works on *raw* values (``Fraction``, ``int`` in ``[0, p)`` and
``k``-tuples of such ints respectively) through its ``add``/``mul``/...
methods; polynomial and matrix code stays generic over that interface.
:class:`FieldElement` wraps a raw value for operator-level use.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from sympy import isprime

from .rng import SplitMix64


class FieldError(ValueError):
    pass


class FiniteFieldRequired(FieldError):
    """Raised by operations that only make sense over a finite field."""


class Field:
    characteristic: int
    order: int | None = None
    degree: int = 1
    zero: object
    one: object

    # --- arithmetic on raw values (overridden) ------------------------------------------
    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def coerce(self, x):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def pow(self, a, n: int):
        if n < 0:
            a, n = self.inv(a), -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            n >>= 1
            if n:
                a = self.mul(a, a)
        return result

    def from_int(self, n: int):
        return self.coerce(n)

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    def __call__(self, x) -> "FieldElement":
        return FieldElement(self, self.coerce(x))

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and self.spec == other.spec

    def __hash__(self) -> int:
        return hash(self.spec)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.spec!r})"

    # --- finite-field helpers -----------------------------------------------------------
    def random(self, rng: SplitMix64):
        raise FiniteFieldRequired(f"cannot sample uniformly from {self.spec}")

    def random_nonzero(self, rng: SplitMix64):
        while True:
            a = self.random(rng)
            if not self.is_zero(a):
                return a

    def elements(self):
        raise FiniteFieldRequired(f"{self.spec} is infinite")

    def is_square(self, a) -> bool:
        if self.is_zero(a):
            return True
        return self.pow(a, (self.order - 1) // 2) == self.one

    def sqrt(self, a):
        """A square root of ``a`` or ``None`` (Tonelli-Shanks over GF(q))."""
        if self.is_zero(a):
            return self.zero
        q = self.order
        if not self.is_square(a):
            return None
        if q % 4 == 3:
            return self.pow(a, (q + 1) // 4)
        s, t = 0, q - 1
        while t % 2 == 0:
            s, t = s + 1, t // 2
        # deterministic non-residue search
        for z in self.elements():
            if not self.is_zero(z) and not self.is_square(z):
                break
        m, c = s, self.pow(z, t)
        x, b = self.pow(a, (t + 1) // 2), self.pow(a, t)
        while b != self.one:
            i, bb = 0, b
            while bb != self.one:
                bb = self.mul(bb, bb)
                i += 1
            g = c
            for _ in range(m - i - 1):
                g = self.mul(g, g)
            x = self.mul(x, g)
            c = self.mul(g, g)
            b = self.mul(b, c)
            m = i
        return x

    # --- text ---------------------------------------------------------------------------
    def to_text(self, a) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError


class Rationals(Field):
    characteristic = 0
    spec = "q"
    SAMPLE_RADIUS = 1 << 15

    def __init__(self) -> None:
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return a / b

    def coerce(self, x):
        if isinstance(x, FieldElement):
            if x.field.characteristic != 0:
                raise FieldError("cannot map a finite-field element into Q")
            x = x.raw
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def sqrt(self, a):
        if a < 0:
            return None
        from math import isqrt

        n, d = a.numerator, a.denominator
        rn, rd = isqrt(n), isqrt(d)
        if rn * rn == n and rd * rd == d:
            return Fraction(rn, rd)
        return None

    def is_square(self, a) -> bool:
        return self.sqrt(a) is not None

    def elements(self):
        raise FiniteFieldRequired("Q is infinite")

    def random(self, rng: SplitMix64):
        # bounded integer sample set, large enough for identity testing
        return Fraction(rng.below(2 * self.SAMPLE_RADIUS + 1) - self.SAMPLE_RADIUS)

    def to_text(self, a) -> str:
        return str(a)

    def parse(self, text: str):
        return Fraction(text.strip())


def check_prime(p: int, small_ok: bool = False) -> None:
    if p in (2, 3):
        raise FieldError(f"characteristic {p} is not supported")
    if not isprime(p):
        raise FieldError(f"{p} is not prime")
    if p <= 13 and not small_ok:
        raise FieldError(f"working prime must exceed 13 (got {p})")


class PrimeField(Field):
    """GF(p) with raw values ``int`` in ``[0, p)``.

    Primes ``p <= 13`` are refused unless ``small_ok`` is set; that escape is
    reserved for exhaustive auxiliary checks (e.g. the GF(5) ruling oracle).
    """

    def __init__(self, p: int, small_ok: bool = False) -> None:
        check_prime(p, small_ok)
        self.p = p
        self.characteristic = p
        self.order = p
        self.spec = f"fp:{p}"
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * pow(b, -1, self.p) % self.p

    def pow(self, a, n: int):
        return pow(a, n, self.p)

    def coerce(self, x):
        if isinstance(x, FieldElement):
            if x.field.characteristic != self.p or x.field.degree != 1:
                raise FieldError(f"cannot map {x.field.spec} element into {self.spec}")
            return x.raw
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            return x.numerator % self.p * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {x!r} into {self.spec}")

    def random(self, rng: SplitMix64):
        return rng.below(self.p)

    def elements(self):
        return iter(range(self.p))

    def to_text(self, a) -> str:
        return f"{a} mod {self.p}"

    def parse(self, text: str):
        text = text.strip()
        if " mod " in text:
            r, p = text.split(" mod ")
            if int(p) != self.p:
                raise FieldError(f"modulus {p} does not match {self.spec}")
            text = r
        if "/" in text:
            return self.coerce(Fraction(text))
        return int(text) % self.p


# --- dense GF(p)[x] helpers on int lists, low degree first -----------------------------------

def _trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmod(f: list[int], m: list[int], p: int) -> list[int]:
    f = [c % p for c in f]
    _trim(f)
    dm = len(m) - 1
    inv_lc = pow(m[-1], -1, p)
    while len(f) - 1 >= dm:
        c = f[-1] * inv_lc % p
        shift = len(f) - 1 - dm
        for i, mi in enumerate(m):
            f[shift + i] = (f[shift + i] - c * mi) % p
        _trim(f)
    return f


def _pmul(f: list[int], g: list[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return _trim([c % p for c in out])


def _pgcd(f: list[int], g: list[int], p: int) -> list[int]:
    f, g = _trim([c % p for c in f]), _trim([c % p for c in g])
    while g:
        f, g = g, _pmod(f, g, p)
    if f:
        inv = pow(f[-1], -1, p)
        f = [c * inv % p for c in f]
    return f


def _ppowmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        e >>= 1
        if e:
            base = _pmod(_pmul(base, base, p), m, p)
    return result


def is_irreducible_mod_p(m: list[int], p: int) -> bool:
    """Rabin's test for a polynomial over GF(p) given low-degree-first."""
    m = _trim([c % p for c in m])
    k = len(m) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    # x^(p^k) == x mod m
    h = x
    for _ in range(k):
        h = _ppowmod(h, p, m, p)
    if _trim([(a - b) % p for a, b in itertools.zip_longest(h, x, fillvalue=0)]):
        return False
    prime_divisors = [d for d in range(2, k + 1) if k % d == 0 and isprime(d)]
    for d in prime_divisors:
        h = x
        for _ in range(k // d):
            h = _ppowmod(h, p, m, p)
        diff = _trim([(a - b) % p for a, b in itertools.zip_longest(h, x, fillvalue=0)])
        if len(_pgcd(m, diff, p)) > 1:
            return False
    return True


class ExtensionField(Field):
    """GF(p^k) = GF(p)[z]/(m(z)) with raw values ``k``-tuples of residues.

    ``modulus`` is given low degree first and is made monic; irreducibility is
    checked once here.
    """

    def __init__(self, p: int, modulus, small_ok: bool = False) -> None:
        check_prime(p, small_ok)
        m = _trim([int(c) % p for c in modulus])
        if len(m) < 2:
            raise FieldError("modulus must have positive degree")
        inv = pow(m[-1], -1, p)
        m = [c * inv % p for c in m]
        if not is_irreducible_mod_p(m, p):
            raise FieldError(f"modulus {m} is reducible over GF({p})")
        self.p = p
        self.k = len(m) - 1
        self.modulus = tuple(m)
        self._low = tuple(m[:-1])
        self.characteristic = p
        self.degree = self.k
        self.order = p ** self.k
        self.base = PrimeField(p, small_ok=True)
        self.spec = f"fpk:{p}:" + ",".join(str(c) for c in m)
        self.zero = (0,) * self.k
        self.one = (1,) + (0,) * (self.k - 1)
        # the class of z, a root of the modulus
        self.gen = (0, 1) + (0,) * (self.k - 2) if self.k > 1 else (-m[0] % p,)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        k, p = self.k, self.p
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        low = self._low
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d] % p
            if c:
                base = d - k
                for i, mi in enumerate(low):
                    if mi:
                        prod[base + i] -= c * mi
        return tuple(x % p for x in prod[:k])

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero")
        p = self.p
        # extended Euclid on (modulus, a)
        r0, r1 = list(self.modulus), _trim(list(a))
        s0, s1 = [], [1]
        while len(r1) > 1:
            # r0 = q*r1 + r
            q = [0] * (len(r0) - len(r1) + 1)
            r = list(r0)
            inv_lc = pow(r1[-1], -1, p)
            while len(r) >= len(r1) and r:
                c = r[-1] * inv_lc % p
                shift = len(r) - len(r1)
                q[shift] = c
                for i, ci in enumerate(r1):
                    r[shift + i] = (r[shift + i] - c * ci) % p
                _trim(r)
            qs = _pmul(q, s1, p)
            s_new = _trim([(x - y) % p for x, y in itertools.zip_longest(s0, qs, fillvalue=0)])
            r0, r1 = r1, r
            s0, s1 = s1, s_new
        c = pow(r1[0], -1, p)
        out = [x * c % p for x in s1] + [0] * self.k
        return tuple(out[: self.k])

    def coerce(self, x):
        if isinstance(x, FieldElement):
            if x.field == self:
                return x.raw
            if x.field.characteristic == self.p and x.field.degree == 1:
                return (x.raw,) + (0,) * (self.k - 1)
            raise FieldError(f"cannot map {x.field.spec} element into {self.spec}")
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return (x % self.p,) + (0,) * (self.k - 1)
        if isinstance(x, Fraction):
            return (self.base.coerce(x),) + (0,) * (self.k - 1)
        if isinstance(x, (tuple, list)):
            if len(x) > self.k:
                raise FieldError(f"extension element has degree >= {self.k}")
            vals = [int(c) % self.p for c in x] + [0] * (self.k - len(x))
            return tuple(vals)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {x!r} into {self.spec}")

    def embed(self, a):
        """Image of a raw GF(p) value."""
        return (a % self.p,) + (0,) * (self.k - 1)

    def frobenius(self, a):
        return self.pow(a, self.p)

    def random(self, rng: SplitMix64):
        return tuple(rng.below(self.p) for _ in range(self.k))

    def elements(self):
        return iter(itertools.product(range(self.p), repeat=self.k))

    def to_text(self, a) -> str:
        return "[" + ",".join(str(c) for c in a) + "]"

    def parse(self, text: str):
        text = text.strip()
        if text.startswith("["):
            return self.coerce([int(c) for c in text.strip("[]").split(",") if c.strip()])
        return self.coerce(self.base.parse(text))


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p: int, small_ok: bool = False) -> PrimeField:
    return PrimeField(p, small_ok=small_ok)


def parse_field(spec: str) -> Field:
    """``q`` | ``fp:p`` | ``fpk:p:c0,c1,...,ck`` (monic modulus, low degree first)."""
    spec = spec.strip()
    if spec in ("q", "Q", "QQ"):
        return QQ
    parts = spec.split(":")
    try:
        if parts[0] == "fp" and len(parts) == 2:
            return GF(int(parts[1]))
        if parts[0] == "fpk" and len(parts) == 3:
            return ExtensionField(int(parts[1]), [int(c) for c in parts[2].split(",")])
    except ValueError as exc:
        if isinstance(exc, FieldError):
            raise
        raise FieldError(f"malformed field spec {spec!r}") from exc
    raise FieldError(f"malformed field spec {spec!r}")


def random_irreducible(p: int, k: int, rng: SplitMix64) -> list[int]:
    """A random monic irreducible of degree ``k`` over GF(p) (low degree first)."""
    while True:
        m = [rng.below(p) for _ in range(k)] + [1]
        if m[0] and is_irreducible_mod_p(m, p):
            return m


class FieldElement:
    """A field value bound to its field, with the usual operators."""

    __slots__ = ("field", "raw")

    def __init__(self, field: Field, raw) -> None:
        self.field = field
        self.raw = raw

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                return self.field.coerce(other)
            return other.raw
        return self.field.coerce(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.raw, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.raw, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.raw))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.raw, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.raw, self._other(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._other(other), self.raw))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.raw))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow(self.raw, n))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.raw))

    def __eq__(self, other) -> bool:
        try:
            return self.raw == self._other(other)
        except (TypeError, FieldError):
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.spec, self.raw))

    def __bool__(self) -> bool:
        return not self.field.is_zero(self.raw)

    def __repr__(self) -> str:
        return f"{self.field.to_text(self.raw)}"
