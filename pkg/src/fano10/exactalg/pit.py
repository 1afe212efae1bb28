"""Polynomial identity testing: exact when the expansion is at hand, else Schwartz-Zippel."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .fields import Field
from .poly import MultiPoly
from .rng import SplitMix64


@dataclass(frozen=True)
class PitVerdict:
    zero: bool
    method: str  # "coefficients" or "sampling"
    failure_bound: Fraction  # probability that "zero" is wrong; 0 when exact
    trials: int = 0


def pit_zero(f: MultiPoly | Callable, trials: int = 20, seed: int = 0, *,
             degree: int | None = None, field: Field | None = None,
             nvars: int | None = None) -> PitVerdict:
    """Decide whether ``f`` is the zero polynomial.

    A :class:`MultiPoly` is judged by its coefficients (so ``x^2 + x`` over
    GF(2) is nonzero although it vanishes as a function). A black-box callable
    needs ``degree``, ``field`` and ``nvars``; it is sampled on uniform points
    and a "zero" verdict carries the bound ``(degree / |F|) ** trials``.
    Sampling is refused when ``|F| <= degree``.
    """
    if isinstance(f, MultiPoly):
        return PitVerdict(not f.terms, "coefficients", Fraction(0))
    if degree is None or field is None or nvars is None:
        raise ValueError("black-box testing needs degree, field and nvars")
    if field.order is None:
        raise ValueError("sampling needs a finite field")
    if field.order <= degree:
        raise ValueError("field too small for sampling; expand and inspect coefficients")
    rng = SplitMix64(seed)
    for k in range(trials):
        pt = [field.random(rng) for _ in range(nvars)]
        if not field.is_zero(f(pt)):
            return PitVerdict(False, "sampling", Fraction(0), k + 1)
    return PitVerdict(True, "sampling", Fraction(degree, field.order) ** trials, trials)
