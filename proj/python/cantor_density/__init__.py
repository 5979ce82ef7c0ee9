"""Exact density computations on Cantor space.

Sets are described by JSON specs (dicts here); bounds come back as Fractions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable

from . import _core
from ._core import DomainError, SpecError

__all__ = [
    "DensitySet",
    "DomainError",
    "SpecError",
    "TracePoint",
    "canonical_of_measure",
    "decode_hat",
    "encode_check",
    "four_ary_digits",
    "head_tail",
    "interleave",
    "least_dyadic_in",
    "ltimes",
    "run_suite",
    "stretch",
    "suites",
]


def _text(value: Any) -> str:
    return value if isinstance(value, str) else json.dumps(value)


def _q(value: Fraction | int | str) -> str:
    if isinstance(value, str):
        return value
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


@dataclass(frozen=True)
class TracePoint:
    n: int
    lo: Fraction
    hi: Fraction


class DensitySet:
    """A measurable set up to null difference, built from a spec."""

    def __init__(self, spec: dict | str):
        self._set = _core.Set(_text(spec))

    @property
    def kind(self) -> str:
        return self._set.kind

    @property
    def spec(self) -> dict:
        return json.loads(self._set.spec)

    def bounds(self, prefix: str = "", budget: int = 5) -> tuple[Fraction, Fraction]:
        lo, hi = self._set.local_bounds(prefix, budget)
        return Fraction(lo), Fraction(hi)

    def trace(self, branch: dict | str, steps: int, budget: int = 5) -> list[TracePoint]:
        return [TracePoint(n, Fraction(lo), Fraction(hi)) for n, lo, hi in self._set.trace(_text(branch), steps, budget)]

    def classify(self, branch: dict | str, eps: Fraction | str = "1/256", max_depth: int = 120, budget: int = 5) -> dict:
        return json.loads(self._set.classify(_text(branch), _q(eps), max_depth, budget))


def encode_check(t: Iterable[int]) -> str:
    return _core.encode_check(list(t))


def decode_hat(s: str) -> list[int]:
    return _core.decode_hat(s)


def head_tail(s: str) -> tuple[str, int]:
    return _core.head_tail(s)


def stretch(s: str) -> str:
    return _core.stretch(s)


def interleave(x: str, y: str) -> str:
    return _core.interleave(x, y)


def ltimes(t: str, u: Iterable[int]) -> str:
    return _core.ltimes(t, list(u))


def four_ary_digits(r: Fraction | str, count: int) -> list[int]:
    return _core.four_ary_digits(_q(r), count)


def least_dyadic_in(lo: Fraction | str, hi: Fraction | str) -> Fraction:
    return Fraction(_core.least_dyadic_in(_q(lo), _q(hi)))


def canonical_of_measure(d: Fraction | str) -> list[str]:
    return _core.canonical_of_measure(_q(d))


def suites() -> list[tuple[str, int, str]]:
    return _core.suites()


def run_suite(name: str, seed: int = 1, cases: int = 0) -> dict:
    return json.loads(_core.run_suite(name, seed, cases))
