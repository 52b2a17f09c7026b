"""Trigonometric polynomials on the circle and the 2-torus.

A polynomial is a finitely supported map from frequencies to complex
coefficients, ``f = sum_k f_k e^{2 pi i k.theta}``.  Products convolve
coefficients without truncation, so every identity below is checked in
coefficient space rather than on a grid.

The same container doubles as an ordinary polynomial in ``C[z, w]`` (use
nonnegative exponents and :func:`poly_partial`); under
``z = e^{2 pi i theta_1}``, ``w = e^{2 pi i theta_2}`` the two views agree.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from math import pi

import numpy as np

from .errors import InvalidInput

__all__ = [
    "TrigPoly",
    "c1_cocycle_density",
    "c1_cocycle_pairing",
    "c1_derivation_pairing",
    "poly_partial",
    "random_trig_poly",
    "trig_deriv",
    "trig_integral",
    "ur_wedge",
]

_TWO_PI_I = 2j * pi


@dataclass(frozen=True)
class TrigPoly:
    variables: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.variables not in (1, 2):
            raise InvalidInput(f"only 1 or 2 variables are supported, got {self.variables}")
        clean = {}
        for k, v in dict(self.terms).items():
            key = (int(k),) if np.isscalar(k) else tuple(int(t) for t in k)
            if len(key) != self.variables:
                raise InvalidInput(f"frequency {k!r} does not have {self.variables} components")
            v = complex(v)
            if not np.isfinite(v):
                raise InvalidInput("coefficients must be finite")
            if v != 0:
                clean[key] = clean.get(key, 0) + v
        object.__setattr__(self, "terms", clean)

    @classmethod
    def constant(cls, value, variables: int = 1) -> "TrigPoly":
        return cls(variables, {(0,) * variables: value})

    @classmethod
    def monomial(cls, freq, coef=1.0) -> "TrigPoly":
        freq = (freq,) if np.isscalar(freq) else tuple(freq)
        return cls(len(freq), {freq: coef})

    def _check(self, other: "TrigPoly"):
        if not isinstance(other, TrigPoly) or other.variables != self.variables:
            raise InvalidInput("trig polynomials must have matching variable counts")

    def __add__(self, other):
        self._check(other)
        out = defaultdict(complex, self.terms)
        for k, v in other.terms.items():
            out[k] += v
        return TrigPoly(self.variables, out)

    def __neg__(self):
        return TrigPoly(self.variables, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if np.isscalar(other):
            return TrigPoly(self.variables, {k: other * v for k, v in self.terms.items()})
        self._check(other)
        out = defaultdict(complex)
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                out[tuple(a + b for a, b in zip(k1, k2))] += v1 * v2
        return TrigPoly(self.variables, out)

    __rmul__ = __mul__

    def coefficient(self, freq) -> complex:
        freq = (freq,) if np.isscalar(freq) else tuple(freq)
        return self.terms.get(freq, 0j)

    def max_abs(self) -> float:
        return max((abs(v) for v in self.terms.values()), default=0.0)

    def __call__(self, *theta) -> complex:
        """Point evaluation at angles ``theta`` (in turns, i.e. ``p = e^{2 pi i theta}``)."""
        th = np.asarray(theta, dtype=float)
        return sum(v * np.exp(_TWO_PI_I * np.dot(k, th)) for k, v in self.terms.items())

    def to_json(self) -> dict:
        return {
            "vars": self.variables,
            "terms": [{"freq": list(k), "coef": [v.real, v.imag]} for k, v in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, obj) -> "TrigPoly":
        try:
            terms = {tuple(t["freq"]): complex(*t["coef"]) for t in obj["terms"]}
            return cls(int(obj["vars"]), terms)
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed TrigPoly JSON: {exc}") from None


def random_trig_poly(rng, variables: int = 1, degree: int = 3, density: float = 0.7) -> TrigPoly:
    ranges = [range(-degree, degree + 1)] * variables
    grid = np.stack(np.meshgrid(*ranges, indexing="ij"), axis=-1).reshape(-1, variables)
    keep = rng.random(len(grid)) < density
    coefs = rng.standard_normal(len(grid)) + 1j * rng.standard_normal(len(grid))
    return TrigPoly(variables, {tuple(k): c for k, c, m in zip(grid, coefs, keep) if m})


def trig_deriv(f: TrigPoly, variable: int = 0) -> TrigPoly:
    """``d/d theta_variable``: multiplies the coefficient of frequency ``k`` by ``2 pi i k``."""
    if not 0 <= variable < f.variables:
        raise InvalidInput(f"variable index {variable} out of range")
    return TrigPoly(f.variables, {k: _TWO_PI_I * k[variable] * v for k, v in f.terms.items()})


def trig_integral(f: TrigPoly) -> complex:
    """Integral against normalized Haar measure: the zero-frequency coefficient."""
    return f.coefficient((0,) * f.variables)


def c1_derivation_pairing(f1: TrigPoly, f0: TrigPoly) -> complex:
    """``D(f1)(f0) = int (d f1/d theta) f0 dp`` on the circle."""
    if f1.variables != 1 or f0.variables != 1:
        raise InvalidInput("derivation pairing is defined on the circle (1 variable)")
    return trig_integral(trig_deriv(f1) * f0)


def c1_cocycle_density(f1: TrigPoly, f2: TrigPoly) -> TrigPoly:
    """Jacobian ``d1 f1 d2 f2 - d2 f1 d1 f2`` on the 2-torus."""
    if f1.variables != 2 or f2.variables != 2:
        raise InvalidInput("cocycle density is defined on the 2-torus (2 variables)")
    return trig_deriv(f1, 0) * trig_deriv(f2, 1) - trig_deriv(f1, 1) * trig_deriv(f2, 0)


def c1_cocycle_pairing(f1: TrigPoly, f2: TrigPoly, f0: TrigPoly) -> complex:
    if f0.variables != 2:
        raise InvalidInput("cocycle pairing is defined on the 2-torus (2 variables)")
    return trig_integral(c1_cocycle_density(f1, f2) * f0)


def poly_partial(p: TrigPoly, variable: int) -> TrigPoly:
    """Formal partial derivative in ``C[z, w]`` (``variable`` 0 is ``z``, 1 is ``w``)."""
    out = {}
    for k, v in p.terms.items():
        if k[variable] != 0:
            kk = list(k)
            kk[variable] -= 1
            out[tuple(kk)] = k[variable] * v
    return TrigPoly(p.variables, out)


def ur_wedge(f1: TrigPoly, f2: TrigPoly) -> TrigPoly:
    """``F_0(f1, f2) = d_w f1 d_z f2 - d_w f2 d_z f1`` on ``C[z, w]``."""
    if f1.variables != 2 or f2.variables != 2:
        raise InvalidInput("the wedge on C[z, w] needs 2-variable polynomials")
    dz, dw = (lambda f: poly_partial(f, 0)), (lambda f: poly_partial(f, 1))
    return dw(f1) * dz(f2) - dw(f2) * dz(f1)
