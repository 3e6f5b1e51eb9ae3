"""Analytic maps on the unit disk as immutable expression trees.

Every node evaluates element-wise on scalars or numpy arrays of complex
points and knows its own derivative as another tree, so ``f``, ``f'`` and
``f''`` are all exact (no truncated series, no finite differences).
Principal branches are used throughout: ``sqrt(1) = 1``, ``log(1) = 0``.

>>> f = moebius(1.0)
>>> f(0.5)
(1+0j)
>>> eval_deriv(z * z, 0.5)
(1+0j)
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    BranchCutHit,
    DivisionByZero,
    EvaluationError,
    InvalidScale,
    NonNormalized,
    UnknownFamily,
    ZeroOutsideDisk,
)
from .quadrature import adaptive_gauss_legendre

DENOM_FLOOR = 1e-300
BRANCH_TOL = 1e-12


def _as_complex_array(z):
    return np.asarray(z, dtype=complex)


def _check_branch(w, where):
    on_cut = (w.real < 0) & (np.abs(w.imag) <= BRANCH_TOL)
    if np.any(on_cut):
        warnings.warn(
            f"{where}: argument on the negative real axis; principal value returned",
            BranchCutHit,
            stacklevel=4,
        )


def _coerce(x) -> "AnalyticMap":
    if isinstance(x, AnalyticMap):
        return x
    if isinstance(x, (int, float, complex, np.number)):
        return Const(complex(x))
    raise TypeError(f"cannot use {type(x).__name__} as an analytic map")


class AnalyticMap:
    """Base class for expression-tree nodes."""

    op = "?"

    def __call__(self, z):
        return evaluate(self, z)

    # subclasses implement these two
    def _eval(self, z):  # pragma: no cover - abstract
        raise NotImplementedError

    def derivative(self) -> "AnalyticMap":  # pragma: no cover - abstract
        raise NotImplementedError

    def to_json(self) -> dict:  # pragma: no cover - abstract
        raise NotImplementedError

    def __add__(self, other):
        return add(self, _coerce(other))

    def __radd__(self, other):
        return add(_coerce(other), self)

    def __sub__(self, other):
        return add(self, mul(Const(-1), _coerce(other)))

    def __rsub__(self, other):
        return add(_coerce(other), mul(Const(-1), self))

    def __mul__(self, other):
        return mul(self, _coerce(other))

    def __rmul__(self, other):
        return mul(_coerce(other), self)

    def __truediv__(self, other):
        return div(self, _coerce(other))

    def __rtruediv__(self, other):
        return div(_coerce(other), self)

    def __neg__(self):
        return mul(Const(-1), self)

    def __pow__(self, exponent):
        if isinstance(exponent, int) and exponent >= 0:
            out = Const(1)
            for _ in range(exponent):
                out = mul(out, self)
            return out
        return Power(self, float(exponent))

    def __repr__(self):
        return json.dumps(self.to_json())


def _cplx_param(v: complex):
    v = complex(v)
    return [v.real, v.imag]


@dataclass(frozen=True, repr=False)
class Const(AnalyticMap):
    value: complex
    op = "const"

    def _eval(self, z):
        return np.full(z.shape, self.value, dtype=complex)

    def derivative(self):
        return Const(0)

    def to_json(self):
        return {"op": "const", "args": [], "params": {"value": _cplx_param(self.value)}}


@dataclass(frozen=True, repr=False)
class Identity(AnalyticMap):
    op = "z"

    def _eval(self, z):
        return z.copy()

    def derivative(self):
        return Const(1)

    def to_json(self):
        return {"op": "z", "args": [], "params": {}}


@dataclass(frozen=True, repr=False)
class Sum(AnalyticMap):
    terms: tuple
    op = "add"

    def _eval(self, z):
        out = self.terms[0]._eval(z)
        for t in self.terms[1:]:
            out = out + t._eval(z)
        return out

    def derivative(self):
        out = Const(0)
        for t in self.terms:
            out = add(out, t.derivative())
        return out

    def to_json(self):
        return {"op": "add", "args": [t.to_json() for t in self.terms], "params": {}}


@dataclass(frozen=True, repr=False)
class Product(AnalyticMap):
    factors: tuple
    op = "mul"

    def _eval(self, z):
        out = self.factors[0]._eval(z)
        for f in self.factors[1:]:
            out = out * f._eval(z)
        return out

    def derivative(self):
        out = Const(0)
        for i, fi in enumerate(self.factors):
            term = fi.derivative()
            for j, fj in enumerate(self.factors):
                if j != i:
                    term = mul(term, fj)
            out = add(out, term)
        return out

    def to_json(self):
        return {"op": "mul", "args": [f.to_json() for f in self.factors], "params": {}}


@dataclass(frozen=True, repr=False)
class Quotient(AnalyticMap):
    num: AnalyticMap
    den: AnalyticMap
    op = "div"

    def _eval(self, z):
        d = self.den._eval(z)
        bad = np.abs(d) < DENOM_FLOOR
        if np.any(bad):
            point = complex(z[bad].flat[0]) if z.ndim else complex(z)
            raise DivisionByZero(f"denominator vanishes at z = {point}", point=point)
        return self.num._eval(z) / d

    def derivative(self):
        top = add(
            mul(self.num.derivative(), self.den),
            mul(Const(-1), mul(self.num, self.den.derivative())),
        )
        return div(top, mul(self.den, self.den))

    def to_json(self):
        return {"op": "div", "args": [self.num.to_json(), self.den.to_json()], "params": {}}


@dataclass(frozen=True, repr=False)
class Power(AnalyticMap):
    """Principal power ``base ** exponent`` with a real exponent."""

    base: AnalyticMap
    exponent: float
    op = "pow"

    def _eval(self, z):
        w = self.base._eval(z)
        _check_branch(w, "pow")
        zero = w == 0
        if np.any(zero):
            if self.exponent < 0:
                point = complex(z[zero].flat[0]) if z.ndim else complex(z)
                raise DivisionByZero(f"negative power of zero at z = {point}", point=point)
            safe = np.where(zero, 1.0, w)
            out = np.exp(self.exponent * np.log(safe))
            return np.where(zero, 0.0 if self.exponent > 0 else 1.0, out)
        return np.exp(self.exponent * np.log(w))

    def derivative(self):
        if self.exponent == 0:
            return Const(0)
        if self.exponent == 1:
            return self.base.derivative()
        lowered = Power(self.base, self.exponent - 1)
        return mul(Const(self.exponent), lowered, self.base.derivative())

    def to_json(self):
        return {"op": "pow", "args": [self.base.to_json()], "params": {"exponent": self.exponent}}


@dataclass(frozen=True, repr=False)
class Exp(AnalyticMap):
    arg: AnalyticMap
    op = "exp"

    def _eval(self, z):
        return np.exp(self.arg._eval(z))

    def derivative(self):
        return mul(self, self.arg.derivative())

    def to_json(self):
        return {"op": "exp", "args": [self.arg.to_json()], "params": {}}


@dataclass(frozen=True, repr=False)
class Log(AnalyticMap):
    arg: AnalyticMap
    op = "log"

    def _eval(self, z):
        w = self.arg._eval(z)
        _check_branch(w, "log")
        bad = w == 0
        if np.any(bad):
            point = complex(z[bad].flat[0]) if z.ndim else complex(z)
            raise EvaluationError(f"log(0) at z = {point}", point=point)
        return np.log(w)

    def derivative(self):
        return div(self.arg.derivative(), self.arg)

    def to_json(self):
        return {"op": "log", "args": [self.arg.to_json()], "params": {}}


@dataclass(frozen=True, repr=False)
class Sqrt(AnalyticMap):
    arg: AnalyticMap
    op = "sqrt"

    def _eval(self, z):
        w = self.arg._eval(z)
        _check_branch(w, "sqrt")
        return np.sqrt(w)

    def derivative(self):
        return div(self.arg.derivative(), mul(Const(2), self))

    def to_json(self):
        return {"op": "sqrt", "args": [self.arg.to_json()], "params": {}}


@dataclass(frozen=True, repr=False)
class Poly(AnalyticMap):
    """Polynomial in ``z``; coefficients listed constant term first."""

    coeffs: tuple
    op = "poly"

    def _eval(self, z):
        out = np.zeros(z.shape, dtype=complex)
        for a in reversed(self.coeffs):
            out = out * z + a
        return out

    def derivative(self):
        d = tuple(k * a for k, a in enumerate(self.coeffs))[1:]
        return poly(d)

    def to_json(self):
        return {
            "op": "poly",
            "args": [],
            "params": {"coeffs": [_cplx_param(a) for a in self.coeffs]},
        }


@dataclass(frozen=True, repr=False)
class Compose(AnalyticMap):
    """``outer(inner(z))``; ``inner_at_zero`` records ``inner(0)``."""

    outer: AnalyticMap
    inner: AnalyticMap
    inner_at_zero: complex | None = None
    op = "compose"

    def _eval(self, z):
        return self.outer._eval(self.inner._eval(z))

    def derivative(self):
        return mul(compose(self.outer.derivative(), self.inner), self.inner.derivative())

    def to_json(self):
        return {"op": "compose", "args": [self.outer.to_json(), self.inner.to_json()], "params": {}}


@dataclass(frozen=True, repr=False)
class Integral(AnalyticMap):
    """Primitive ``z -> integral of integrand over the segment [0, z]``.

    Uses adaptive Gauss-Legendre on the straight segment, which is valid for
    integrands analytic on the disk. The integrand is never sampled at 0.
    """

    integrand: AnalyticMap
    tol: float = 1e-10
    max_depth: int = 20
    op = "integral"

    def _eval(self, z):
        flat = z.reshape(-1)
        out = np.zeros(flat.shape, dtype=complex)
        live = flat != 0
        if np.any(live):
            zs = flat[live]
            g = self.integrand

            def along(s):
                return g._eval(s[:, None] * zs[None, :])

            # |z| <= 1, so the segment scaling cannot inflate the error
            out[live] = zs * adaptive_gauss_legendre(
                along, 0.0, 1.0, tol=self.tol, max_depth=self.max_depth
            )
        return out.reshape(z.shape)

    def derivative(self):
        return self.integrand

    def to_json(self):
        return {
            "op": "integral",
            "args": [self.integrand.to_json()],
            "params": {"tol": self.tol, "max_depth": self.max_depth},
        }


# ---------------------------------------------------------------- builders
# light constant folding keeps derivative trees from ballooning


def _is_const(f, value=None):
    return isinstance(f, Const) and (value is None or f.value == value)


def add(*terms):
    flat = []
    const = 0j
    for t in terms:
        t = _coerce(t)
        parts = t.terms if isinstance(t, Sum) else (t,)
        for p in parts:
            if isinstance(p, Const):
                const += p.value
            else:
                flat.append(p)
    if const != 0 or not flat:
        flat.append(Const(const))
    return flat[0] if len(flat) == 1 else Sum(tuple(flat))


def mul(*factors):
    flat = []
    const = 1 + 0j
    for f in factors:
        f = _coerce(f)
        parts = f.factors if isinstance(f, Product) else (f,)
        for p in parts:
            if isinstance(p, Const):
                const *= p.value
            else:
                flat.append(p)
    if const == 0:
        return Const(0)
    if const != 1 or not flat:
        flat.insert(0, Const(const))
    return flat[0] if len(flat) == 1 else Product(tuple(flat))


def div(num, den):
    num, den = _coerce(num), _coerce(den)
    if _is_const(num, 0):
        return Const(0)
    if _is_const(den, 1):
        return num
    if isinstance(den, Const) and den.value != 0:
        return mul(Const(1 / den.value), num)
    return Quotient(num, den)


def compose(outer: AnalyticMap, inner: AnalyticMap) -> AnalyticMap:
    outer, inner = _coerce(outer), _coerce(inner)
    if isinstance(outer, Const):
        return outer
    if isinstance(outer, Identity):
        return inner
    try:
        at_zero = complex(inner._eval(np.zeros(())))
    except (EvaluationError, FloatingPointError):
        at_zero = None
    return Compose(outer, inner, at_zero)


z = Identity()


def const(value) -> Const:
    return Const(complex(value))


def sqrt(f) -> AnalyticMap:
    return Sqrt(_coerce(f))


def exp(f) -> AnalyticMap:
    return Exp(_coerce(f))


def log(f) -> AnalyticMap:
    return Log(_coerce(f))


def poly(coeffs: Sequence[complex]) -> AnalyticMap:
    coeffs = tuple(complex(a) for a in coeffs)
    if len(coeffs) <= 1:
        return Const(coeffs[0] if coeffs else 0j)
    return Poly(coeffs)


def integral(f, tol=1e-10, max_depth=20) -> AnalyticMap:
    return Integral(_coerce(f), tol, max_depth)


# ------------------------------------------------------------- evaluation


def evaluate(f: AnalyticMap, z):
    """Value of ``f`` at ``z`` (scalar or array) under principal branches."""
    za = _as_complex_array(z)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        out = f._eval(za)
    if za.ndim == 0:
        return complex(out)
    return out


def derivative(f: AnalyticMap, order: int = 1) -> AnalyticMap:
    for _ in range(order):
        f = f.derivative()
    return f


def eval_deriv(f: AnalyticMap, z):
    """Exact derivative ``f'(z)`` from the symbolic derivative tree."""
    return evaluate(f.derivative(), z)


# ------------------------------------------------------------ Schwarz maps


@dataclass(frozen=True)
class SchwarzMap:
    """``w(z) = phase * rho * z * prod (z - a) / (1 - conj(a) z)``.

    Each Blaschke factor has modulus below 1 inside the disk, so
    ``|w(z)| <= rho |z| <= |z|`` holds by construction.
    """

    rho: float = 1.0
    phase: complex = 1.0
    zeros: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if not (0 < self.rho <= 1):
            raise InvalidScale(f"scale must lie in (0, 1], got {self.rho}")
        if not np.isclose(abs(self.phase), 1.0, atol=1e-12):
            raise InvalidScale(f"phase must be unimodular, got {self.phase}")
        for a in self.zeros:
            if abs(a) >= 1 - 1e-9:
                raise ZeroOutsideDisk(f"zero {a} is not inside the unit disk")

    def __call__(self, z):
        za = _as_complex_array(z)
        out = self.phase * self.rho * za
        for a in self.zeros:
            out = out * (za - a) / (1 - np.conj(a) * za)
        return complex(out) if za.ndim == 0 else out

    def over_z(self) -> AnalyticMap:
        """The tree for ``w(z) / z``, analytic at 0."""
        out = Const(complex(self.phase) * self.rho)
        for a in self.zeros:
            a = complex(a)
            out = mul(out, div(poly([-a, 1]), poly([1, -a.conjugate()])))
        return out

    def as_map(self) -> AnalyticMap:
        return mul(self.over_z(), z)

    def to_json(self):
        return {
            "rho": self.rho,
            "phase": _cplx_param(self.phase),
            "zeros": [_cplx_param(a) for a in self.zeros],
        }


def make_schwarz(rho=1.0, phase=1.0, zeros=()) -> SchwarzMap:
    return SchwarzMap(float(rho), complex(phase), tuple(complex(a) for a in zeros))


# ----------------------------------------------------------- named families


def identity() -> AnalyticMap:
    return z


def koebe_like(beta=2.0) -> AnalyticMap:
    """``z / (1 - z)**beta``; ``beta = 2`` is the Koebe function."""
    return mul(z, Power(poly([1, -1]), -float(beta)))


def moebius(a=1.0) -> AnalyticMap:
    """``z / (1 - a z)``."""
    return div(z, poly([1, -complex(a)]))


def exp_scaled(alpha=1.0) -> AnalyticMap:
    """``z * exp(alpha z)``."""
    return mul(z, Exp(poly([0, complex(alpha)])))


def poly_map(coeffs, normalized=True) -> AnalyticMap:
    coeffs = [complex(a) for a in coeffs]
    if normalized and (len(coeffs) < 2 or coeffs[0] != 0 or coeffs[1] != 1):
        raise NonNormalized("class-A polynomial needs a_0 = 0 and a_1 = 1")
    return poly(coeffs)


def q_c_composed(c, schwarz: SchwarzMap | None = None) -> AnalyticMap:
    """``sqrt(1 + c w(z))``; with ``w(z) = z`` this is the lemniscate map."""
    inner = z if schwarz is None else schwarz.as_map()
    return Sqrt(add(Const(1), mul(Const(float(c)), inner)))


FAMILIES = {
    "identity": identity,
    "koebe_like": koebe_like,
    "moebius": moebius,
    "exp_scaled": exp_scaled,
    "poly": poly_map,
    "q_c_composed": q_c_composed,
}


def make_named(family: str, **params) -> AnalyticMap:
    try:
        builder = FAMILIES[family]
    except KeyError:
        raise UnknownFamily(f"unknown family {family!r}; known: {sorted(FAMILIES)}") from None
    return builder(**params)


def _parse_number(text: str):
    text = text.strip()
    try:
        return float(text)
    except ValueError:
        return complex(text.replace("i", "j"))


def from_spec(spec: str) -> AnalyticMap:
    """Parse ``"family:key=value,key=value"`` or a JSON expression tree.

    >>> from_spec("moebius:a=1")(0.5)
    (1+0j)
    """
    spec = spec.strip()
    if spec.startswith("{"):
        return from_json(json.loads(spec))
    name, _, rest = spec.partition(":")
    params = {}
    for item in filter(None, (s.strip() for s in rest.split(","))):
        key, _, value = item.partition("=")
        if key == "coeffs":
            params[key] = [_parse_number(v) for v in value.split(";")]
        else:
            params[key] = _parse_number(value)
    if name == "q_c_composed":
        rho = params.pop("rho", 1.0)
        params["schwarz"] = make_schwarz(rho=rho)
    return make_named(name, **params)


# --------------------------------------------------------------------- JSON


def _read_complex(v) -> complex:
    if isinstance(v, dict):
        return complex(v["re"], v.get("im", 0.0))
    if isinstance(v, (list, tuple)):
        return complex(v[0], v[1] if len(v) > 1 else 0.0)
    return complex(v)


def from_json(doc) -> AnalyticMap:
    """Rebuild a tree from ``{"op": ..., "args": [...], "params": {...}}``."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    op = doc["op"]
    args = [from_json(a) for a in doc.get("args", [])]
    params = doc.get("params", {})
    if op == "const":
        return Const(_read_complex(params["value"]))
    if op == "z":
        return z
    if op == "add":
        return Sum(tuple(args)) if len(args) > 1 else args[0]
    if op == "mul":
        return Product(tuple(args)) if len(args) > 1 else args[0]
    if op == "div":
        return Quotient(args[0], args[1])
    if op == "pow":
        return Power(args[0], float(params["exponent"]))
    if op == "exp":
        return Exp(args[0])
    if op == "log":
        return Log(args[0])
    if op == "sqrt":
        return Sqrt(args[0])
    if op == "poly":
        return Poly(tuple(_read_complex(a) for a in params["coeffs"]))
    if op == "compose":
        return compose(args[0], args[1])
    if op == "integral":
        return Integral(args[0], float(params.get("tol", 1e-10)), int(params.get("max_depth", 20)))
    raise ValueError(f"unknown op {op!r}")


def finite_difference(f: AnalyticMap, z, h=1e-6):
    """Central difference ``(f(z+h) - f(z-h)) / 2h`` along the real direction."""
    return (evaluate(f, np.asarray(z) + h) - evaluate(f, np.asarray(z) - h)) / (2 * h)


__all__ = [
    "AnalyticMap",
    "Const",
    "Identity",
    "Sum",
    "Product",
    "Quotient",
    "Power",
    "Exp",
    "Log",
    "Sqrt",
    "Poly",
    "Compose",
    "Integral",
    "SchwarzMap",
    "z",
    "const",
    "add",
    "mul",
    "div",
    "compose",
    "sqrt",
    "exp",
    "log",
    "poly",
    "integral",
    "evaluate",
    "derivative",
    "eval_deriv",
    "finite_difference",
    "make_schwarz",
    "make_named",
    "from_spec",
    "from_json",
    "identity",
    "koebe_like",
    "moebius",
    "exp_scaled",
    "poly_map",
    "q_c_composed",
]
