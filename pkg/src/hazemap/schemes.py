"""Merge schemes: binary aggregation laws on the extended half-line [0, inf].

A merge scheme combines two dissimilarity (or haziness) magnitudes into one.
Every scheme here is symmetric, monotone, associative, and has ``inf`` as its
identity, so folding any number of values is order-independent. Values are
plain floats with ``math.inf`` for the point at infinity; NaN is rejected.

Schemes are selected by short string codes (also used by the CLI and config
files): ``min``, ``ext``, ``mv:<a>`` (truncated min with bound ``a``),
``mw:<c>`` (Wiener-Shannon law), ``mpi:<c>`` (product law), ``h``
(hyperbolic law).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

__all__ = [
    "MScheme",
    "MinScheme",
    "ExtScheme",
    "TruncatedScheme",
    "WienerShannonScheme",
    "ProductLawScheme",
    "HyperbolicScheme",
    "GeneratorConjugateScheme",
    "Generator",
    "TNorm",
    "TConorm",
    "TransferFunction",
    "AxiomReport",
    "TConormReport",
    "PRODUCT_TNORM",
    "LUKASIEWICZ_TNORM",
    "MAXIMUM_TCONORM",
    "DRASTIC_SUM_TCONORM",
    "EXP_TRANSFER",
    "DEFAULT_AXIOM_GRID",
    "shifted_log_generator",
    "reciprocal_log_generator",
    "conjugate_tnorm",
    "fold",
    "check_axioms",
    "to_tconorm_check",
    "parse_scheme",
]

DEFAULT_AXIOM_GRID: tuple[float, ...] = (0.0, 1e-3, 1e-1, 1.0, 10.0, 1e3, math.inf)


def _check_value(x: float, name: str = "value") -> float:
    x = float(x)
    if math.isnan(x):
        raise ValueError(f"{name} is NaN")
    if x < 0:
        raise ValueError(f"{name} must be nonnegative, got {x}")
    return x


class MScheme:
    """Base class for merge schemes.

    Subclasses implement ``_finite_rule`` for finite nonnegative inputs; the
    infinity cases are handled uniformly so the identity law ``M(s, inf) = s``
    holds exactly, not merely to rounding.
    """

    kind: str = ""

    @property
    def code(self) -> str:
        raise NotImplementedError

    def _finite_rule(self, s: np.ndarray, t: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def apply_array(self, s: np.ndarray, t: np.ndarray) -> np.ndarray:
        """Elementwise merge of two arrays of extended values."""
        s = np.asarray(s, dtype=np.float64)
        t = np.asarray(t, dtype=np.float64)
        with np.errstate(all="ignore"):
            finite = self._finite_rule(s, t)
            out = np.where(np.isinf(s), t, np.where(np.isinf(t), s, finite))
        return out

    def apply(self, s: float, t: float) -> float:
        """Merge two extended values."""
        s = _check_value(s, "s")
        t = _check_value(t, "t")
        if math.isinf(s):
            return t
        if math.isinf(t):
            return s
        with np.errstate(all="ignore"):
            return float(self._finite_rule(np.float64(s), np.float64(t)))

    def __call__(self, s: float, t: float) -> float:
        return self.apply(s, t)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.code!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, MScheme) and self.code == other.code

    def __hash__(self) -> int:
        return hash(self.code)


class MinScheme(MScheme):
    """Canonical merge: keep the smaller value. The only idempotent scheme here."""

    kind = "min"

    @property
    def code(self) -> str:
        return "min"

    def _finite_rule(self, s, t):
        return np.minimum(s, t)


class ExtScheme(MScheme):
    """Extremal merge: any two finite values collapse to zero."""

    kind = "ext"

    @property
    def code(self) -> str:
        return "ext"

    def _finite_rule(self, s, t):
        return np.zeros(np.broadcast(s, t).shape)


class TruncatedScheme(MScheme):
    """Truncated min: the largest value in [0, bound] below both inputs.

    ``bound=inf`` coincides with :class:`MinScheme`, ``bound=0`` with
    :class:`ExtScheme`; intermediate bounds interpolate between them.
    """

    kind = "truncated"

    def __init__(self, bound: float):
        self.bound = _check_value(bound, "bound")

    @property
    def code(self) -> str:
        return f"mv:{self.bound:g}"

    def _finite_rule(self, s, t):
        return np.minimum(self.bound, np.minimum(s, t))


def _check_scale(c: float) -> float:
    c = float(c)
    if math.isnan(c) or c <= 0:
        raise ValueError(f"scale must be positive, got {c}")
    return c


class WienerShannonScheme(MScheme):
    """Wiener-Shannon law: -(1/c) log(exp(-c s) + exp(-c t)), clamped at zero.

    Evaluated in a log-domain stable form (factor exp(-c min) out of the
    logarithm) so large inputs do not underflow. The result is exactly zero
    whenever exp(-c s) + exp(-c t) >= 1.
    """

    kind = "wiener_shannon"

    def __init__(self, c: float):
        self.c = _check_scale(c)

    @property
    def code(self) -> str:
        return f"mw:{self.c:g}"

    def _finite_rule(self, s, t):
        c = self.c
        m = np.minimum(s, t)
        delta = np.abs(s - t)
        return np.maximum(m - np.log1p(np.exp(-c * delta)) / c, 0.0)


class ProductLawScheme(MScheme):
    """Product law: -(1/c) log(exp(-c s) + exp(-c t) - exp(-c (s + t))).

    Same log-domain stabilization as the Wiener-Shannon law; always
    nonnegative, with M(s, 0) = 0 exact.
    """

    kind = "product_law"

    def __init__(self, c: float):
        self.c = _check_scale(c)

    @property
    def code(self) -> str:
        return f"mpi:{self.c:g}"

    def _finite_rule(self, s, t):
        c = self.c
        m = np.minimum(s, t)
        delta = np.abs(s - t)
        u = np.exp(-c * delta) * (-np.expm1(-c * m))
        return np.maximum(m - np.log1p(u) / c, 0.0)


class HyperbolicScheme(MScheme):
    """Hyperbolic law: s t / (s + t), evaluated as a harmonic sum."""

    kind = "hyperbolic"

    @property
    def code(self) -> str:
        return "h"

    def _finite_rule(self, s, t):
        zero = (s == 0) | (t == 0)
        return np.where(zero, 0.0, 1.0 / (1.0 / s + 1.0 / t))


@dataclass(frozen=True)
class Generator:
    """Strictly increasing continuous map [0, 1] -> [0, inf] with its inverse."""

    name: str
    forward: Callable[[np.ndarray], np.ndarray]
    inverse: Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class TNorm:
    """Binary law on [0, 1]: symmetric, monotone, associative, identity 1."""

    name: str
    fn: Callable[[np.ndarray, np.ndarray], np.ndarray]

    def __call__(self, a, b):
        return self.fn(a, b)


PRODUCT_TNORM = TNorm("product", lambda a, b: a * b)
LUKASIEWICZ_TNORM = TNorm("lukasiewicz", lambda a, b: np.maximum(a + b - 1.0, 0.0))


def shifted_log_generator(c: float = 1.0) -> Generator:
    """Generator x -> -(1/c) log(1 - x), inverse y -> 1 - exp(-c y)."""
    c = _check_scale(c)
    return Generator(
        name=f"shifted_log:{c:g}",
        forward=lambda x: -np.log1p(-np.asarray(x, dtype=np.float64)) / c,
        inverse=lambda y: -np.expm1(-c * np.asarray(y, dtype=np.float64)),
    )


def reciprocal_log_generator() -> Generator:
    """Generator x -> -1 / log(x) (0 at x=0, inf at x=1), inverse y -> exp(-1/y)."""

    def forward(x):
        x = np.asarray(x, dtype=np.float64)
        with np.errstate(all="ignore"):
            return np.where(x >= 1.0, np.inf,
                            np.where(x <= 0.0, 0.0, -1.0 / np.log(x)))

    def inverse(y):
        y = np.asarray(y, dtype=np.float64)
        with np.errstate(all="ignore"):
            return np.where(y <= 0.0, 0.0, np.exp(-1.0 / y))

    return Generator(name="reciprocal_log", forward=forward, inverse=inverse)


class GeneratorConjugateScheme(MScheme):
    """Scheme built by conjugating a t-norm with a generator.

    ``M(s, t) = psi(T(psi_inv(s), psi_inv(t)))`` for finite inputs; the
    infinity cases follow the identity law directly since ``psi_inv(inf) = 1``
    is the t-norm identity.
    """

    kind = "generator_conjugate"

    def __init__(self, tnorm: TNorm, generator: Generator):
        self.tnorm = tnorm
        self.generator = generator

    @property
    def code(self) -> str:
        return f"conj:{self.tnorm.name}:{self.generator.name}"

    def _finite_rule(self, s, t):
        g = self.generator
        return g.forward(self.tnorm(g.inverse(s), g.inverse(t)))


def conjugate_tnorm(tnorm: TNorm, generator: Generator) -> GeneratorConjugateScheme:
    """Build the conjugate scheme of a t-norm, validating the generator.

    Raises ``ValueError`` if the generator is not strictly increasing on
    [0, 1] or its inverse does not invert it to within 1e-9.
    """
    xs = np.linspace(0.0, 1.0, 33)
    with np.errstate(all="ignore"):
        ys = np.asarray(generator.forward(xs), dtype=np.float64)
    if np.isnan(ys).any() or (ys[ys < np.inf] < 0).any():
        raise ValueError(f"generator {generator.name!r} leaves [0, inf]")
    if not np.all(np.diff(ys) > 0):
        raise ValueError(f"generator {generator.name!r} is not strictly increasing")
    with np.errstate(all="ignore"):
        back = np.asarray(generator.inverse(ys), dtype=np.float64)
    if not np.allclose(back, xs, atol=1e-9, rtol=0):
        raise ValueError(f"generator {generator.name!r} is not invertible")
    return GeneratorConjugateScheme(tnorm, generator)


def fold(scheme: MScheme, values: Iterable[float]) -> float:
    """Merge a sequence of extended values into one.

    ``inf`` entries act as the identity and are skipped; the remaining values
    are sorted ascending before a left fold, so the result is deterministic
    under permutation of the input. An empty sequence is an error (it would
    mean merging no edge data at all).
    """
    arr = np.asarray(list(values) if not isinstance(values, np.ndarray) else values,
                     dtype=np.float64).ravel()
    if arr.size == 0:
        raise ValueError("fold requires at least one value")
    if np.isnan(arr).any():
        raise ValueError("fold input contains NaN")
    if (arr < 0).any():
        raise ValueError("fold input contains negative values")
    finite = np.sort(arr[np.isfinite(arr)])
    if finite.size == 0:
        return math.inf
    acc = float(finite[0])
    for v in finite[1:]:
        acc = scheme.apply(acc, float(v))
    return acc


def _rel_diff(a: float, b: float) -> float:
    if a == b:
        return 0.0
    if math.isinf(a) or math.isinf(b):
        return math.inf
    return abs(a - b) / max(1.0, abs(a), abs(b))


@dataclass
class AxiomReport:
    """Residuals of the merge-scheme axioms over a sample grid."""

    scheme: str
    symmetry_residual: float
    associativity_residual: float
    monotonicity_violations: int
    boundary_residual: float
    zero_law_residual: float
    idempotent: bool
    idempotency_residual: float

    def ok(self, tol: float = 1e-9) -> bool:
        return (
            self.symmetry_residual <= tol
            and self.associativity_residual <= tol
            and self.monotonicity_violations == 0
            and self.boundary_residual == 0.0
            and self.zero_law_residual == 0.0
        )


def check_axioms(scheme: MScheme,
                 sample_grid: Sequence[float] = DEFAULT_AXIOM_GRID) -> AxiomReport:
    """Exercise symmetry, associativity, monotonicity, and the boundary laws.

    Symmetry, associativity, and idempotency are reported as max relative
    residuals (relative to ``max(1, |values|)``); monotonicity as a violation
    count under exact comparison; the identity law ``M(s, inf) = s`` and zero
    law ``M(s, 0) = 0`` as max absolute residuals.
    """
    grid = [float(g) for g in sample_grid]
    vals = {(s, t): scheme.apply(s, t) for s in grid for t in grid}

    sym = max(_rel_diff(vals[(s, t)], vals[(t, s)]) for s in grid for t in grid)

    assoc = 0.0
    for r in grid:
        for s in grid:
            for t in grid:
                left = scheme.apply(r, vals[(s, t)])
                right = scheme.apply(vals[(r, s)], t)
                assoc = max(assoc, _rel_diff(left, right))

    mono = 0
    for (s, t), m_st in vals.items():
        for (v, w), m_vw in vals.items():
            if s <= v and t <= w and m_st > m_vw:
                mono += 1

    boundary = 0.0
    zero_law = 0.0
    for s in grid:
        at_inf = scheme.apply(s, math.inf)
        if not (math.isinf(s) and math.isinf(at_inf)):
            boundary = max(boundary, abs(at_inf - s))
        zero_law = max(zero_law, scheme.apply(s, 0.0))

    idem = max(_rel_diff(vals[(s, s)], s) for s in grid)

    return AxiomReport(
        scheme=scheme.code,
        symmetry_residual=sym,
        associativity_residual=assoc,
        monotonicity_violations=mono,
        boundary_residual=boundary,
        zero_law_residual=zero_law,
        idempotent=idem <= 1e-9,
        idempotency_residual=idem,
    )


@dataclass(frozen=True)
class TConorm:
    """Binary law on [0, 1]: symmetric, monotone, associative, identity 0."""

    kind: str
    fn: Callable[[np.ndarray, np.ndarray], np.ndarray]

    def __call__(self, a, b):
        return self.fn(a, b)


MAXIMUM_TCONORM = TConorm("maximum", np.maximum)
DRASTIC_SUM_TCONORM = TConorm(
    "drastic_sum",
    lambda a, b: np.where(a == 0, b, np.where(b == 0, a, 1.0)),
)


@dataclass(frozen=True)
class TransferFunction:
    """Nonincreasing bijection [0, inf] -> [0, 1] used to swap between scales."""

    name: str
    forward: Callable[[np.ndarray], np.ndarray]
    inverse: Callable[[np.ndarray], np.ndarray]


EXP_TRANSFER = TransferFunction(
    name="exp",
    forward=lambda x: np.exp(-np.asarray(x, dtype=np.float64)),
    inverse=lambda a: -np.log(np.asarray(a, dtype=np.float64)),
)

_SUPPORTED_PAIRINGS = {("min", "maximum"), ("ext", "drastic_sum")}


@dataclass
class TConormReport:
    """Max deviation between a scheme and a t-conorm across a transfer function."""

    scheme: str
    tconorm: str
    transfer: str
    max_residual: float
    grid_points: int


def to_tconorm_check(scheme: MScheme, tconorm: TConorm,
                     transfer: TransferFunction = EXP_TRANSFER,
                     grid: Sequence[float] | None = None) -> TConormReport:
    """Compare ``f(M(f_inv(a), f_inv(b)))`` against ``T(a, b)`` on a grid.

    Only the pairings (min, maximum) and (ext, drastic_sum) correspond; any
    other combination raises ``ValueError``.
    """
    if (scheme.kind, tconorm.kind) not in _SUPPORTED_PAIRINGS:
        raise ValueError(
            f"unsupported pairing: scheme {scheme.kind!r} with t-conorm {tconorm.kind!r}"
        )
    if grid is None:
        grid = np.linspace(0.0, 1.0, 50)
    g = np.asarray(grid, dtype=np.float64)
    a, b = np.meshgrid(g, g)
    with np.errstate(all="ignore"):
        via_scheme = transfer.forward(
            scheme.apply_array(transfer.inverse(a), transfer.inverse(b))
        )
        direct = tconorm(a, b)
    resid = float(np.max(np.abs(via_scheme - direct)))
    return TConormReport(
        scheme=scheme.code,
        tconorm=tconorm.kind,
        transfer=transfer.name,
        max_residual=resid,
        grid_points=g.size,
    )


def parse_scheme(code: str) -> MScheme:
    """Parse a scheme code: min | ext | mv:<a> | mw:<c> | mpi:<c> | h."""
    text = code.strip().lower()
    if text == "min":
        return MinScheme()
    if text == "ext":
        return ExtScheme()
    if text == "h":
        return HyperbolicScheme()
    if ":" in text:
        head, _, param = text.partition(":")
        try:
            value = float(param)
        except ValueError:
            raise ValueError(f"bad scheme parameter in {code!r}") from None
        if head == "mv":
            return TruncatedScheme(value)
        if head == "mw":
            return WienerShannonScheme(value)
        if head == "mpi":
            return ProductLawScheme(value)
    raise ValueError(f"unknown scheme code {code!r}")
