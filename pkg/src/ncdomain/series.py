"""Truncated free power series and positive regular symbols.

A free power series over n noncommuting indeterminates is stored as a
mapping from words (tuples of letters 1..n) to square complex coefficient
matrices; absent words are zero.  Every series carries an explicit
truncation degree: arithmetic truncates to the smaller degree of its
operands, and composition with zero-constant-term arguments is exact up
to the common truncation, so no hidden tails ever enter a computation.

Evaluation sends a series F = sum_w Z_w C_w to sum_w X_w (x) C_w for an
n-tuple X of square matrices, with the operator factor first in every
tensor product.  All accumulations run in graded order (grade by grade,
lexicographic within a grade) so identical inputs reproduce results
bit-for-bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .words import Letters, Word, _as_letters, word_text


class ShapeMismatchError(ValueError):
    """Operands disagree on letter count or coefficient dimension."""


class CompositionError(ValueError):
    """Composition argument violates the zero-constant-term requirement."""


class RegularityError(ValueError):
    """A symbol fails positivity/regularity validation."""


def _grade_key(item: tuple[Letters, object]) -> tuple[int, Letters]:
    return (len(item[0]), item[0])


class FreeSeries:
    """A degree-truncated free power series with (e x e) matrix coefficients."""

    __slots__ = ("n", "degree", "coeff_dim", "_coeffs")

    def __init__(
        self,
        n: int,
        degree: int,
        coeffs: Mapping | None = None,
        coeff_dim: int = 1,
    ):
        if n < 1:
            raise ValueError(f"need at least one generator, got n={n}")
        if degree < 0:
            raise ValueError(f"degree must be >= 0, got {degree}")
        if coeff_dim < 1:
            raise ValueError(f"coeff_dim must be >= 1, got {coeff_dim}")
        self.n = n
        self.degree = degree
        self.coeff_dim = coeff_dim
        store: dict[Letters, np.ndarray] = {}
        if coeffs:
            for key, value in coeffs.items():
                letters = _as_letters(key, n)
                if len(letters) > degree:
                    raise ValueError(
                        f"word of length {len(letters)} exceeds degree {degree}"
                    )
                mat = np.asarray(value, dtype=complex)
                if mat.ndim == 0:
                    mat = mat.reshape(1, 1) * np.eye(coeff_dim)
                if mat.shape != (coeff_dim, coeff_dim):
                    raise ShapeMismatchError(
                        f"coefficient for word {word_text(letters)!r} has shape "
                        f"{mat.shape}, expected ({coeff_dim}, {coeff_dim})"
                    )
                if np.any(mat != 0):
                    if letters in store:
                        store[letters] = store[letters] + mat
                    else:
                        store[letters] = mat
        self._coeffs = {w: m for w, m in store.items() if np.any(m != 0)}

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, n: int, degree: int, coeff_dim: int = 1) -> "FreeSeries":
        return cls(n, degree, {}, coeff_dim)

    @classmethod
    def constant(cls, value, n: int, degree: int, coeff_dim: int = 1) -> "FreeSeries":
        mat = np.asarray(value, dtype=complex)
        if mat.ndim == 0:
            mat = mat.reshape(1, 1)
            if coeff_dim != 1:
                mat = complex(mat[0, 0]) * np.eye(coeff_dim)
        return cls(n, degree, {(): mat}, max(coeff_dim, mat.shape[0]))

    @classmethod
    def generator(cls, i: int, n: int, degree: int, coeff_dim: int = 1) -> "FreeSeries":
        if not 1 <= i <= n:
            raise ValueError(f"generator index {i} outside 1..{n}")
        return cls(n, degree, {(i,): np.eye(coeff_dim)}, coeff_dim)

    # -- access ------------------------------------------------------

    def coeff(self, word) -> np.ndarray:
        letters = _as_letters(word, self.n)
        mat = self._coeffs.get(letters)
        if mat is None:
            return np.zeros((self.coeff_dim, self.coeff_dim), dtype=complex)
        return mat.copy()

    def items(self) -> list[tuple[Letters, np.ndarray]]:
        """Nonzero (word, coefficient) pairs in graded-lex order."""
        return sorted(self._coeffs.items(), key=_grade_key)

    def support(self) -> list[Letters]:
        return [w for w, _ in self.items()]

    def grade_items(self, k: int) -> list[tuple[Letters, np.ndarray]]:
        return [(w, m) for w, m in self.items() if len(w) == k]

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def max_degree_present(self) -> int:
        if not self._coeffs:
            return 0
        return max(len(w) for w in self._coeffs)

    def allclose(self, other: "FreeSeries", tol: float = 1e-12) -> bool:
        if self.n != other.n or self.coeff_dim != other.coeff_dim:
            return False
        words = set(self._coeffs) | set(other._coeffs)
        return all(
            np.max(np.abs(self.coeff(w) - other.coeff(w))) <= tol for w in words
        )

    # -- arithmetic ----------------------------------------------------

    def _check_compatible(self, other: "FreeSeries") -> None:
        if self.n != other.n:
            raise ShapeMismatchError(
                f"series over n={self.n} and n={other.n} generators"
            )
        if self.coeff_dim != other.coeff_dim:
            raise ShapeMismatchError(
                f"coefficient dimensions {self.coeff_dim} and {other.coeff_dim}"
            )

    def __add__(self, other: "FreeSeries") -> "FreeSeries":
        self._check_compatible(other)
        degree = min(self.degree, other.degree)
        out: dict[Letters, np.ndarray] = {}
        for w, m in list(self._coeffs.items()) + list(other._coeffs.items()):
            if len(w) > degree:
                continue
            out[w] = out[w] + m if w in out else np.array(m)
        return FreeSeries(self.n, degree, out, self.coeff_dim)

    def __neg__(self) -> "FreeSeries":
        return self.scale(-1.0)

    def __sub__(self, other: "FreeSeries") -> "FreeSeries":
        return self + (-other)

    def scale(self, scalar: complex) -> "FreeSeries":
        out = {w: scalar * m for w, m in self._coeffs.items()}
        return FreeSeries(self.n, self.degree, out, self.coeff_dim)

    def __rmul__(self, scalar) -> "FreeSeries":
        return self.scale(complex(scalar))

    def __mul__(self, other) -> "FreeSeries":
        if isinstance(other, FreeSeries):
            return multiply(self, other)
        return self.scale(complex(other))

    def truncated(self, degree: int) -> "FreeSeries":
        out = {w: m for w, m in self._coeffs.items() if len(w) <= degree}
        return FreeSeries(self.n, degree, out, self.coeff_dim)


def multiply(left: FreeSeries, right: FreeSeries) -> FreeSeries:
    """Product with (FG)_w = sum over splittings w = u v of F_u G_v.

    Truncates to the smaller of the operand degrees.
    """
    left._check_compatible(right)
    degree = min(left.degree, right.degree)
    scalar = left.coeff_dim == 1
    acc: dict[Letters, object] = {}
    for u, a in left.items():
        if len(u) > degree:
            continue
        for v, b in right.items():
            if len(u) + len(v) > degree:
                continue
            w = u + v
            term = complex(a[0, 0]) * complex(b[0, 0]) if scalar else a @ b
            acc[w] = acc[w] + term if w in acc else term
    return FreeSeries(left.n, degree, acc, left.coeff_dim)


def compose(outer: FreeSeries, inner: Sequence[FreeSeries]) -> FreeSeries:
    """Substitute the tuple ``inner`` for the generators of ``outer``.

    Every inner series must have zero constant term; then the monomials
    of ``outer`` of length k contribute only in degrees >= k, and the
    result is exact up to the common truncation degree of the inner
    tuple.  Coefficients combine as kron(inner-product coefficient,
    outer coefficient), operator factor first.
    """
    inner = list(inner)
    if len(inner) != outer.n:
        raise ShapeMismatchError(
            f"outer series has {outer.n} letters but {len(inner)} arguments given"
        )
    if not inner:
        raise ShapeMismatchError("composition needs at least one inner series")
    n = inner[0].n
    e_in = inner[0].coeff_dim
    for j, phi in enumerate(inner, start=1):
        if phi.n != n or phi.coeff_dim != e_in:
            raise ShapeMismatchError(
                f"inner series {j} has (n={phi.n}, e={phi.coeff_dim}), "
                f"expected (n={n}, e={e_in})"
            )
        if () in phi._coeffs:
            raise CompositionError(
                f"inner series {j} has a nonzero constant term"
            )
    degree = min(phi.degree for phi in inner)
    e_out = e_in * outer.coeff_dim
    products: dict[Letters, FreeSeries] = {
        (): FreeSeries.constant(np.eye(e_in), n, degree, e_in)
    }

    def product_for(word: Letters) -> FreeSeries:
        cached = products.get(word)
        if cached is None:
            cached = multiply(inner[word[0] - 1], product_for(word[1:]))
            products[word] = cached
        return cached

    acc: dict[Letters, np.ndarray] = {}
    for beta, c in outer.items():
        if len(beta) > degree:
            continue
        for alpha, a in product_for(beta).items():
            term = np.kron(a, c)
            acc[alpha] = acc[alpha] + term if alpha in acc else term
    return FreeSeries(n, degree, acc, e_out)


def evaluate(series: FreeSeries, point: Sequence[np.ndarray]) -> np.ndarray:
    """Evaluate sum_w X_w (x) C_w at an n-tuple of square matrices.

    The result acts on C^d (x) C^e with the operator factor first.  Terms
    are accumulated grade by grade in lexicographic order.
    """
    mats = [np.asarray(x, dtype=complex) for x in point]
    if len(mats) != series.n:
        raise ShapeMismatchError(
            f"series over {series.n} letters evaluated at a {len(mats)}-tuple"
        )
    for x in mats:
        if x.ndim != 2 or x.shape[0] != x.shape[1]:
            raise ShapeMismatchError("evaluation points must be square matrices")
        if x.shape != mats[0].shape:
            raise ShapeMismatchError("evaluation tuple has mixed dimensions")
    d = mats[0].shape[0] if mats else 1
    e = series.coeff_dim
    out = np.zeros((d * e, d * e), dtype=complex)
    monomials: dict[Letters, np.ndarray] = {(): np.eye(d, dtype=complex)}

    def monomial(word: Letters) -> np.ndarray:
        cached = monomials.get(word)
        if cached is None:
            cached = mats[word[0] - 1] @ monomial(word[1:])
            monomials[word] = cached
        return cached

    for w, c in series.items():
        x_w = monomial(w)
        if e == 1:
            out += complex(c[0, 0]) * x_w
        else:
            out += np.kron(x_w, c)
    return out


class PositiveRegularFunction:
    """A symbol f = sum_w a_w Z_w defining an operator domain.

    Coefficients are real with a_empty = 0, a_w >= 0 everywhere, and
    every degree-one coefficient strictly positive.  Validation failures
    raise RegularityError naming the offending coefficient.
    """

    __slots__ = ("n", "degree", "_coeffs")

    def __init__(self, n: int, coeffs: Mapping):
        if n < 1:
            raise ValueError(f"need at least one generator, got n={n}")
        store: dict[Letters, float] = {}
        for key, value in coeffs.items():
            letters = _as_letters(key, n)
            cval = complex(value)
            if cval.imag != 0:
                raise RegularityError(
                    f"coefficient of word {word_text(letters)!r} must be real"
                )
            a = float(cval.real)
            if not letters:
                if a != 0.0:
                    raise RegularityError("constant term must vanish")
                continue
            if a < 0.0:
                raise RegularityError(
                    f"coefficient of word {word_text(letters)!r} must be "
                    f"nonnegative, got {a}"
                )
            if a != 0.0:
                store[letters] = store.get(letters, 0.0) + a
        for i in range(1, n + 1):
            if store.get((i,), 0.0) <= 0.0:
                raise RegularityError(
                    f"linear coefficient of generator {i} must be strictly positive"
                )
        self.n = n
        self._coeffs = store
        self.degree = max(len(w) for w in store)

    def coefficient(self, word) -> float:
        return self._coeffs.get(_as_letters(word, self.n), 0.0)

    def items(self) -> list[tuple[Letters, float]]:
        return sorted(self._coeffs.items(), key=_grade_key)

    def support(self) -> list[Letters]:
        return [w for w, _ in self.items()]

    @property
    def min_linear_coefficient(self) -> float:
        return min(self._coeffs[(i,)] for i in range(1, self.n + 1))

    def as_series(self, degree: int | None = None) -> FreeSeries:
        deg = self.degree if degree is None else degree
        coeffs = {w: a for w, a in self._coeffs.items() if len(w) <= deg}
        return FreeSeries(self.n, deg, coeffs, 1)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PositiveRegularFunction)
            and self.n == other.n
            and self._coeffs == other._coeffs
        )

    def __hash__(self) -> int:
        return hash((self.n, tuple(sorted(self._coeffs.items()))))

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        terms = " + ".join(
            f"{a:g}*Z[{word_text(w)}]" for w, a in self.items()
        )
        return f"PositiveRegularFunction(n={self.n}, {terms})"


def unit_ball_symbol(n: int) -> PositiveRegularFunction:
    """The symbol Z_1 + .. + Z_n whose domain is the closed operator ball."""
    return PositiveRegularFunction(n, {(i,): 1.0 for i in range(1, n + 1)})


def reverse_series(f: PositiveRegularFunction) -> PositiveRegularFunction:
    """Symbol with the coefficient of w taken from the reversed word."""
    return PositiveRegularFunction(
        f.n, {w[::-1]: a for w, a in f.items()}
    )


def rescale_symbol(
    f: PositiveRegularFunction, scales: Sequence[float]
) -> PositiveRegularFunction:
    """Coefficient rescaling a_w -> a_w / prod(c_i^2 over letters of w).

    This is the symbol whose domain the coordinate scaling
    X -> (c_1 X_1, .., c_n X_n) maps onto the domain of f.
    """
    c = [float(x) for x in scales]
    if len(c) != f.n:
        raise ShapeMismatchError(f"expected {f.n} scales, got {len(c)}")
    if any(x <= 0 for x in c):
        raise ValueError("scales must be strictly positive")
    out = {}
    for w, a in f.items():
        factor = 1.0
        for i in w:
            factor *= c[i - 1] * c[i - 1]
        out[w] = a / factor
    return PositiveRegularFunction(f.n, out)


@dataclass(frozen=True)
class ConvergenceProfile:
    """Per-degree growth indicators for a series against a weight table.

    per_degree[k-1] is ||sum over |w| = k of C_w* C_w / b_w||^(1/2k); the
    tail estimate is the maximum over the last ceil(D/3) degrees, a proxy
    for whether the series converges on the domain the weights define
    (boundedness needs a tail estimate <= 1).
    """

    per_degree: tuple[float, ...]
    tail_estimate: float

    @property
    def degrees(self) -> range:
        return range(1, len(self.per_degree) + 1)


def convergence_profile(series: FreeSeries, weights) -> ConvergenceProfile:
    """Growth profile of ``series`` in the geometry given by ``weights``.

    ``weights`` must cover every degree up to the series truncation
    (a WeightTable built with N >= series.degree).
    """
    if weights.N < series.degree:
        raise ValueError(
            f"weight table covers length <= {weights.N}, series degree "
            f"is {series.degree}"
        )
    e = series.coeff_dim
    values = []
    for k in range(1, series.degree + 1):
        total = np.zeros((e, e), dtype=complex)
        for w, c in series.grade_items(k):
            total += (c.conj().T @ c) / weights[w]
        norm = float(np.linalg.norm(total, 2)) if np.any(total != 0) else 0.0
        values.append(norm ** (1.0 / (2.0 * k)) if norm > 0 else 0.0)
    if not values:
        return ConvergenceProfile((), 0.0)
    tail = max(values[-math.ceil(len(values) / 3):])
    return ConvergenceProfile(tuple(values), tail)
