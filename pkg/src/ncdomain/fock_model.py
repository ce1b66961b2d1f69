"""Truncated weighted creation operators on the full Fock space.

Given a positive regular symbol f, an order m, and a truncation depth N,
the model consists of n operators V_1..V_n on the span of the words of
length <= N:

    V_i e_w = sqrt(b_w / b_{iw}) e_{iw}   for |w| < N,
    V_i e_w = 0                           for |w| = N,

with b the weight table of (f, m).  Every V_i has at most one nonzero
entry per column, and so does any product V_w; the module keeps that
column-map form alongside dense matrices and uses it for the completely
positive map Y -> sum_w a_w V_w Y V_w^*, which is then a sum of scaled
index scatters (batched matrix-vector action) instead of dense products.

The defining property of the truncation: applying (id - Phi_f)^m to the
identity yields exactly the rank-one projection onto the vacuum vector,
up to floating-point roundoff.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .linalg import hermitian_part, operator_norm
from .series import FreeSeries, PositiveRegularFunction
from .weights import WeightTable, weights_direct
from .words import Letters, WordIndex, _as_letters, enumerate_words

ColumnMap = tuple[np.ndarray, np.ndarray]  # (target row per column or -1, weight)


class TruncatedModel:
    """The n-tuple of weighted creation operators truncated at depth N."""

    def __init__(
        self,
        f: PositiveRegularFunction,
        m: int,
        N: int,
        index: WordIndex,
        weights: WeightTable,
    ):
        self.f = f
        self.m = m
        self.N = N
        self.index = index
        self.weights = weights
        dim = index.dim
        b = np.asarray(weights.aligned_values(index), dtype=float)
        targets = np.full((f.n, dim), -1, dtype=np.int64)
        wvals = np.zeros((f.n, dim), dtype=float)
        for j, w in enumerate(index.words):
            if len(w) == N:
                continue
            for i in range(1, f.n + 1):
                t = index.index_of((i,) + w)
                targets[i - 1, j] = t
                wvals[i - 1, j] = np.sqrt(b[j] / b[t])
        self._targets = targets
        self._wvals = wvals
        self._maps: dict[Letters, ColumnMap] = {
            (): (np.arange(dim, dtype=np.int64), np.ones(dim))
        }
        self._dense: dict[int, np.ndarray] = {}

    @property
    def n(self) -> int:
        return self.f.n

    @property
    def dim(self) -> int:
        return self.index.dim

    def creation(self, i: int) -> np.ndarray:
        """Dense matrix of V_i (1-based index); cached."""
        if not 1 <= i <= self.n:
            raise ValueError(f"generator index {i} outside 1..{self.n}")
        mat = self._dense.get(i)
        if mat is None:
            mat = map_to_dense(
                (self._targets[i - 1], self._wvals[i - 1]), self.dim
            )
            self._dense[i] = mat
        return mat

    @property
    def V(self) -> tuple[np.ndarray, ...]:
        """The dense tuple (V_1, .., V_n)."""
        return tuple(self.creation(i) for i in range(1, self.n + 1))

    def monomial_map(self, word) -> ColumnMap:
        """Column map of the product V_w, memoized over suffixes."""
        letters = _as_letters(word, self.n)
        cached = self._maps.get(letters)
        if cached is None:
            t_rest, w_rest = self.monomial_map(letters[1:])
            t_i = self._targets[letters[0] - 1]
            w_i = self._wvals[letters[0] - 1]
            t = np.where(t_rest >= 0, t_i[t_rest], -1)
            w = np.where(t >= 0, w_rest * w_i[np.clip(t_rest, 0, None)], 0.0)
            cached = (t, w)
            self._maps[letters] = cached
        return cached

    def apply_phi(self, y: np.ndarray) -> np.ndarray:
        """The map Y -> sum_w a_w V_w Y V_w^* over the support of f.

        Each summand scatters a scaled submatrix of Y, exploiting the
        one-entry-per-column structure of the monomials.
        """
        y = np.asarray(y, dtype=complex)
        out = np.zeros_like(y)
        for word, a in self.f.items():
            t, w = self.monomial_map(word)
            cols = np.nonzero(t >= 0)[0]
            if cols.size == 0:
                continue
            rows = t[cols]
            wc = w[cols]
            out[np.ix_(rows, rows)] += (a * wc[:, None] * wc[None, :]) * y[
                np.ix_(cols, cols)
            ]
        return out


def map_to_dense(column_map: ColumnMap, dim: int) -> np.ndarray:
    t, w = column_map
    mat = np.zeros((dim, dim), dtype=complex)
    cols = np.nonzero(t >= 0)[0]
    mat[t[cols], cols] = w[cols]
    return mat


def build_model(
    f: PositiveRegularFunction,
    m: int,
    N: int,
    weight_table: WeightTable | None = None,
    cap: int | None = None,
) -> TruncatedModel:
    """Construct the depth-N model of (f, m).

    Weights come from the direct factorization sum unless a precomputed
    table is supplied (it must cover depth N for the same f and m).
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    index = enumerate_words(f.n, N, cap=cap)
    if weight_table is None:
        weight_table = weights_direct(f, m, N, cap=cap)
    else:
        if weight_table.N < N:
            raise ValueError(
                f"weight table covers N={weight_table.N}, model needs {N}"
            )
        if weight_table.m != m or weight_table.f != f:
            raise ValueError("weight table was built for a different domain")
    return TruncatedModel(f, m, N, index, weight_table)


def model_monomial(model: TruncatedModel, word) -> np.ndarray:
    """Dense matrix of the product V_w (empty word gives the identity)."""
    return map_to_dense(model.monomial_map(word), model.dim)


def model_defect(model: TruncatedModel) -> np.ndarray:
    """(id - Phi_f)^m applied to the identity; Hermitian by construction.

    On the truncation this equals the rank-one projection onto the
    vacuum basis vector exactly, which the tests assert entrywise.
    """
    y = np.eye(model.dim, dtype=complex)
    for _ in range(model.m):
        y = hermitian_part(y - model.apply_phi(y))
    return y


def evaluate_on_model(
    series: FreeSeries, model: TruncatedModel, r: float = 1.0
) -> np.ndarray:
    """sum_w r^|w| V_w (x) C_w as a dense matrix on C^dim (x) C^e.

    Accumulation runs grade by grade in lexicographic order, so results
    are reproducible bit-for-bit.
    """
    if series.n != model.n:
        raise ValueError(
            f"series over {series.n} letters on a model with {model.n} generators"
        )
    if series.degree > model.N:
        raise ValueError(
            f"series degree {series.degree} exceeds model depth {model.N}"
        )
    e = series.coeff_dim
    dim = model.dim
    out = np.zeros((dim * e, dim * e), dtype=complex)
    view = out.reshape(dim, e, dim, e)
    for word, c in series.items():
        t, w = model.monomial_map(word)
        cols = np.nonzero(t >= 0)[0]
        if cols.size == 0:
            continue
        scale = r ** len(word)
        if e == 1:
            out[t[cols], cols] += scale * complex(c[0, 0]) * w[cols]
        else:
            view[t[cols], :, cols, :] += (
                scale * w[cols][:, None, None] * c[None, :, :]
            )
    return out


def hardy_norm_estimate(
    series: FreeSeries,
    f: PositiveRegularFunction,
    m: int,
    N: int,
    r_grid: Sequence[float],
) -> list[float]:
    """Norms of the series evaluated at the scaled model, r by r.

    Each value is a lower bound for the supremum norm of the series over
    the domain of (f, m); the sequence is nondecreasing in r and in N.
    The grid must be nondecreasing inside [0, 1).
    """
    grid = [float(r) for r in r_grid]
    if not grid:
        raise ValueError("r_grid must be nonempty")
    for a, b in zip(grid, grid[1:]):
        if b < a:
            raise ValueError("r_grid must be nondecreasing")
    if grid[0] < 0.0 or grid[-1] >= 1.0:
        raise ValueError("r_grid values must lie in [0, 1)")
    model = build_model(f, m, N)
    return [operator_norm(evaluate_on_model(series, model, r)) for r in grid]


def symbol_row_diagonal(model: TruncatedModel) -> np.ndarray:
    """Diagonal of sum over support words of a_w V_w V_w^*.

    Distinct columns of V_w map to distinct rows, so each V_w V_w^* is
    diagonal and the sum is assembled directly on the diagonal.
    """
    diag = np.zeros(model.dim)
    for word, a in model.f.items():
        t, w = model.monomial_map(word)
        cols = np.nonzero(t >= 0)[0]
        np.add.at(diag, t[cols], a * w[cols] ** 2)
    return diag


def symbol_row_operator(model: TruncatedModel) -> np.ndarray:
    """sum over support words of a_w V_w V_w^*, a diagonal contraction."""
    return np.diag(symbol_row_diagonal(model).astype(complex))


def grade_row_diagonal(model: TruncatedModel, k: int) -> np.ndarray:
    """Diagonal of sum over |w| = k of b_w V_w V_w^*.

    Its norm is bounded by the binomial constant C(k+m-1, m-1).
    """
    if not 0 <= k <= model.N:
        raise ValueError(f"grade {k} outside 0..{model.N}")
    diag = np.zeros(model.dim)
    b = model.weights
    for flat in model.index.grade(k):
        word = model.index.letters_of(flat)
        t, w = model.monomial_map(word)
        cols = np.nonzero(t >= 0)[0]
        np.add.at(diag, t[cols], b[word] * w[cols] ** 2)
    return diag


def grade_row_operator(model: TruncatedModel, k: int) -> np.ndarray:
    """sum over |w| = k of b_w V_w V_w^*, as a dense diagonal matrix."""
    return np.diag(grade_row_diagonal(model, k).astype(complex))
