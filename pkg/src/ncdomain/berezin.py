"""Berezin kernel and transform for truncated noncommutative domains.

The transform of a Fock-space operator g at a domain member T is
computed in two independent forms:

  kernel form     K^* (g (x) I) K with the explicit kernel
                  K h = sum_w sqrt(b_w) e_w (x) Delta T_w^* h,
  resolvent form  a sandwich of g (x) Delta^2 between inverse powers of
                  I - sum_w a_w Lam_{w~} (x) T_w^*, where the Lam_i are
                  the weighted right creation operators of the depth-N
                  truncation.

On the common truncation both are the same finite sum, so their
agreement is a genuine cross-check of two different code paths (column
maps and reversal permutations versus dense solves).  Tensor factors
are ordered Fock slot first, coefficient space second, throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from .cp_maps import (
    OperatorTuple,
    as_operator_tuple,
    defect_sequence,
    membership,
    spectral_radius_estimate,
)
from .defaults import EIGENVALUE_TOL
from .fock_model import TruncatedModel, build_model, model_monomial
from .linalg import hermitian_part, psd_root
from .series import FreeSeries, PositiveRegularFunction, evaluate, reverse_series
from .weights import WeightTable, weights_direct
from .words import WordIndex, enumerate_words


class BerezinKernel:
    """The kernel K: C^d -> F_N (x) C^d attached to (f, m, T, N).

    ``blocks[v]`` is the d x d block of K at the Fock basis vector with
    index v, namely sqrt(b_v) Delta T_v^*; ``matrix`` stacks the blocks
    in Fock-major order.
    """

    __slots__ = ("f", "m", "tuple", "N", "index", "blocks", "delta_root", "delta_sq")

    def __init__(
        self,
        f: PositiveRegularFunction,
        m: int,
        operator_tuple: OperatorTuple,
        N: int,
        index: WordIndex,
        blocks: np.ndarray,
        delta_root: np.ndarray,
        delta_sq: np.ndarray,
    ):
        self.f = f
        self.m = m
        self.tuple = operator_tuple
        self.N = N
        self.index = index
        self.blocks = blocks
        self.delta_root = delta_root
        self.delta_sq = delta_sq

    @property
    def dim(self) -> int:
        return self.index.dim

    @property
    def space_dim(self) -> int:
        return self.tuple.dim

    @property
    def matrix(self) -> np.ndarray:
        d = self.space_dim
        return self.blocks.reshape(self.dim * d, d)

    def gram(self) -> np.ndarray:
        """K^* K, the transform of the identity."""
        return np.einsum("vab,vac->bc", self.blocks.conj(), self.blocks)

    def transform(self, g: np.ndarray) -> np.ndarray:
        """K^* (g (x) I_d) K without forming the Kronecker product."""
        g = np.asarray(g, dtype=complex)
        if g.shape != (self.dim, self.dim):
            raise ValueError(
                f"g must be {self.dim} x {self.dim} on the truncated Fock "
                f"space, got {g.shape}"
            )
        mixed = np.tensordot(g, self.blocks, axes=([1], [0]))
        return np.einsum("vab,vac->bc", self.blocks.conj(), mixed)


def _all_monomial_adjoints(
    t: OperatorTuple, index: WordIndex
) -> np.ndarray:
    """Array of T_w^* over the whole index, memoized over suffixes."""
    d = t.dim
    monos: dict = {(): np.eye(d, dtype=complex)}
    out = np.empty((index.dim, d, d), dtype=complex)
    for pos, w in enumerate(index.words):
        mono = monos.get(w)
        if mono is None:
            mono = t.mats[w[0] - 1] @ monos[w[1:]]
            monos[w] = mono
        out[pos] = mono.conj().T
    return out


def berezin_kernel(
    f: PositiveRegularFunction,
    m: int,
    t,
    N: int,
    tol: float = EIGENVALUE_TOL,
    weight_table: WeightTable | None = None,
    cap: int | None = None,
) -> BerezinKernel:
    """Build the depth-N Berezin kernel at the tuple T.

    The defect (id - Phi)^m(I) must be PSD within tol; its principal
    square root enters every block.  Eigenvalues in (-tol, 0) are
    clipped to zero so boundary tuples stay admissible.
    """
    t = as_operator_tuple(t)
    if t.n != f.n:
        raise ValueError(f"symbol over n={f.n} applied to a {t.n}-tuple")
    index = enumerate_words(f.n, N, cap=cap)
    if weight_table is None:
        weight_table = weights_direct(f, m, N, cap=cap)
    elif weight_table.N < N or weight_table.m != m or weight_table.f != f:
        raise ValueError("weight table does not cover this kernel")
    defect = defect_sequence(f, m, t).deltas[m]
    try:
        root, clipped = psd_root(defect, tol)
    except ValueError as exc:
        raise ValueError(
            f"tuple lies outside the order-{m} domain: {exc}"
        ) from exc
    b = np.asarray(weight_table.aligned_values(index), dtype=float)
    adjoints = _all_monomial_adjoints(t, index)
    blocks = np.sqrt(b)[:, None, None] * (root @ adjoints)
    return BerezinKernel(f, m, t, N, index, blocks, root, clipped)


def berezin_transform_kernel(
    f: PositiveRegularFunction,
    m: int,
    t,
    g: np.ndarray,
    N: int,
    tol: float = EIGENVALUE_TOL,
    kernel: BerezinKernel | None = None,
) -> np.ndarray:
    """Transform of g at T in kernel form: K^* (g (x) I) K."""
    if kernel is None:
        kernel = berezin_kernel(f, m, t, N, tol=tol)
    elif kernel.N != N or kernel.f != f or kernel.m != m:
        raise ValueError("supplied kernel does not match (f, m, N)")
    return kernel.transform(g)


def reversed_model(
    f: PositiveRegularFunction, m: int, N: int, cap: int | None = None
) -> TruncatedModel:
    """Truncated model of the reversed symbol, same order and depth."""
    return build_model(reverse_series(f), m, N, cap=cap)


def _reversal_permutation(index: WordIndex) -> np.ndarray:
    perm = np.empty(index.dim, dtype=np.int64)
    for pos, w in enumerate(index.words):
        perm[pos] = index.index_of(w[::-1])
    return perm


def right_creation_operators(
    f: PositiveRegularFunction, m: int, N: int, cap: int | None = None
) -> tuple[np.ndarray, ...]:
    """Weighted right creation operators Lam_i e_w = sqrt(b_w/b_{wi}) e_{wi}.

    Realized by conjugating the reversed symbol's model with the
    word-reversal permutation of the basis.
    """
    rm = reversed_model(f, m, N, cap=cap)
    perm = _reversal_permutation(rm.index)
    return tuple(
        rm.creation(i)[np.ix_(perm, perm)] for i in range(1, f.n + 1)
    )


@dataclass(frozen=True)
class ResolventDiagnostics:
    """Conditioning and spectral-radius evidence for a resolvent solve."""

    condition_estimate: float
    radius_estimate: float


def _condition_estimate(b_mat: np.ndarray, lu: np.ndarray) -> float:
    anorm = float(np.linalg.norm(b_mat, 1))
    try:
        from scipy.linalg.lapack import zgecon

        rcond, info = zgecon(lu, anorm)
        if info == 0 and rcond > 0:
            return 1.0 / float(rcond)
    except Exception:
        pass
    du = np.abs(np.diag(lu))
    if du.min() == 0:
        return float("inf")
    return float(du.max() / du.min())


def berezin_transform_resolvent(
    f: PositiveRegularFunction,
    m: int,
    t,
    g: np.ndarray,
    N: int,
    tol: float = EIGENVALUE_TOL,
    radius_kmax: int = 12,
    cap: int | None = None,
    with_diagnostics: bool = False,
):
    """Transform of g at T in resolvent form.

    Solves (I - sum_w a_w Lam_{w~} (x) T_w^*)^m R = e_unit (x) I_d by LU
    factorization, then compresses R^* (g (x) Delta^2) R back to the
    coefficient space.  Requires the estimated joint spectral radius of
    T to be below 1.
    """
    t = as_operator_tuple(t)
    if t.n != f.n:
        raise ValueError(f"symbol over n={f.n} applied to a {t.n}-tuple")
    radius = spectral_radius_estimate(f, t, kmax=radius_kmax)
    if radius.overflowed or radius.final >= 1.0:
        raise ValueError(
            "resolvent form needs joint spectral radius < 1; estimate "
            f"{radius.final:.6f}"
        )
    rm = reversed_model(f, m, N, cap=cap)
    index = rm.index
    dim = index.dim
    d = t.dim
    g = np.asarray(g, dtype=complex)
    if g.shape != (dim, dim):
        raise ValueError(
            f"g must be {dim} x {dim} on the truncated Fock space, got {g.shape}"
        )
    defect = defect_sequence(f, m, t).deltas[m]
    try:
        _, delta_sq = psd_root(defect, tol)
    except ValueError:
        # outside the domain the sandwich is still defined; use the raw defect
        delta_sq = defect
    perm = _reversal_permutation(index)
    big = dim * d
    b_mat = np.eye(big, dtype=complex)
    for word, a in f.items():
        lam = model_monomial(rm, word[::-1])[np.ix_(perm, perm)]
        t_adj = np.eye(d, dtype=complex)
        for i in word:
            t_adj = t_adj @ t.mats[i - 1]
        b_mat -= a * np.kron(lam, t_adj.conj().T)
    lu_piv = lu_factor(b_mat)
    cond = _condition_estimate(b_mat, lu_piv[0])
    if not np.isfinite(cond) or cond > 1e14:
        raise ValueError(
            f"resolvent solve is near singular; condition estimate {cond:.3e}"
        )
    emb = np.zeros((big, d), dtype=complex)
    emb[:d, :] = np.eye(d)
    r = emb
    for _ in range(m):
        r = lu_solve(lu_piv, r)
    r3 = r.reshape(dim, d, d)
    mixed = np.tensordot(g, r3, axes=([1], [0]))
    mixed = np.einsum("ab,vbc->vac", delta_sq, mixed)
    out = np.einsum("vab,vac->bc", r3.conj(), mixed)
    if with_diagnostics:
        return out, ResolventDiagnostics(cond, radius.final)
    return out


def radial_berezin(
    f: PositiveRegularFunction,
    m: int,
    t,
    series: FreeSeries,
    r_grid: Sequence[float],
    tol: float = EIGENVALUE_TOL,
) -> list[np.ndarray]:
    """Evaluate a scalar-coefficient series at rT over a radial grid.

    The grid realizes the radial limit r -> 1 as data; convergence is
    left to the caller to inspect.
    """
    t = as_operator_tuple(t)
    if series.coeff_dim != 1:
        raise ValueError("radial evaluation needs scalar coefficients")
    verdict = membership(f, m, t, tol=tol)
    if not verdict.member:
        raise ValueError(
            "tuple is not a domain member within tolerance; worst defect "
            f"eigenvalue {min(verdict.min_eigenvalues):.3e}"
        )
    out = []
    for r in r_grid:
        r = float(r)
        if not 0.0 <= r <= 1.0:
            raise ValueError(f"radial grid values must lie in [0, 1], got {r}")
        out.append(evaluate(series, [r * x for x in t.mats]))
    return out
