"""Steady-state covariance: dense Lyapunov solve plus an independent
quadrature oracle.

Both routes compute the stationary covariance V of a stable linear
diffusion, AV + VA^T = -D. ``solve_lyapunov`` vectorizes to a dense linear
system (the intended production path, exact up to rounding);
``integrate_covariance`` evaluates V = integral_0^inf F(s) D F(s)^T ds with
F(t) = exp(At) by adaptive quadrature, deliberately sharing no linear
algebra with the solver so the two can serve as mutual checks.
"""

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import SingularSystem, ToleranceNotMet, UnstableDrift
from .gaussian import PAIR_LABELS, PairCM
from .model import is_stable

__all__ = [
    "LyapunovProblem",
    "solve_lyapunov",
    "integrate_covariance",
    "reduce_pair",
]


@dataclass(frozen=True)
class LyapunovProblem:
    """A drift matrix A and symmetric PSD diffusion matrix D."""

    drift: np.ndarray
    diffusion: np.ndarray


def _require_stable(A: np.ndarray):
    verdict = is_stable(A)
    if not verdict.stable:
        raise UnstableDrift(
            f"drift has eigenvalue real part {verdict.max_real_part:.6e} >= 0"
        )


def _solve_vectorized(A: np.ndarray, D: np.ndarray) -> np.ndarray:
    """(I kron A + A kron I) vec(V) = -vec(D), column-major vec."""
    n = A.shape[0]
    eye = np.eye(n)
    K = np.kron(eye, A) + np.kron(A, eye)
    rhs = -D.flatten(order="F")
    try:
        v = np.linalg.solve(K, rhs)
        # one iterative refinement pass tightens the residual to ~1e-15
        v += np.linalg.solve(K, rhs - K @ v)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(f"vectorized steady-state system singular: {exc}") from exc
    return v.reshape((n, n), order="F")


def solve_lyapunov(p: LyapunovProblem) -> np.ndarray:
    """Solve AV + VA^T = -D for the steady-state covariance V.

    Parameters
    ----------
    p : LyapunovProblem
        Stable drift and symmetric PSD diffusion, any matching size.

    Returns
    -------
    (n, n) ndarray
        Symmetrized solution with relative residual
        ||AV + VA^T + D||_F / ||D||_F <= 1e-10.

    Raises
    ------
    UnstableDrift
        If the drift has an eigenvalue with nonnegative real part.
    SingularSystem
        If the vectorized system cannot be factorized (degenerate rates).
    """
    A = np.asarray(p.drift, dtype=float)
    D = np.asarray(p.diffusion, dtype=float)
    _require_stable(A)
    V = _solve_vectorized(A, D)
    asym = np.linalg.norm(V - V.T) / max(np.linalg.norm(V), 1e-300)
    if asym > 1e-10:
        warnings.warn(f"Lyapunov solution asymmetry {asym:.3e} above 1e-10", stacklevel=2)
    return 0.5 * (V + V.T)


def _solve_blockwise(p: LyapunovProblem) -> np.ndarray:
    # the model's A and D decouple over the (X1,X2,q) / (Y1,Y2,p) grouping;
    # solving the two 3x3 problems separately is a consistency check used by
    # the tests, not the production path
    A = np.asarray(p.drift, dtype=float)
    D = np.asarray(p.diffusion, dtype=float)
    _require_stable(A)
    V = np.zeros_like(A)
    for group in ((0, 2, 4), (1, 3, 5)):
        ix = np.ix_(group, group)
        Vb = _solve_vectorized(A[ix], D[ix])
        V[ix] = 0.5 * (Vb + Vb.T)
    return V


def integrate_covariance(p: LyapunovProblem, horizon: float = 30.0,
                         tol: float = 1e-8, max_intervals: int = 400000) -> np.ndarray:
    """Quadrature oracle: V = integral_0^t_max F(s) D F(s)^T ds.

    The propagator F(t) = exp(At) is evaluated through the eigendecomposition
    of A (one factorization, cheap per node), falling back to a dense matrix
    exponential per node when the eigenvector basis is ill-conditioned. The
    integral is truncated at t_max = horizon / (2a), a = -max Re(eig(A)), so
    the neglected tail is of relative size e^{-horizon}, and refined by
    adaptive Simpson quadrature to ``tol`` (absolute, per matrix entry,
    prorated over subintervals).

    Parameters
    ----------
    p : LyapunovProblem
    horizon : float
        Truncation time in multiples of the slowest decay time; must be
        >= 20 so truncation stays below the integration tolerance.
    tol : float
        Absolute per-entry tolerance of the adaptive refinement.

    Raises
    ------
    UnstableDrift
        If the drift is not stable.
    ToleranceNotMet
        If refinement exceeds ``max_intervals`` subintervals.
    """
    if horizon < 20.0:
        raise ValueError("horizon must be >= 20 for negligible truncation")
    A = np.asarray(p.drift, dtype=float)
    D = np.asarray(p.diffusion, dtype=float)
    _require_stable(A)

    w, S = np.linalg.eig(A)
    decay = -float(w.real.max())
    if decay <= 0.0:
        raise UnstableDrift("drift spectrum touches the imaginary axis")
    t_max = horizon / (2.0 * decay)

    if np.linalg.cond(S) < 1e10:
        S_inv = np.linalg.inv(S)

        def propagate(ts):
            E = np.exp(np.multiply.outer(ts, w))              # (k, n)
            F = np.einsum("ij,kj,jl->kil", S, E, S_inv).real  # (k, n, n)
            return F
    else:
        # defective or near-defective drift: pay for a dense expm per node
        def propagate(ts):
            return np.array([scipy.linalg.expm(A * t) for t in ts])

    def integrand(ts):
        F = propagate(ts)
        return F @ D @ np.transpose(F, (0, 2, 1))

    # seed enough uniform subintervals to resolve the fastest oscillation;
    # Simpson on a whole number of periods can converge to the wrong value
    phase = float(np.abs(w.imag).max()) * t_max
    n0 = int(np.clip(np.ceil(phase / 2.0), 16, 16384))
    edges = np.linspace(0.0, t_max, n0 + 1)
    a, b = edges[:-1], edges[1:]
    Ga, Gb = integrand(a), integrand(b)
    Gm = integrand(0.5 * (a + b))
    coarse = (b - a)[:, None, None] / 6.0 * (Ga + 4.0 * Gm + Gb)
    work = [(a[i], b[i], Ga[i], Gm[i], Gb[i], coarse[i]) for i in range(n0)]

    total = np.zeros_like(D)
    n_intervals = n0
    while work:
        if n_intervals > max_intervals:
            raise ToleranceNotMet(
                f"adaptive refinement exceeded {max_intervals} subintervals"
            )
        lo = np.array([item[0] for item in work])
        hi = np.array([item[1] for item in work])
        mid = 0.5 * (lo + hi)
        G_lm = integrand(0.5 * (lo + mid))
        G_rm = integrand(0.5 * (mid + hi))
        next_work = []
        for i, (ai, bi, GA, GM, GB, S1) in enumerate(work):
            h = bi - ai
            SL = h / 12.0 * (GA + 4.0 * G_lm[i] + GM)
            SR = h / 12.0 * (GM + 4.0 * G_rm[i] + GB)
            S2 = SL + SR
            err = float(np.abs(S2 - S1).max()) / 15.0
            if err <= tol * (h / t_max) or h < 1e-14 * t_max:
                total += S2 + (S2 - S1) / 15.0   # Richardson extrapolation
            else:
                next_work.append((ai, mid[i], GA, G_lm[i], GM, SL))
                next_work.append((mid[i], bi, GM, G_rm[i], GB, SR))
                n_intervals += 2
        work = next_work
    return 0.5 * (total + total.T)


_MODE_ROWS = {"o1": slice(0, 2), "o2": slice(2, 4), "m": slice(4, 6)}
_PAIR_MODES = {"mo1": ("m", "o1"), "mo2": ("m", "o2"), "o1o2": ("o1", "o2")}


def reduce_pair(cm: np.ndarray, pair: str) -> PairCM:
    """Extract the 4x4 pair reduction of the 6-mode covariance matrix.

    Parameters
    ----------
    cm : (6, 6) array
        Full covariance in mode order (X1, Y1, X2, Y2, q, p).
    pair : str
        One of ``("mo1", "mo2", "o1o2")``; the first named mode supplies
        block A, the second (the measured one) block B.
    """
    if pair not in PAIR_LABELS:
        raise ValueError(f"unknown pair label {pair!r}, expected one of {PAIR_LABELS}")
    cm = np.asarray(cm, dtype=float)
    first, second = _PAIR_MODES[pair]
    ra, rb = _MODE_ROWS[first], _MODE_ROWS[second]
    return PairCM(
        block_a=cm[ra, ra].copy(),
        block_b=cm[rb, rb].copy(),
        cross=cm[ra, rb].copy(),
        pair=pair,
    )
