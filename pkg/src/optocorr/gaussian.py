"""Two-mode Gaussian state analysis: symplectic invariants, the Simon
entanglement witness, and Gaussian quantum discord.

Conventions (fixed across the package):

- quadrature covariances are dimensionless with vacuum variance 1/2;
- a pair covariance matrix is stored as two 2x2 local blocks plus the 2x2
  cross block, assembled as ``[[A, C], [C^T, B]]``;
- the discord measurement acts on the SECOND mode of the pair label
  (label ``mo1`` means a Gaussian measurement on the optical mode ``o1``);
- entropies use the natural logarithm, so discord is in nats.

Nothing in this module knows about the physical model; it consumes plain
covariance blocks.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateMeasuredMode, DomainError, NonPhysicalInput

__all__ = [
    "PAIR_LABELS",
    "PairCM",
    "PairInvariants",
    "PhysicalityReport",
    "pair_invariants",
    "simon_eta_minus",
    "entropy_f",
    "nu_symplectic",
    "gaussian_discord",
    "symplectic_eigenvalues",
    "check_physical",
]

PAIR_LABELS = ("mo1", "mo2", "o1o2")

_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class PairCM:
    """Reduced covariance matrix of one mode pair.

    Parameters
    ----------
    block_a : (2, 2) array
        Local covariance block of the first mode of the pair label.
    block_b : (2, 2) array
        Local covariance block of the second (measured) mode.
    cross : (2, 2) array
        Cross-covariance block between the two modes.
    pair : str
        One of ``PAIR_LABELS``.
    """

    block_a: np.ndarray
    block_b: np.ndarray
    cross: np.ndarray
    pair: str

    def assemble(self) -> np.ndarray:
        """Return the full 4x4 covariance matrix ``[[A, C], [C^T, B]]``."""
        top = np.hstack([self.block_a, self.cross])
        bot = np.hstack([self.cross.T, self.block_b])
        return np.vstack([top, bot])


@dataclass(frozen=True)
class PairInvariants:
    """The five symplectic invariants of a pair, plus both Delta forms.

    ``alpha``, ``beta``, ``theta`` are the determinants of the local and
    cross blocks, ``lam`` the determinant of the assembled 4x4 matrix.
    ``delta_pt = alpha + beta - 2*theta`` enters the partial-transpose
    (entanglement) test, ``delta_tilde = alpha + beta + 2*theta`` the
    ordinary symplectic spectrum.
    """

    alpha: float
    beta: float
    theta: float
    lam: float
    delta_pt: float
    delta_tilde: float


def _det2(m) -> float:
    return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])


def pair_invariants(pcm: PairCM) -> PairInvariants:
    """Compute the symplectic invariants of a pair covariance matrix.

    Parameters
    ----------
    pcm : PairCM

    Returns
    -------
    PairInvariants
    """
    alpha = _det2(pcm.block_a)
    beta = _det2(pcm.block_b)
    theta = _det2(pcm.cross)
    lam = float(np.linalg.det(pcm.assemble()))
    return PairInvariants(
        alpha=alpha,
        beta=beta,
        theta=theta,
        lam=lam,
        delta_pt=alpha + beta - 2.0 * theta,
        delta_tilde=alpha + beta + 2.0 * theta,
    )


def _snap_discriminant(delta: float, inv: PairInvariants) -> float:
    """delta^2 - 4*lam with floating-point noise snapped to exact zero.

    The tolerance is a rounding bound for the expression itself: delta is a
    sum of products of the invariants, so its absolute error scales with
    S = |alpha| + |beta| + 2|theta|, and the squared term inherits 2*S*|delta|
    worth of noise. Pure states sit exactly on disc = 0, and the downstream
    square roots demand that the zero be exact there.
    """
    disc = delta * delta - 4.0 * inv.lam
    scale = abs(inv.alpha) + abs(inv.beta) + 2.0 * abs(inv.theta)
    tol = 16.0 * _EPS * scale * (abs(delta) + 4.0 * _EPS * scale)
    tol += 16.0 * _EPS * abs(inv.lam)
    if abs(disc) <= tol:
        return 0.0
    return disc


def _checked_sqrt_disc(delta: float, inv: PairInvariants, what: str) -> float:
    disc = _snap_discriminant(delta, inv)
    if disc < 0.0:
        # distinguish harmless rounding from a genuinely corrupted matrix
        scale = max(delta * delta, abs(4.0 * inv.lam), 1.0)
        if disc < -1e-12 * scale:
            raise NonPhysicalInput(
                f"negative discriminant in {what}: {disc:.3e} (scale {scale:.3e})"
            )
        disc = 0.0
    return float(np.sqrt(disc))


@dataclass(frozen=True)
class EtaDetail:
    value: float
    disc_snapped: bool


def _eta_detail(inv: PairInvariants) -> EtaDetail:
    s = _checked_sqrt_disc(inv.delta_pt, inv, "partial-transpose spectrum")
    # eta^2 = (delta_pt - s)/2 rewritten as 2*lam/(delta_pt + s): the direct
    # difference cancels catastrophically for strongly squeezed pure states
    denom = inv.delta_pt + s
    if denom <= 0.0 or inv.lam < 0.0:
        raise NonPhysicalInput(
            f"partial-transpose spectrum collapsed: delta_pt={inv.delta_pt:.3e}, "
            f"lam={inv.lam:.3e}"
        )
    value = float(np.sqrt(2.0 * inv.lam / denom))
    snapped = (inv.delta_pt * inv.delta_pt - 4.0 * inv.lam) != (s * s)
    return EtaDetail(value=value, disc_snapped=snapped)


def simon_eta_minus(inv: PairInvariants) -> float:
    """Smallest symplectic eigenvalue of the partially transposed pair.

    The pair is entangled iff the returned value is < 1/2.

    Parameters
    ----------
    inv : PairInvariants

    Returns
    -------
    float
        ``sqrt((delta_pt - sqrt(delta_pt^2 - 4*lam)) / 2)``, evaluated in a
        cancellation-free form.

    Raises
    ------
    NonPhysicalInput
        If ``delta_pt^2 - 4*lam`` is negative beyond rounding tolerance.
    """
    return _eta_detail(inv).value


def entropy_f(x: float) -> float:
    """Bosonic entropy kernel f(x) = (x+1/2) ln(x+1/2) - (x-1/2) ln(x-1/2).

    Parameters
    ----------
    x : float
        Symplectic eigenvalue, physical for x >= 1/2. Values within 1e-9
        below 1/2 are clamped to 1/2 (where f vanishes exactly).

    Raises
    ------
    DomainError
        If ``x < 1/2 - 1e-9``.
    """
    if x < 0.5 - 1e-9:
        raise DomainError(f"entropy argument {x!r} below 1/2")
    a = x + 0.5
    b = x - 0.5
    if b <= 0.0:
        # clamp to the pure-state boundary x = 1/2, where f = 1*ln(1) = 0
        return 0.0
    return float(a * np.log(a) - b * np.log(b))


def nu_symplectic(inv: PairInvariants) -> tuple[float, float]:
    """Symplectic eigenvalues (nu_plus, nu_minus) of the pair itself.

    Both are >= 1/2 for a physical state; nu_plus >= nu_minus.

    Raises
    ------
    NonPhysicalInput
        If ``delta_tilde^2 - 4*lam`` is negative beyond rounding tolerance.
    """
    s = _checked_sqrt_disc(inv.delta_tilde, inv, "symplectic spectrum")
    denom = inv.delta_tilde + s
    if denom <= 0.0 or inv.lam < 0.0:
        raise NonPhysicalInput(
            f"symplectic spectrum collapsed: delta_tilde={inv.delta_tilde:.3e}, "
            f"lam={inv.lam:.3e}"
        )
    nu_plus = float(np.sqrt(denom / 2.0))
    nu_minus = float(np.sqrt(2.0 * inv.lam / denom))  # same stable rewrite
    return nu_plus, nu_minus


@dataclass(frozen=True)
class DiscordDetail:
    value: float
    branch: str          # "d<=0", "d>0", or "theta~0"
    radicand_snapped: bool
    clamped: bool


def _discord_detail(pcm: PairCM) -> DiscordDetail:
    inv = pair_invariants(pcm)
    if inv.beta < 0.25 - 1e-9:
        raise DegenerateMeasuredMode(
            f"measured-mode determinant {inv.beta!r} below vacuum floor 1/4"
        )
    beta = max(inv.beta, 0.25)
    alpha, theta, lam = inv.alpha, inv.theta, inv.lam
    nu_plus, nu_minus = nu_symplectic(inv)

    snapped = False
    if theta * theta < 1e-14 * max(1.0, alpha * beta):
        # algebraic limit of the d <= 0 branch; avoids 0/0 when beta -> 1/4
        branch = "theta~0"
        eps_meas = alpha
    else:
        d = (lam - alpha * beta) ** 2 - (0.25 + beta) * theta * theta * (alpha + 4.0 * lam)
        if d <= 0.0:
            branch = "d<=0"
            q = 0.25 - beta
            t1 = theta * theta
            t2 = q * (alpha - 4.0 * lam)
            rad = t1 + t2
            tol = 16.0 * _EPS * (abs(t1) + abs(t2))
            if abs(rad) <= tol:
                rad = 0.0
                snapped = True
            if rad < 0.0:
                if rad < -1e-12 * max(abs(t1), abs(t2), 1.0):
                    raise NonPhysicalInput(f"negative radicand in measured branch: {rad:.3e}")
                rad = 0.0
                snapped = True
            eps_meas = (2.0 * t1 + t2 + 2.0 * abs(theta) * np.sqrt(rad)) / (4.0 * q * q)
        else:
            branch = "d>0"
            t1 = theta ** 4
            t2 = (lam - alpha * beta) ** 2
            t3 = 2.0 * theta * theta * (alpha * beta + lam)
            inner = t1 + t2 - t3
            tol = 16.0 * _EPS * (t1 + t2 + abs(t3))
            if abs(inner) <= tol:
                inner = 0.0
                snapped = True
            if inner < 0.0:
                if inner < -1e-12 * max(t1, t2, abs(t3), 1.0):
                    raise NonPhysicalInput(f"negative radicand in measured branch: {inner:.3e}")
                inner = 0.0
                snapped = True
            eps_meas = (alpha * beta - theta * theta + lam - np.sqrt(inner)) / (2.0 * beta)

    value = (
        entropy_f(float(np.sqrt(beta)))
        - entropy_f(nu_plus)
        - entropy_f(nu_minus)
        + entropy_f(float(np.sqrt(eps_meas)))
    )
    clamped = False
    if value < 0.0:
        if value <= -1e-9:
            raise NonPhysicalInput(f"discord {value!r} negative beyond tolerance")
        value = 0.0
        clamped = True
    return DiscordDetail(value=float(value), branch=branch, radicand_snapped=snapped, clamped=clamped)


def gaussian_discord(pcm: PairCM) -> float:
    """Gaussian quantum discord of a pair, measuring the second mode.

    Evaluates ``f(sqrt(beta)) - f(nu_plus) - f(nu_minus) + f(sqrt(eps))``
    where ``eps`` is the conditional-state invariant minimized over Gaussian
    measurements on the second mode, with the two closed-form branches
    selected by the sign of
    ``d = (lam - alpha*beta)^2 - (1/4 + beta) * theta^2 * (alpha + 4*lam)``
    (the boundary d = 0 routed to the d <= 0 branch, where pure states sit).

    Parameters
    ----------
    pcm : PairCM

    Returns
    -------
    float
        Discord in nats, >= 0 (results in (-1e-9, 0) are clamped to 0).

    Raises
    ------
    DegenerateMeasuredMode
        If the measured mode's block determinant is below 1/4 - 1e-9.
    NonPhysicalInput
        If an intermediate radicand is negative beyond rounding tolerance,
        or the final value is below -1e-9.
    """
    return _discord_detail(pcm).value


def symplectic_eigenvalues(cm: np.ndarray) -> np.ndarray:
    """Symplectic eigenvalues of an n-mode covariance matrix.

    Computed as the absolute values of the eigenvalues of ``i*Omega*V``
    (equivalently ``|eig(Omega V)|``), which come in +- pairs; the returned
    array keeps one representative per mode, sorted ascending.

    Parameters
    ----------
    cm : (2n, 2n) array
        Covariance matrix in (X_1, Y_1, ..., X_n, Y_n) ordering.
    """
    cm = np.asarray(cm, dtype=float)
    n2 = cm.shape[0]
    if cm.shape != (n2, n2) or n2 % 2:
        raise ValueError("covariance matrix must be square with even dimension")
    omega = np.zeros((n2, n2))
    for k in range(n2 // 2):
        omega[2 * k, 2 * k + 1] = 1.0
        omega[2 * k + 1, 2 * k] = -1.0
    ev = np.abs(np.linalg.eigvals(omega @ cm))
    ev.sort()
    return ev[::2]  # one representative of each +- pair


@dataclass(frozen=True)
class PhysicalityReport:
    """Diagnostic summary of a full covariance matrix."""

    symmetry_residual: float
    min_eigenvalue: float
    min_symplectic: float
    passed: bool


def check_physical(cm: np.ndarray) -> PhysicalityReport:
    """Check the invariants of a full covariance matrix.

    Passes iff the matrix is symmetric to 1e-12 relative, positive definite,
    and every symplectic eigenvalue is >= 1/2 - 1e-9 (uncertainty principle
    with vacuum variance 1/2).
    """
    cm = np.asarray(cm, dtype=float)
    norm = float(np.linalg.norm(cm))
    sym = float(np.linalg.norm(cm - cm.T)) / norm if norm > 0 else 0.0
    min_eig = float(np.linalg.eigvalsh(0.5 * (cm + cm.T)).min())
    min_sympl = float(symplectic_eigenvalues(cm).min())
    passed = sym <= 1e-12 and min_eig > 0.0 and min_sympl >= 0.5 - 1e-9
    return PhysicalityReport(
        symmetry_residual=sym,
        min_eigenvalue=min_eig,
        min_symplectic=min_sympl,
        passed=passed,
    )
