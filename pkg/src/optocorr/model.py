"""Optomechanical model: lab-frame parameter conversion and the drift /
diffusion matrices of the linearized rotating-wave dynamics.

The system is one mechanical mode shared by two driven optical cavities fed
with two-mode squeezed light, both lasers locked to the red sideband
(effective detuning = -omega_m, hard-wired). The reduced parameter set that
fully determines the steady state is ModelParams: decay rates kappa_1,
kappa_2, gamma (rad/s), cooperativities C_1, C_2, thermal occupancy n_th,
and the squeezed-input moments N = sinh^2 r, M = sinh r cosh r.

Quadrature order everywhere: (X_1, Y_1, X_2, Y_2, q, p).
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "HBAR",
    "KB",
    "C_LIGHT",
    "ModelParams",
    "PhysicalParams",
    "SteadyState",
    "CooperativityResult",
    "StabilityVerdict",
    "ConversionReport",
    "thermal_occupancy",
    "temperature_for_occupancy",
    "squeeze_moments",
    "cooperativity",
    "steady_state",
    "build_drift",
    "build_diffusion",
    "is_stable",
    "model_params_from_physical",
]

# CODATA-2018 exact values, pinned for bit-reproducible output
HBAR = 1.054571817e-34   # J s
KB = 1.380649e-23        # J / K
C_LIGHT = 299792458.0    # m / s


@dataclass(frozen=True)
class ModelParams:
    """Reduced parameter set (all rates in rad/s, everything else unitless)."""

    kappa1: float
    kappa2: float
    gamma: float
    C1: float
    C2: float
    n_th: float
    N: float
    M: float

    def __post_init__(self):
        if min(self.kappa1, self.kappa2, self.gamma) <= 0.0:
            raise ValueError("decay rates must be strictly positive")
        if min(self.C1, self.C2) < 0.0 or self.n_th < 0.0 or self.N < 0.0:
            raise ValueError("C_j, n_th and N must be nonnegative")
        target = self.N * (self.N + 1.0)
        if abs(self.M * self.M - target) > 1e-12 * max(1.0, target):
            raise ValueError("(N, M) must satisfy M^2 = N(N+1)")

    @classmethod
    def from_squeeze(cls, kappa1, kappa2, gamma, C1, C2, n_th, r):
        """Build ModelParams from the squeeze parameter r instead of (N, M)."""
        N, M = squeeze_moments(r)
        return cls(kappa1=kappa1, kappa2=kappa2, gamma=gamma,
                   C1=C1, C2=C2, n_th=n_th, N=N, M=M)

    @property
    def g1(self) -> float:
        """Effective optomechanical coupling of cavity 1, (1/2)sqrt(gamma kappa1 C1)."""
        return 0.5 * math.sqrt(self.gamma * self.kappa1 * self.C1)

    @property
    def g2(self) -> float:
        """Effective optomechanical coupling of cavity 2."""
        return 0.5 * math.sqrt(self.gamma * self.kappa2 * self.C2)


@dataclass(frozen=True)
class PhysicalParams:
    """Lab-frame parameters with units (rates rad/s, SI otherwise)."""

    wavelength1: float   # m
    wavelength2: float   # m
    power1: float        # W
    power2: float        # W
    length1: float       # m
    length2: float       # m
    kappa1: float        # rad/s
    kappa2: float        # rad/s
    omega_m: float       # rad/s
    gamma: float         # rad/s
    mass: float          # kg
    omega_c1: float      # rad/s
    omega_c2: float      # rad/s
    temperature: float   # K
    r: float             # dimensionless squeeze

    def __post_init__(self):
        positive = (self.wavelength1, self.wavelength2, self.power1, self.power2,
                    self.length1, self.length2, self.kappa1, self.kappa2,
                    self.omega_m, self.gamma, self.mass,
                    self.omega_c1, self.omega_c2)
        if min(positive) <= 0.0:
            raise ValueError("all rates, powers, lengths, mass, frequencies must be positive")
        if self.temperature < 0.0 or self.r < 0.0:
            raise ValueError("temperature and squeeze must be nonnegative")

    def wavelength(self, j: int) -> float:
        return (self.wavelength1, self.wavelength2)[j - 1]

    def power(self, j: int) -> float:
        return (self.power1, self.power2)[j - 1]

    def length(self, j: int) -> float:
        return (self.length1, self.length2)[j - 1]

    def kappa(self, j: int) -> float:
        return (self.kappa1, self.kappa2)[j - 1]

    def omega_c(self, j: int) -> float:
        return (self.omega_c1, self.omega_c2)[j - 1]

    def omega_laser(self, j: int) -> float:
        """Drive laser angular frequency 2 pi c / wavelength."""
        return 2.0 * math.pi * C_LIGHT / self.wavelength(j)


def thermal_occupancy(temperature: float, omega_m: float) -> float:
    """Bose occupancy n_th = 1 / (exp(hbar omega / kB T) - 1); 0 at T = 0."""
    if omega_m <= 0.0:
        raise ValueError("omega_m must be positive")
    if temperature < 0.0:
        raise ValueError("temperature must be nonnegative")
    if temperature == 0.0:
        return 0.0
    return 1.0 / math.expm1(HBAR * omega_m / (KB * temperature))


def temperature_for_occupancy(n_th: float, omega_m: float) -> float:
    """Inverse of thermal_occupancy: the bath temperature giving n_th."""
    if omega_m <= 0.0:
        raise ValueError("omega_m must be positive")
    if n_th < 0.0:
        raise ValueError("n_th must be nonnegative")
    if n_th == 0.0:
        return 0.0
    return HBAR * omega_m / (KB * math.log1p(1.0 / n_th))


def squeeze_moments(r: float) -> tuple[float, float]:
    """Squeezed-input moments (N, M) = (sinh^2 r, sinh r cosh r)."""
    if r < 0.0:
        raise ValueError("squeeze parameter must be nonnegative")
    sh = math.sinh(r)
    return sh * sh, sh * math.cosh(r)


@dataclass(frozen=True)
class CooperativityResult:
    """Cooperativity C_j with the intermediates used to build it."""

    value: float
    g: float        # single-photon coupling (omega_c/l) sqrt(hbar / (m omega_m)), rad/s
    n_cav: float    # steady-state intracavity photon number


def cooperativity(p: PhysicalParams, j: int) -> CooperativityResult:
    """Multiphoton cooperativity of cavity j from lab-frame parameters.

    C_j = 8 omega_c_j^2 P_j / (gamma m omega_m omega_L_j l_j^2 ((kappa_j/2)^2 + omega_m^2)).

    The identity C_j = 4 g_j^2 n_cav / (kappa_j gamma) holds to rounding;
    both factors are returned for diagnostics.
    """
    kj = p.kappa(j)
    g = (p.omega_c(j) / p.length(j)) * math.sqrt(HBAR / (p.mass * p.omega_m))
    eps2 = 2.0 * kj * p.power(j) / (HBAR * p.omega_laser(j))   # |epsilon_j|^2
    n_cav = 4.0 * eps2 / (kj * kj + 4.0 * p.omega_m * p.omega_m)
    value = (8.0 * p.omega_c(j) ** 2 * p.power(j)
             / (p.gamma * p.mass * p.omega_m * p.omega_laser(j)
                * p.length(j) ** 2 * ((kj / 2.0) ** 2 + p.omega_m ** 2)))
    return CooperativityResult(value=value, g=g, n_cav=n_cav)


@dataclass(frozen=True)
class SteadyState:
    """Classical steady-state amplitudes of cavity j and the mirror."""

    a_s: complex     # intracavity amplitude a_js
    b_s: complex     # mirror amplitude (shared by both cavities)
    n_cav: float     # |a_s|^2
    phi: float       # input phase, radians


def steady_state(p: PhysicalParams, j: int) -> SteadyState:
    """Steady-state amplitudes at fixed red-sideband operation.

    The effective detuning is hard-wired to -omega_m; the input phase is
    phi_j = -arctan(2*Delta'/kappa) = arctan(2*omega_m/kappa_j), and

        a_js = -2i e^{i phi_j} eps_j / (kappa_j - 2i Delta'_j),
        b_s  = 2i/(gamma + 2i omega_m) * sum_j (-1)^{j+1} g_j |a_js|^2.
    """
    def amp(jj: int) -> complex:
        kj = p.kappa(jj)
        delta_eff = -p.omega_m
        phi = math.atan2(2.0 * p.omega_m, kj)
        eps = math.sqrt(2.0 * kj * p.power(jj) / (HBAR * p.omega_laser(jj)))
        return -2.0j * cmath.exp(1j * phi) * eps / (kj - 2.0j * delta_eff)

    a1, a2 = amp(1), amp(2)
    g1 = cooperativity(p, 1).g
    g2 = cooperativity(p, 2).g
    b_s = (2.0j / (p.gamma + 2.0j * p.omega_m)) * (g1 * abs(a1) ** 2 - g2 * abs(a2) ** 2)
    a_s = a1 if j == 1 else a2
    phi_j = math.atan2(2.0 * p.omega_m, p.kappa(j))
    return SteadyState(a_s=a_s, b_s=b_s, n_cav=abs(a_s) ** 2, phi=phi_j)


def build_drift(mp: ModelParams) -> np.ndarray:
    """Drift matrix A of the linearized rotating-wave dynamics.

    A = (1/2) * [[-k1, 0, 0, 0, +s1, 0], [0, -k1, 0, 0, 0, +s1],
    [0, 0, -k2, 0, -s2, 0], [0, 0, 0, -k2, 0, -s2],
    [-s1, 0, +s2, 0, -gam, 0], [0, -s1, 0, +s2, 0, -gam]]
    with s_j = sqrt(gamma kappa_j C_j). The coupling block is antisymmetric,
    so A + A^T = -diag(k1, k1, k2, k2, gam, gam) exactly.
    """
    s1 = math.sqrt(mp.gamma * mp.kappa1 * mp.C1)
    s2 = math.sqrt(mp.gamma * mp.kappa2 * mp.C2)
    A = np.zeros((6, 6))
    A[0, 0] = A[1, 1] = -mp.kappa1
    A[2, 2] = A[3, 3] = -mp.kappa2
    A[4, 4] = A[5, 5] = -mp.gamma
    A[0, 4] = A[1, 5] = s1
    A[2, 4] = A[3, 5] = -s2
    A[4, 0] = A[5, 1] = -s1
    A[4, 2] = A[5, 3] = s2
    return 0.5 * A


def build_diffusion(mp: ModelParams) -> np.ndarray:
    """Diffusion matrix D of the input noise.

    Diagonal kappa_j (N + 1/2) on each optical quadrature and
    gamma (n_th + 1/2) on the mechanical ones; the two-mode squeezing
    correlates the X quadratures with +sqrt(k1 k2) M and the Y quadratures
    with -sqrt(k1 k2) M.
    """
    half = 0.5
    cross = math.sqrt(mp.kappa1 * mp.kappa2) * mp.M
    D = np.diag([
        mp.kappa1 * (mp.N + half),
        mp.kappa1 * (mp.N + half),
        mp.kappa2 * (mp.N + half),
        mp.kappa2 * (mp.N + half),
        mp.gamma * (mp.n_th + half),
        mp.gamma * (mp.n_th + half),
    ])
    D[0, 2] = D[2, 0] = cross
    D[1, 3] = D[3, 1] = -cross
    return D


@dataclass(frozen=True)
class StabilityVerdict:
    """Stability report for a drift matrix."""

    stable: bool
    margin: float          # -(max real part) / scale, positive when stable
    max_real_part: float
    structural: bool       # True when A + A^T is negative definite


def is_stable(A: np.ndarray) -> StabilityVerdict:
    """Decide whether every eigenvalue of A has a negative real part.

    The numeric test requires max Re(eig) < -1e-9 * scale with scale the
    largest decay rate (2*max|diag| for the model's drift, falling back to
    the Frobenius norm for generic matrices). Independently, a negative
    definite symmetric part certifies stability outright; for the model's
    drift that always holds, making every valid parameter point stable.
    """
    A = np.asarray(A, dtype=float)
    diag_scale = 2.0 * float(np.abs(np.diag(A)).max())
    scale = diag_scale if diag_scale > 0.0 else max(float(np.linalg.norm(A)), 1.0)
    max_real = float(np.linalg.eigvals(A).real.max())
    sym_eigs = np.linalg.eigvalsh(A + A.T)
    structural = bool(sym_eigs.max() < 0.0)
    stable = structural or max_real < -1e-9 * scale
    return StabilityVerdict(
        stable=stable,
        margin=-max_real / scale,
        max_real_part=max_real,
        structural=structural,
    )


@dataclass(frozen=True)
class ConversionReport:
    """ModelParams derived from PhysicalParams, with all intermediates."""

    model: ModelParams
    coop1: CooperativityResult
    coop2: CooperativityResult
    steady1: SteadyState
    steady2: SteadyState
    detuning_bare1: float   # bare detuning realizing the red sideband, rad/s
    detuning_bare2: float


def model_params_from_physical(p: PhysicalParams) -> ConversionReport:
    """Convert lab-frame parameters to ModelParams (red-sideband operation).

    The effective detuning is fixed at -omega_m rather than solved
    self-consistently; the bare detuning that would realize it,
    Delta_j = -omega_m - (-1)^{j+1} g_j (b_s + b_s*), is reported.
    """
    c1 = cooperativity(p, 1)
    c2 = cooperativity(p, 2)
    s1 = steady_state(p, 1)
    s2 = steady_state(p, 2)
    N, M = squeeze_moments(p.r)
    mp = ModelParams(
        kappa1=p.kappa1, kappa2=p.kappa2, gamma=p.gamma,
        C1=c1.value, C2=c2.value,
        n_th=thermal_occupancy(p.temperature, p.omega_m),
        N=N, M=M,
    )
    shift1 = c1.g * (2.0 * s1.b_s.real)
    shift2 = c2.g * (2.0 * s2.b_s.real)
    return ConversionReport(
        model=mp, coop1=c1, coop2=c2, steady1=s1, steady2=s2,
        detuning_bare1=-p.omega_m - shift1,
        detuning_bare2=-p.omega_m + shift2,
    )
