"""States on the product space: lifted quantum vectors, phase-space points,
diagonal mixed densities, and the mean-value rule.

A quantum eigenvector psi is carried into the big space as

    c_q * (psi (x) a (x) e_q)  +  c_p * (b (x) psi (x) e_p)

with fixed weights |c_q|^2 + |c_p|^2 = 1 and normalized padding vectors a, b.
A phase-space point (q_k, p_l) becomes the basis vector at that grid slot
tensored with a unit vector in the 2-dimensional factor.  Mixed classical
states are diagonal in the grid basis with entries rho(q_k, p_l) against a
rank-one projector on the third factor.

Means are always the ratio Tr(rho A)/Tr(rho) (or <v|A|v>/<v|v>), which makes
every construction insensitive to state normalization conventions; the
discrete normalization constant 1/(dq*dp) is recorded, never relied on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matrep import Backend, TensorMatrix, hermitian_defect

_NORM_TOL = 1e-10

_E_Q = np.array([1.0, 0.0], dtype=complex)
_E_P = np.array([0.0, 1.0], dtype=complex)


@dataclass(frozen=True)
class WeightSpec:
    """The fixed lifting data: r-factor weights and padding vectors.

    ``a_vec`` pads the p-factor of the q-sector term; ``b_vec`` pads the
    q-factor of the p-sector term.
    """

    c_q: complex
    c_p: complex
    a_vec: np.ndarray
    b_vec: np.ndarray

    def validate(self) -> None:
        weight = abs(self.c_q) ** 2 + abs(self.c_p) ** 2
        if abs(weight - 1.0) > _NORM_TOL:
            raise ValueError(
                f"weights must satisfy |c_q|^2 + |c_p|^2 = 1, got {weight!r}"
            )
        for name, vec in (("a_vec", self.a_vec), ("b_vec", self.b_vec)):
            norm = float(np.linalg.norm(vec))
            if abs(norm - 1.0) > _NORM_TOL:
                raise ValueError(f"{name} must be normalized, got norm {norm!r}")

    @staticmethod
    def default(n_q: int, n_p: int) -> "WeightSpec":
        a = np.zeros(n_p, dtype=complex)
        b = np.zeros(n_q, dtype=complex)
        a[0] = 1.0
        b[0] = 1.0
        c = 1.0 / np.sqrt(2.0)
        return WeightSpec(c_q=c, c_p=c, a_vec=a, b_vec=b)


@dataclass(frozen=True)
class HybridVector:
    """Vector on C^{N_q} (x) C^{N_p} (x) C^2 in the fixed flat ordering."""

    data: np.ndarray
    dim_q: int
    dim_p: int
    meta: str = "custom"

    def norm(self) -> float:
        return float(np.linalg.norm(self.data))

    def outer(self, trace_norm_convention: float = 1.0) -> "HybridDensity":
        return HybridDensity(
            data=np.outer(self.data, self.data.conj()),
            trace_norm_convention=trace_norm_convention,
        )


@dataclass(frozen=True)
class HybridDensity:
    """Density matrix on the product space.

    ``trace_norm_convention`` records the discrete stand-in for the
    squared-delta normalization of sharp classical states (1/(dq*dp) on a
    grid); mean values never depend on it.
    """

    data: np.ndarray
    trace_norm_convention: float = 1.0

    def scaled(self, c: float) -> "HybridDensity":
        return HybridDensity(self.data * c, self.trace_norm_convention)


def lift_qm_eigenstate(
    psi: np.ndarray,
    w: WeightSpec,
    psi_p: np.ndarray | None = None,
) -> HybridVector:
    """Lift a normalized single-factor vector into the product space.

    ``psi`` rides the q-factor in the first term.  When the two factors use
    different representations (say a position grid and a momentum grid), the
    same physical vector has different coordinates on each; ``psi_p`` then
    supplies the p-factor coordinates and defaults to ``psi`` itself.
    """
    psi = np.asarray(psi, dtype=complex)
    if psi_p is None:
        psi_p = psi
    psi_p = np.asarray(psi_p, dtype=complex)
    w.validate()
    for name, vec in (("psi", psi), ("psi_p", psi_p)):
        norm = float(np.linalg.norm(vec))
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError(f"{name} must be normalized, got norm {norm!r}")
    n_q = psi.size
    n_p = psi_p.size
    if w.b_vec.shape != (n_q,) or w.a_vec.shape != (n_p,):
        raise ValueError(
            "weight padding vectors do not match the factor dimensions:"
            f" a_vec {w.a_vec.shape} vs ({n_p},), b_vec {w.b_vec.shape} vs ({n_q},)"
        )
    term_q = np.kron(psi, np.kron(np.asarray(w.a_vec, dtype=complex), _E_Q))
    term_p = np.kron(np.asarray(w.b_vec, dtype=complex), np.kron(psi_p, _E_P))
    return HybridVector(
        data=w.c_q * term_q + w.c_p * term_p,
        dim_q=n_q,
        dim_p=n_p,
        meta="lifted-qm",
    )


def cm_point_state(
    bq: Backend,
    bp: Backend,
    k: int,
    l: int,
    c_q: complex,
    c_p: complex,
) -> HybridVector:
    """Basis vector at grid slot (k, l) with a unit r-factor direction.

    Requires the factor-q backend to diagonalize Q and the factor-p backend
    to diagonalize P, so the result is a simultaneous eigenvector of every
    polynomial in the commuting pair.
    """
    if bq.kind != "grid-position" or bp.kind != "grid-momentum":
        raise ValueError(
            "point states need a grid-position factor q and a grid-momentum"
            f" factor p, got {bq.kind!r} and {bp.kind!r}"
        )
    if not 0 <= k < bq.dim:
        raise ValueError(f"grid index k={k} out of range for dim {bq.dim}")
    if not 0 <= l < bp.dim:
        raise ValueError(f"grid index l={l} out of range for dim {bp.dim}")
    weight = abs(c_q) ** 2 + abs(c_p) ** 2
    if abs(weight - 1.0) > _NORM_TOL:
        raise ValueError(
            f"weights must satisfy |c_q|^2 + |c_p|^2 = 1, got {weight!r}"
        )
    eq = np.zeros(bq.dim, dtype=complex)
    ep = np.zeros(bp.dim, dtype=complex)
    eq[k] = 1.0
    ep[l] = 1.0
    r_part = c_q * _E_Q + c_p * _E_P
    return HybridVector(
        data=np.kron(eq, np.kron(ep, r_part)),
        dim_q=bq.dim,
        dim_p=bp.dim,
        meta="cm-point",
    )


def cm_mixed_density(rho_grid, c_q: complex, c_p: complex) -> HybridDensity:
    """Diagonal density from a phase-space distribution.

    ``rho_grid`` is any object with ``grid`` (N_q x N_p nonnegative reals),
    ``dq``, and ``dp``.  The result is diagonal in the grid basis with the
    distribution values on the diagonal, tensored with the rank-one
    projector onto c_q e_q + c_p e_p.
    """
    grid = np.asarray(rho_grid.grid, dtype=float)
    dq = float(rho_grid.dq)
    dp = float(rho_grid.dp)
    if grid.ndim != 2:
        raise ValueError(f"rho grid must be 2-dimensional, got shape {grid.shape}")
    if grid.min() < -1e-12:
        raise ValueError(f"rho grid has negative entries (min {grid.min()!r})")
    mass = float(grid.sum() * dq * dp)
    if abs(mass - 1.0) > _NORM_TOL:
        raise ValueError(f"rho grid must have unit mass, got {mass!r}")
    weight = abs(c_q) ** 2 + abs(c_p) ** 2
    if abs(weight - 1.0) > _NORM_TOL:
        raise ValueError(
            f"weights must satisfy |c_q|^2 + |c_p|^2 = 1, got {weight!r}"
        )
    r_vec = c_q * _E_Q + c_p * _E_P
    projector = np.outer(r_vec, r_vec.conj())
    data = np.kron(np.diag(grid.reshape(-1).astype(complex)), projector)
    return HybridDensity(data=data, trace_norm_convention=1.0 / (dq * dp))


def mean_value(state: HybridVector | HybridDensity, a: TensorMatrix) -> float:
    """Normalized expectation Tr(rho A)/Tr(rho), or <v|A|v>/<v|v> for vectors.

    ``a`` must be Hermitian; the ratio must come out real to 1e-10, and the
    residual imaginary part is then discarded.
    """
    mat = a.data if isinstance(a, TensorMatrix) else np.asarray(a)
    if hermitian_defect(mat) > 1e-10:
        raise ValueError("observable is not Hermitian within 1e-10")
    if isinstance(state, HybridVector):
        vec = state.data
        if vec.size != mat.shape[0]:
            raise ValueError(
                f"dimension mismatch: state {vec.size}, observable {mat.shape[0]}"
            )
        denom = np.vdot(vec, vec)
        numer = np.vdot(vec, mat @ vec)
    else:
        rho = state.data
        if rho.shape != mat.shape:
            raise ValueError(
                f"dimension mismatch: state {rho.shape}, observable {mat.shape}"
            )
        denom = np.trace(rho)
        numer = np.einsum("ij,ji->", rho, mat)
    if denom == 0:
        raise ValueError("state has zero norm/trace")
    ratio = numer / denom
    if abs(ratio.imag) > 1e-10:
        raise ValueError(
            f"mean value has non-negligible imaginary part {ratio.imag!r}"
        )
    return float(ratio.real)


@dataclass(frozen=True)
class StateReport:
    """Measured state-axiom quantities with the documented pass thresholds."""

    hermitian_defect: float
    min_eigenvalue: float
    trace: float

    @property
    def passed(self) -> bool:
        return (
            self.hermitian_defect < 1e-12
            and self.min_eigenvalue >= -1e-10
            and self.trace > 0
        )


def validate_state(d: HybridDensity) -> StateReport:
    data = np.asarray(d.data)
    defect = float(np.max(np.abs(data - data.conj().T))) if data.size else 0.0
    sym = (data + data.conj().T) / 2.0
    eigenvalues = np.linalg.eigvalsh(sym)
    return StateReport(
        hermitian_defect=defect,
        min_eigenvalue=float(eigenvalues.min()) if eigenvalues.size else 0.0,
        trace=float(np.trace(data).real),
    )


def coherent_state(n: int, alpha: complex) -> np.ndarray:
    """Truncated oscillator coherent state, renormalized after truncation."""
    if n < 1:
        raise ValueError("need at least one level")
    amps = np.empty(n, dtype=complex)
    amps[0] = 1.0
    for level in range(1, n):
        amps[level] = amps[level - 1] * alpha / np.sqrt(level)
    amps /= np.linalg.norm(amps)
    return amps


def gaussian_grid_state(
    backend: Backend,
    q0: float,
    p0: float,
    sigma: float | None = None,
) -> np.ndarray:
    """Normalized Gaussian wave packet sampled on a grid backend.

    On a position grid the packet is centered at q0 with momentum phase p0;
    on a momentum grid it is the conjugate-representation packet (width
    hbar/(2*sigma) around p0 with position phase -q0).
    """
    if not backend.is_grid:
        raise ValueError("gaussian_grid_state needs a grid backend")
    hbar = backend.hbar
    if sigma is None:
        sigma = float(np.sqrt(hbar / 2.0))
    x = np.asarray(backend.basis_labels, dtype=float)
    if backend.kind == "grid-position":
        amp = np.exp(-((x - q0) ** 2) / (4.0 * sigma**2) + 1j * p0 * x / hbar)
    else:
        sigma_p = hbar / (2.0 * sigma)
        amp = np.exp(-((x - p0) ** 2) / (4.0 * sigma_p**2) - 1j * q0 * x / hbar)
    amp = amp.astype(complex)
    amp /= np.linalg.norm(amp)
    return amp
