"""Dense complex linear algebra for qubit states and their superoperators.

Vectorization uses the column-stacking convention throughout the package:
vec(rho) stacks the columns of rho, so the sandwich map rho -> A rho B
corresponds to the matrix kron(B.T, A) and Tr(A^dag B) = vec(A)^dag vec(B).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "IDENTITY",
    "vectorize",
    "devectorize",
    "sandwich_superop",
    "commutator_superop",
    "double_commutator_superop",
    "lindblad_superop",
    "dephasing_superop",
    "CptpReport",
    "cptp_check",
    "hermitize",
    "check_hermitian",
    "check_density_matrix",
    "gibbs_state",
    "trace_distance",
    "purity",
    "von_neumann_entropy",
    "expm",
    "expm_batch",
    "ordered_product",
]

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)

# State invariant tolerances.  PSD allows tiny negative eigenvalues because
# propagation is CPTP only up to integration accuracy.
HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-10
PSD_TOL = -1e-9

# Channel diagnostic tolerances.
TRACE_PRESERVATION_TOL = 1e-8
CHOI_TOL = -1e-7


def vectorize(op):
    """Column-stack a 2x2 operator into a length-4 vector."""
    return np.asarray(op, dtype=complex).reshape(4, order="F")


def devectorize(vec):
    """Inverse of :func:`vectorize`."""
    return np.asarray(vec, dtype=complex).reshape(2, 2, order="F")


def sandwich_superop(a, b):
    """Superoperator of the map rho -> a rho b."""
    return np.kron(np.asarray(b, dtype=complex).T, np.asarray(a, dtype=complex))


def check_hermitian(op, tol=HERMITICITY_TOL, name="operator"):
    op = np.asarray(op, dtype=complex)
    dev = np.max(np.abs(op - op.conj().T))
    if dev > tol:
        raise ValueError(f"{name} is not Hermitian (max deviation {dev:.3e})")
    return op


def commutator_superop(h):
    """Superoperator of rho -> -i [h, rho] for Hermitian h."""
    h = check_hermitian(h, name="Hamiltonian")
    return -1.0j * (np.kron(IDENTITY, h) - np.kron(h.T, IDENTITY))


def double_commutator_superop(a):
    """Superoperator of rho -> [a, [a, rho]]."""
    a = np.asarray(a, dtype=complex)
    comm = np.kron(IDENTITY, a) - np.kron(a.T, IDENTITY)
    return comm @ comm


def lindblad_superop(jump, gamma):
    """Dissipator superoperator gamma * (L rho L^dag - {L^dag L, rho}/2)."""
    if gamma < 0:
        raise ValueError(f"Lindblad rate must be non-negative, got {gamma}")
    jump = np.asarray(jump, dtype=complex)
    ldl = jump.conj().T @ jump
    return gamma * (
        np.kron(jump.conj(), jump)
        - 0.5 * (np.kron(IDENTITY, ldl) + np.kron(ldl.T, IDENTITY))
    )


def dephasing_superop(basis_kets):
    """Superoperator of the projective dephasing map rho -> sum_i P_i rho P_i."""
    out = np.zeros((4, 4), dtype=complex)
    for ket in basis_kets:
        proj = np.outer(ket, np.conj(ket))
        out += sandwich_superop(proj, proj)
    return out


@dataclass(frozen=True)
class CptpReport:
    """Diagnostic result of a trace-preservation and complete-positivity check."""

    trace_preserving: bool
    trace_deviation: float
    completely_positive: bool
    choi_min_eigenvalue: float

    @property
    def ok(self):
        return self.trace_preserving and self.completely_positive


def choi_matrix(superop):
    """Choi matrix of a superoperator in the column-stacking convention."""
    v = np.asarray(superop, dtype=complex)
    j = v.reshape(2, 2, 2, 2).transpose(3, 1, 2, 0).reshape(4, 4)
    return hermitize(j)


def cptp_check(superop, trace_tol=TRACE_PRESERVATION_TOL, choi_tol=CHOI_TOL):
    """Report whether a superoperator is trace preserving and completely positive.

    Trace preservation is tested as vec(I)^dag acting as a left fixed point;
    complete positivity via the minimum eigenvalue of the Choi matrix.
    """
    v = np.asarray(superop, dtype=complex)
    id_vec = vectorize(IDENTITY)
    trace_dev = float(np.max(np.abs(id_vec.conj() @ v - id_vec.conj())))
    choi_min = float(np.linalg.eigvalsh(choi_matrix(v))[0])
    return CptpReport(
        trace_preserving=trace_dev <= trace_tol,
        trace_deviation=trace_dev,
        completely_positive=choi_min >= choi_tol,
        choi_min_eigenvalue=choi_min,
    )


def hermitize(op):
    op = np.asarray(op, dtype=complex)
    return 0.5 * (op + op.conj().T)


def check_density_matrix(rho, herm_tol=HERMITICITY_TOL, trace_tol=TRACE_TOL,
                         psd_tol=PSD_TOL):
    """Validate the Hermiticity, unit-trace and positivity invariants of a state."""
    rho = check_hermitian(rho, tol=herm_tol, name="density matrix")
    trace_dev = abs(np.trace(rho) - 1.0)
    if trace_dev > trace_tol:
        raise ValueError(f"density matrix trace deviates from 1 by {trace_dev:.3e}")
    min_eig = float(np.linalg.eigvalsh(hermitize(rho))[0])
    if min_eig < psd_tol:
        raise ValueError(f"density matrix has negative eigenvalue {min_eig:.3e}")
    return rho


def gibbs_state(hamiltonian, beta):
    """Thermal state exp(-beta H) / Z of a Hermitian Hamiltonian."""
    h = check_hermitian(hamiltonian, name="Hamiltonian")
    evals, evecs = np.linalg.eigh(h)
    weights = np.exp(-beta * (evals - evals.min()))
    weights /= weights.sum()
    return (evecs * weights) @ evecs.conj().T


def trace_distance(a, b):
    """Trace distance (1/2)||a - b||_1 between Hermitian matrices."""
    diff = hermitize(np.asarray(a) - np.asarray(b))
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(diff))))


def purity(rho):
    rho = np.asarray(rho, dtype=complex)
    return float(np.real(np.trace(rho @ rho)))


def von_neumann_entropy(rho):
    evals = np.linalg.eigvalsh(hermitize(rho))
    evals = np.clip(evals.real, 0.0, 1.0)
    nz = evals[evals > 0]
    return float(-np.sum(nz * np.log(nz)))


# Pade-13 coefficients for scaling-and-squaring (Higham 2005).
_PADE13 = (
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0, 129060195264000.0, 10559470521600.0, 670442572800.0,
    33522128640.0, 1323241920.0, 40840800.0, 960960.0, 16380.0, 182.0, 1.0,
)
_PADE13_THETA = 5.371920351148152


def expm_batch(mats):
    """Matrix exponential of a batch of square matrices, shape (..., n, n).

    Scaling-and-squaring with the degree-13 Pade approximant; the scaling
    power is chosen from the largest 1-norm in the batch.
    """
    a = np.asarray(mats, dtype=complex)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise ValueError(f"expected batch of square matrices, got shape {a.shape}")
    n = a.shape[-1]
    norm = np.max(np.sum(np.abs(a), axis=-2)) if a.size else 0.0
    squarings = max(0, int(np.ceil(np.log2(norm / _PADE13_THETA))) if norm > _PADE13_THETA else 0)
    a = a / (2.0 ** squarings)

    ident = np.broadcast_to(np.eye(n, dtype=complex), a.shape)
    b = _PADE13
    a2 = a @ a
    a4 = a2 @ a2
    a6 = a2 @ a4
    u = a @ (
        a6 @ (b[13] * a6 + b[11] * a4 + b[9] * a2)
        + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident
    )
    v = (
        a6 @ (b[12] * a6 + b[10] * a4 + b[8] * a2)
        + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident
    )
    r = np.linalg.solve(v - u, v + u)
    for _ in range(squarings):
        r = r @ r
    return r


def expm(mat):
    """Matrix exponential of a single square matrix."""
    return expm_batch(np.asarray(mat, dtype=complex)[None, ...])[0]


def ordered_product(factors):
    """Product of a time-ordered factor sequence, latest factor leftmost.

    ``factors`` has shape (K, n, n) with index 0 the earliest factor; the
    result is factors[K-1] @ ... @ factors[0], evaluated by pairwise tree
    reduction so long products stay cheap and deterministic.
    """
    f = np.asarray(factors, dtype=complex)
    if f.ndim != 3:
        raise ValueError(f"expected (K, n, n) factors, got shape {f.shape}")
    if f.shape[0] == 0:
        return np.eye(f.shape[-1], dtype=complex)
    while f.shape[0] > 1:
        k = f.shape[0]
        tail = f[-1:] if k % 2 else None
        head = f[: k - 1] if k % 2 else f
        head = np.matmul(head[1::2], head[0::2])
        f = head if tail is None else np.concatenate([head, tail], axis=0)
    return f[0]
