"""Creation and annihilation operators in the basis ``|n> = phi_{m+n,m}``.

For sigma in {1, s, 1-s^2} the basis is infinite and matrices are truncated
to ``dim`` states; identities involving ``a a^+`` are then only valid on the
interior block (indices ``< dim-1``).  For the three finite cases the space
has exactly ``Lt + 1`` states, ``Lt = L - m``, and everything is exact.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .cases import CaseKind, CaseSpec, lambda_l, max_degree
from .errors import DimensionError, IndexOutOfRange

DEFAULT_DIM = 24


class AlgebraKind(enum.Enum):
    HeisenbergWeyl = "h(2)"
    SU11 = "su(1,1)"
    SU2 = "su(2)"


@dataclass(frozen=True)
class OperatorMatrix:
    matrix: np.ndarray
    basis_m: int = 0
    gamma: float = 0.0

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def dagger(self) -> OperatorMatrix:
        return OperatorMatrix(self.matrix.conj().T, self.basis_m, self.gamma)

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            return OperatorMatrix(self.matrix @ other.matrix, self.basis_m, self.gamma)
        return self.matrix @ other


@dataclass(frozen=True)
class EnergySequence:
    values: tuple  # e_0 .. e_N
    ladder_weights: tuple  # e_n for infinite cases, n(Lt-n+1) for finite ones


def level_count(spec: CaseSpec, m: int) -> int | None:
    """``Lt = L - m`` in the finite cases, ``None`` otherwise."""
    L = max_degree(spec)
    if L is None:
        return None
    if not 0 <= m <= L:
        raise IndexOutOfRange(f"m={m} outside 0..L={L}")
    return L - m


def energy(spec: CaseSpec, m: int, n: int):
    """``e_n = lambda_{m+n} - lambda_m``."""
    if n < 0:
        raise IndexOutOfRange("n must be non-negative")
    top = level_count(spec, m)
    if top is not None and n > top:
        raise IndexOutOfRange(f"n={n} exceeds Lt={top}")
    return lambda_l(spec, m + n) - lambda_l(spec, m)


def energy_formula(spec: CaseSpec, m: int, n: int):
    """Case-by-case closed form of ``e_n``, independent of :func:`energy`."""
    al = spec.alpha
    if spec.kind in (CaseKind.SigmaOne, CaseKind.SigmaS):
        return -al * n
    if spec.kind is CaseKind.SigmaOneMinusS2:
        return n * (n + 2 * m - al - 1)
    return -n * (n + 2 * m + al - 1)


def finite_weight(spec: CaseSpec, m: int, n: int) -> int:
    """``n (Lt - n + 1)``; vanishes at ``n = 0`` and ``n = Lt + 1``."""
    top = level_count(spec, m)
    if top is None:
        raise IndexOutOfRange("finite ladder weights only exist for the finite cases")
    return n * (top - n + 1)


def ladder_weight(spec: CaseSpec, m: int, n: int):
    """Amplitude squared of the ``|n> -> |n-1>`` step."""
    if spec.is_finite:
        return finite_weight(spec, m, n)
    return energy(spec, m, n)


def energies(spec: CaseSpec, m: int, dim: int) -> EnergySequence:
    e = tuple(energy(spec, m, n) for n in range(dim))
    w = tuple(ladder_weight(spec, m, n) for n in range(dim))
    return EnergySequence(e, w)


def _check_dim(spec: CaseSpec, m: int, dim: int | None) -> int:
    top = level_count(spec, m)
    if top is None:
        dim = DEFAULT_DIM if dim is None else dim
        if dim < 2:
            raise DimensionError("truncation needs at least two states")
        return dim
    if dim is None:
        return top + 1
    if dim != top + 1:
        raise DimensionError(f"finite case needs dim = Lt+1 = {top + 1}, got {dim}")
    return dim


def build_ladder(spec: CaseSpec, m: int, gamma: float = 0.0,
                 dim: int | None = None) -> tuple[OperatorMatrix, OperatorMatrix]:
    """Matrices of ``a_m`` and ``a_m^+`` (tilde versions in the finite cases).

    ``a|n> = sqrt(w_n) exp(i gamma (e_n - e_{n-1})) |n-1>`` where ``w_n`` is
    ``e_n`` for infinite cases and ``n (Lt - n + 1)`` for finite ones; the
    phases always use ``e_n``.
    """
    dim = _check_dim(spec, m, dim)
    seq = energies(spec, m, dim)
    e = np.array([float(x) for x in seq.values])
    w = np.array([float(x) for x in seq.ladder_weights])
    a = np.zeros((dim, dim), dtype=complex)
    n = np.arange(1, dim)
    a[n - 1, n] = np.sqrt(w[n]) * np.exp(1j * gamma * (e[n] - e[n - 1]))
    op = OperatorMatrix(a, m, gamma)
    return op, op.dagger()


def commutator(A: OperatorMatrix, B: OperatorMatrix) -> OperatorMatrix:
    if A.matrix.shape != B.matrix.shape:
        raise DimensionError(f"shape mismatch {A.matrix.shape} vs {B.matrix.shape}")
    return OperatorMatrix(A.matrix @ B.matrix - B.matrix @ A.matrix, A.basis_m, A.gamma)


def number_operator(dim: int) -> np.ndarray:
    return np.diag(np.arange(dim, dtype=float)).astype(complex)


def r_operator(spec: CaseSpec, m: int, dim: int | None = None) -> OperatorMatrix:
    """Untruncated ``R_m = [a^+, a]`` restricted to the first ``dim`` states.

    Infinite cases: ``diag(e_n - e_{n+1})``.  Finite cases: ``N - Lt/2``.
    """
    dim = _check_dim(spec, m, dim)
    top = level_count(spec, m)
    if top is None:
        d = [float(lambda_l(spec, m + n) - lambda_l(spec, m + n + 1)) for n in range(dim)]
    else:
        d = [n - top / 2 for n in range(dim)]
    return OperatorMatrix(np.diag(np.array(d, dtype=complex)), m)


def phase_matrix(spec: CaseSpec, m: int, gamma: float, dim: int) -> np.ndarray:
    """``diag(exp(-i gamma e_n))``; conjugating the gamma-ladder by it removes the phases."""
    e = np.array([float(lambda_l(spec, m + n) - lambda_l(spec, m)) for n in range(dim)])
    return np.diag(np.exp(-1j * gamma * e))


def classify_algebra(spec: CaseSpec) -> AlgebraKind:
    if spec.kind in (CaseKind.SigmaOne, CaseKind.SigmaS):
        return AlgebraKind.HeisenbergWeyl
    if spec.kind is CaseKind.SigmaOneMinusS2:
        return AlgebraKind.SU11
    return AlgebraKind.SU2


def _max_abs(x: np.ndarray) -> float:
    return float(np.max(np.abs(x))) if x.size else 0.0


def algebra_residuals(spec: CaseSpec, m: int, gamma: float = 0.0,
                      dim: int | None = None) -> dict[str, float]:
    """Maximum deviations from the defining commutation relations.

    Infinite cases are measured on the interior block only.  For su(1,1)
    the Cartan element is ``K0 = -R_m / 2``; with that normalisation
    ``[K+, K-] = -2 K0`` and ``[K0, K+-] = +-K+-``.
    """
    a, ap = build_ladder(spec, m, gamma, dim)
    d = a.dim
    kind = classify_algebra(spec)
    if kind is AlgebraKind.SU2:
        top = d - 1
        R = r_operator(spec, m).matrix
        return {
            "[a+,a]=2R": _max_abs(commutator(ap, a).matrix - 2 * R),
            "[R,a+]=a+": _max_abs(R @ ap.matrix - ap.matrix @ R - ap.matrix),
            "[R,a]=-a": _max_abs(R @ a.matrix - a.matrix @ R + a.matrix),
            "R=N-Lt/2": _max_abs(R - (number_operator(d) - top / 2 * np.eye(d))),
        }
    inner = slice(0, d - 1)
    C = commutator(ap, a).matrix
    R = r_operator(spec, m, d).matrix
    out = {"[a+,a]=R": _max_abs((C - R)[inner, inner])}
    sig2 = spec.kind.sigma_second
    out["[R,a+]=s''a+"] = _max_abs((R @ ap.matrix - ap.matrix @ R - sig2 * ap.matrix)[inner, inner])
    out["[R,a]=-s''a"] = _max_abs((R @ a.matrix - a.matrix @ R + sig2 * a.matrix)[inner, inner])
    if kind is AlgebraKind.HeisenbergWeyl:
        c = np.sqrt(-1.0 / float(spec.alpha))
        Pp, Pm = c * ap.matrix, c * a.matrix
        out["[P+,P-]=-I"] = _max_abs((Pp @ Pm - Pm @ Pp + np.eye(d))[inner, inner])
    else:
        K0 = -0.5 * R
        Kp, Km = ap.matrix, a.matrix
        out["[K+,K-]=-2K0"] = _max_abs((Kp @ Km - Km @ Kp + 2 * K0)[inner, inner])
        out["[K0,K+]=K+"] = _max_abs((K0 @ Kp - Kp @ K0 - Kp)[inner, inner])
        out["[K0,K-]=-K-"] = _max_abs((K0 @ Km - Km @ K0 + Km)[inner, inner])
    return out
