"""Cosine-sine decomposition of unitaries into block-diagonal and CS factors.

A ``d x d`` unitary (``d`` even) is written ``U = diag(L, L') S diag(R, R')``
with ``S = [[C, S_], [-S_, C]]``, ``C = diag(cos theta)``, ``S_ = diag(sin theta)``.
Mode ``i`` of the upper half is rotated with mode ``i + d/2`` of the lower
half. Angles are returned in ``[0, pi/2]`` in descending order, so a 4x4
unitary with one untouched mode pair has ``thetas[1] == 0``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import NonUnitaryError

__all__ = [
    "CsdFactorization",
    "CsdNode",
    "TwoQubitForm",
    "unitarity_residual",
    "cs_matrix",
    "block_diag",
    "csd",
    "csd_4x4",
    "csd_recursive",
    "to_two_qubit_form",
    "phase_aligned_distance",
    "haar_unitary",
    "UNITARY_TOL",
]

UNITARY_TOL = 1e-8


def unitarity_residual(U) -> float:
    U = np.asarray(U)
    return float(np.linalg.norm(U.conj().T @ U - np.eye(U.shape[0])))


def cs_matrix(thetas) -> np.ndarray:
    thetas = np.asarray(thetas, dtype=float)
    c, s = np.diag(np.cos(thetas)), np.diag(np.sin(thetas))
    return np.block([[c, s], [-s, c]])


def block_diag(a, b) -> np.ndarray:
    a, b = np.asarray(a), np.asarray(b)
    out = np.zeros((a.shape[0] + b.shape[0],) * 2, dtype=complex)
    out[:a.shape[0], :a.shape[0]] = a
    out[a.shape[0]:, a.shape[0]:] = b
    return out


def phase_aligned_distance(A, B) -> float:
    """``min_phi ||exp(i phi) A - B||_F``."""
    A, B = np.asarray(A), np.asarray(B)
    overlap = np.vdot(A, B)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return float(np.linalg.norm(phase * A - B))


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Gaussian matrix."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


@dataclass(frozen=True, eq=False)
class CsdFactorization:
    L: np.ndarray
    L_prime: np.ndarray
    R: np.ndarray
    R_prime: np.ndarray
    thetas: np.ndarray

    @property
    def dimension(self) -> int:
        return 2 * self.L.shape[0]

    @property
    def left(self) -> np.ndarray:
        return block_diag(self.L, self.L_prime)

    @property
    def right(self) -> np.ndarray:
        return block_diag(self.R, self.R_prime)

    @property
    def middle(self) -> np.ndarray:
        return cs_matrix(self.thetas)

    def reconstruct(self) -> np.ndarray:
        return self.left @ self.middle @ self.right

    def residual(self, U) -> float:
        return float(np.linalg.norm(self.reconstruct() - np.asarray(U)))

    def to_dict(self) -> dict:
        def enc(M):
            return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(M, dtype=complex)]
        return {
            "dimension": self.dimension,
            "thetas": [float(t) for t in self.thetas],
            "blocks": {"L": enc(self.L), "L'": enc(self.L_prime), "R": enc(self.R), "R'": enc(self.R_prime)},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CsdFactorization":
        def dec(M):
            return np.array([[complex(re, im) for re, im in row] for row in M])
        b = d["blocks"]
        f = cls(dec(b["L"]), dec(b["L'"]), dec(b["R"]), dec(b["R'"]), np.asarray(d["thetas"], dtype=float))
        if f.dimension != d["dimension"]:
            raise ValueError("dimension field does not match block sizes")
        return f

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def circuit_listing(self) -> str:
        """Human-readable listing in order of application (R first, L last)."""
        h = self.dimension // 2

        def fmt(M):
            return "; ".join(" ".join(f"{z.real:+.4f}{z.imag:+.4f}i" for z in row) for row in M)
        lines = [f"U ({self.dimension}x{self.dimension}) = L . S . R, applied right to left"]
        lines.append(f"1. R  = diag(R, R'): R = [{fmt(self.R)}]  R' = [{fmt(self.R_prime)}]")
        pairs = ", ".join(f"({i},{i + h}) theta={t:.6f}" for i, t in enumerate(self.thetas))
        lines.append(f"2. S  : CS rotations on mode pairs {pairs}")
        lines.append(f"3. L  = diag(L, L'): L = [{fmt(self.L)}]  L' = [{fmt(self.L_prime)}]")
        return "\n".join(lines)


def _polar_unitary(M: np.ndarray) -> np.ndarray:
    u, _, vh = np.linalg.svd(M)
    return u @ vh


def csd(U, tol: float = UNITARY_TOL) -> CsdFactorization:
    """One level of the cosine-sine decomposition of an even-dimensional unitary.

    The SVD of the top-left block fixes ``L``, ``R`` and the cosines; ``L'``
    comes from a QR factorization of the bottom-left block (columns with the
    largest sines first), and ``R'`` from a weighted combination of the two
    right-hand blocks that stays well conditioned at every angle.

    Raises
    ------
    NonUnitaryError
        If ``||U^H U - I||_F > tol``.
    """
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1] or U.shape[0] % 2:
        raise ValueError(f"need a square matrix of even dimension, got shape {U.shape}")
    resid = unitarity_residual(U)
    if resid > tol:
        raise NonUnitaryError(resid, tol)
    h = U.shape[0] // 2
    U11, U12, U21, U22 = U[:h, :h], U[:h, h:], U[h:, :h], U[h:, h:]

    w, cos, vh = np.linalg.svd(U11)
    # largest angle first; the stable sort leaves tied modes in place
    order = np.argsort(cos, kind="stable")
    L, R = w[:, order], vh[order, :]
    cos = np.clip(cos[order], 0.0, 1.0)

    X = U21 @ R.conj().T          # = -L' diag(sin)
    q, t = np.linalg.qr(X)
    tdiag = np.diag(t)
    sin = np.abs(tdiag)
    phase = np.where(sin > 0, tdiag / np.where(sin > 0, sin, 1.0), 1.0)
    L_prime = -q * phase[np.newaxis, :]

    thetas = np.arctan2(sin, cos)
    c, s = np.cos(thetas), np.sin(thetas)
    Z12 = L.conj().T @ U12        # = diag(sin) R'
    Z22 = L_prime.conj().T @ U22  # = diag(cos) R'
    R_prime = c[:, None] * Z22 + s[:, None] * Z12
    R_prime = _polar_unitary(R_prime)
    return CsdFactorization(L, L_prime, R, R_prime, thetas)


def csd_4x4(U, tol: float = UNITARY_TOL) -> CsdFactorization:
    U = np.asarray(U)
    if U.shape != (4, 4):
        raise ValueError(f"csd_4x4 needs a 4x4 matrix, got shape {U.shape}")
    return csd(U, tol)


@dataclass(frozen=True, eq=False)
class CsdNode:
    """One level of a recursive CSD; leaves are plain 2x2 unitaries."""

    factorization: CsdFactorization
    children: dict = field(default_factory=dict)   # block name -> CsdNode, only for blocks larger than 2x2

    @property
    def dimension(self) -> int:
        return self.factorization.dimension

    def block(self, name: str) -> np.ndarray:
        if name in self.children:
            return self.children[name].reconstruct()
        return {"L": self.factorization.L, "L'": self.factorization.L_prime,
                "R": self.factorization.R, "R'": self.factorization.R_prime}[name]

    def reconstruct(self) -> np.ndarray:
        left = block_diag(self.block("L"), self.block("L'"))
        right = block_diag(self.block("R"), self.block("R'"))
        return left @ self.factorization.middle @ right

    def leaves(self) -> list[np.ndarray]:
        out = []
        for name in ("L", "L'", "R", "R'"):
            if name in self.children:
                out.extend(self.children[name].leaves())
            else:
                out.append(self.block(name))
        return out

    def all_thetas(self) -> np.ndarray:
        parts = [self.factorization.thetas] + [c.all_thetas() for c in self.children.values()]
        return np.concatenate(parts)


def csd_recursive(U, tol: float = UNITARY_TOL) -> CsdNode:
    """Recursively decompose a ``2^n x 2^n`` unitary until every block is 2x2."""
    U = np.asarray(U, dtype=complex)
    d = U.shape[0]
    if U.ndim != 2 or U.shape[1] != d or d < 4 or d & (d - 1):
        raise ValueError(f"need a 2^n x 2^n matrix with n >= 2, got shape {U.shape}")
    f = csd(U, tol)
    children = {}
    if d > 4:
        for name, block in (("L", f.L), ("L'", f.L_prime), ("R", f.R), ("R'", f.R_prime)):
            children[name] = csd_recursive(block, tol)
    return CsdNode(f, children)


@dataclass(frozen=True, eq=False)
class TwoQubitForm:
    """Three controlled two-qubit operations realising a 4x4 CSD.

    Basis ``|0> = |00>, |1> = |01>, |2> = |10>, |3> = |11>``. The block
    factors are controlled by the first qubit. The CS rotation instead acts
    on the first qubit and is controlled by the second: ``S`` when it is
    ``|0>`` and ``S_other`` when it is ``|1>``. ``S_other`` is the identity
    whenever the second CS angle vanishes.
    """

    L: np.ndarray
    L_prime: np.ndarray
    S: np.ndarray
    S_other: np.ndarray
    R: np.ndarray
    R_prime: np.ndarray

    @staticmethod
    def _controlled_on_first(a, b) -> np.ndarray:
        return np.kron(_P0, a) + np.kron(_P1, b)

    @property
    def left(self) -> np.ndarray:
        return self._controlled_on_first(self.L, self.L_prime)

    @property
    def middle(self) -> np.ndarray:
        return np.kron(self.S, _P0) + np.kron(self.S_other, _P1)

    @property
    def right(self) -> np.ndarray:
        return self._controlled_on_first(self.R, self.R_prime)

    def reconstruct(self) -> np.ndarray:
        return self.left @ self.middle @ self.right


_P0 = np.diag([1.0, 0.0])
_P1 = np.diag([0.0, 1.0])


def _rotation(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, s], [-s, c]])


def to_two_qubit_form(f: CsdFactorization) -> TwoQubitForm:
    if f.dimension != 4:
        raise ValueError(f"two-qubit form needs a 4x4 factorization, got dimension {f.dimension}")
    return TwoQubitForm(f.L, f.L_prime, _rotation(f.thetas[0]), _rotation(f.thetas[1]), f.R, f.R_prime)
