"""Linearly independent bases, Gram matrices and dual (biorthogonal) vectors.

A basis here is a set of d linearly independent unit vectors on a
d-dimensional Hilbert space, not required to be orthogonal.  Linear
independence is certified by a positive Gram determinant.  Two dual
families are kept side by side: unit-norm duals with explicit overlap
factors xi_i, and biorthogonal duals rescaled so that <dual_i|c_j> equals
the Kronecker delta.
"""

from dataclasses import dataclass

import numpy as np

from .errors import LinearlyDependent, NonUnitColumn, OverlapOutOfRange

# Determinant threshold certifying linear independence.
DET_TOL = 1e-10
UNIT_TOL = 1e-9


@dataclass(frozen=True)
class SuperpositionBasis:
    dimension: int
    vectors: np.ndarray            # columns |c_i> in computational coordinates
    gram: np.ndarray               # G_ij = <c_i|c_j>
    duals: np.ndarray              # columns: unit-norm duals |c_i^perp>
    xi: np.ndarray                 # xi_i = <c_i^perp|c_i>, real positive
    biorthogonal_duals: np.ndarray  # columns chat_i with <chat_i|c_j> = delta_ij

    def __post_init__(self):
        for name in ("vectors", "gram", "duals", "biorthogonal_duals", "xi"):
            arr = getattr(self, name)
            arr.setflags(write=False)

    @property
    def is_real(self) -> bool:
        return bool(np.max(np.abs(self.vectors.imag)) < 1e-12)

    def to_json(self) -> dict:
        flat = [[float(z.real), float(z.imag)]
                for z in self.vectors.flatten(order="F")]
        return {"dimension": self.dimension, "vectors": flat}


def basis_from_json(obj: dict) -> SuperpositionBasis:
    d = int(obj["dimension"])
    pairs = np.asarray(obj["vectors"], dtype=float)
    cols = (pairs[:, 0] + 1j * pairs[:, 1]).reshape((d, d), order="F")
    return build_basis(cols)


def build_basis(columns: np.ndarray) -> SuperpositionBasis:
    """Validate the columns and assemble Gram matrix and dual families.

    Raises NonUnitColumn if a column is not normalized and
    LinearlyDependent if the Gram determinant is not positive.
    """
    V = np.array(columns, dtype=complex)
    if V.ndim != 2 or V.shape[0] != V.shape[1]:
        raise NonUnitColumn(f"expected a square matrix, got shape {V.shape}")
    d = V.shape[0]
    norms = np.linalg.norm(V, axis=0)
    if np.max(np.abs(norms - 1.0)) > UNIT_TOL:
        worst = int(np.argmax(np.abs(norms - 1.0)))
        raise NonUnitColumn(f"column {worst} has norm {norms[worst]!r}")
    G = V.conj().T @ V
    det = np.linalg.det(G)
    if det.real <= DET_TOL:
        raise LinearlyDependent(f"Gram determinant {det.real:g} <= {DET_TOL:g}")
    # chat_i are the columns of V G^{-1}: (V G^{-1})^dag V = G^{-1} G = I.
    bio = V @ np.linalg.inv(G)
    pre_norms = np.linalg.norm(bio, axis=0)
    duals = bio / pre_norms
    xi = 1.0 / pre_norms
    return SuperpositionBasis(
        dimension=d, vectors=V, gram=G, duals=duals,
        xi=xi, biorthogonal_duals=bio,
    )


def constant_overlap_gram(d: int, mu: float) -> np.ndarray:
    """Gram matrix with unit diagonal and constant off-diagonal mu.

    No range check; callers probing the degenerate boundary use this
    directly.
    """
    G = np.full((d, d), complex(mu))
    np.fill_diagonal(G, 1.0)
    return G


def constant_overlap_basis(d: int, mu: float) -> SuperpositionBasis:
    """Basis with <c_i|c_j> = mu for all i != j.

    The vectors are the columns of the Hermitian positive square root of
    the Gram matrix, which makes them unit vectors automatically.  Valid
    range is 1/(1-d) < mu < 1; at the endpoints the Gram matrix is
    singular.
    """
    if d < 1:
        raise OverlapOutOfRange(f"dimension must be positive, got {d}")
    lo = 1.0 / (1.0 - d) if d > 1 else -1.0
    if not (lo < mu < 1.0):
        raise OverlapOutOfRange(f"mu={mu} outside ({lo}, 1)")
    G = constant_overlap_gram(d, mu)
    evals, evecs = np.linalg.eigh(G)
    V = evecs @ np.diag(np.sqrt(np.clip(evals, 0.0, None))) @ evecs.conj().T
    # columns of the square root have norm sqrt(diag(G)) = 1 exactly;
    # renormalize to absorb rounding
    V = V / np.linalg.norm(V, axis=0)
    # Assemble directly: the range check above already guarantees
    # independence, and near the endpoints the tiny (but exact) Gram
    # determinant would trip the generic build_basis threshold.
    Gv = V.conj().T @ V
    bio = V @ np.linalg.inv(Gv)
    pre_norms = np.linalg.norm(bio, axis=0)
    return SuperpositionBasis(
        dimension=d, vectors=V, gram=Gv, duals=bio / pre_norms,
        xi=1.0 / pre_norms, biorthogonal_duals=bio,
    )


def gram_determinant(basis: SuperpositionBasis) -> float:
    return float(np.linalg.det(basis.gram).real)
