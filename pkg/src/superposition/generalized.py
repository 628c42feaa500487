"""Block-operator generalization: oblique projector families, block-dephased
free states, block-structured free channels and the generalized weight and
robustness measures.

Blocks partition the basis indices; the free states are those whose oblique
coefficient matrix is block-diagonal.  Singleton blocks recover the plain
free states and measures; the single-block partition makes every state free.
"""

import math
from dataclasses import dataclass

import numpy as np

from .basis import SuperpositionBasis
from .channels import KrausChannel, make_channel
from .errors import (
    BlockSizeMismatch,
    DimensionMismatch,
    InvalidPartition,
    InvalidProbabilities,
    ZeroTrace,
)
from .measures import MeasureResult
from .qstate import DensityMatrix, coefficients_of
from .solvers import barrier_descent


@dataclass(frozen=True)
class BlockPartition:
    """Ordered disjoint index blocks covering {0..d-1} (0-based internally)."""

    blocks: tuple  # of tuples of ints

    def __post_init__(self):
        blocks = tuple(tuple(int(i) for i in b) for b in self.blocks)
        seen = [i for b in blocks for i in b]
        d = len(seen)
        if not blocks or any(len(b) == 0 for b in blocks):
            raise InvalidPartition("empty block")
        if sorted(seen) != list(range(d)):
            raise InvalidPartition(f"blocks {blocks!r} are not a partition of 0..{d - 1}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def dimension(self) -> int:
        return sum(len(b) for b in self.blocks)

    def to_json(self) -> list:
        return [[i + 1 for i in b] for b in self.blocks]


def partition_from_json(obj) -> BlockPartition:
    return BlockPartition(tuple(tuple(int(i) - 1 for i in b) for b in obj))


def contiguous_partition(d: int, cuts) -> BlockPartition:
    """Blocks [0..cuts[0]), [cuts[0]..cuts[1]), ..., [cuts[-1]..d)."""
    edges = [0] + sorted(int(c) for c in cuts) + [d]
    return BlockPartition(tuple(tuple(range(a, b)) for a, b in zip(edges, edges[1:])))


@dataclass(frozen=True)
class ObliqueProjectors:
    basis: SuperpositionBasis
    partition: BlockPartition
    operators: tuple  # of d x d complex arrays

    def __post_init__(self):
        for E in self.operators:
            E.setflags(write=False)


def block_projectors(basis: SuperpositionBasis, partition: BlockPartition) -> ObliqueProjectors:
    """E_i = sum over the block of |c_k><chat_k| with biorthogonal duals, so
    that E_i E_j = delta_ij E_i and sum_i E_i = I hold exactly."""
    if partition.dimension != basis.dimension:
        raise InvalidPartition(
            f"partition covers {partition.dimension} indices, basis has {basis.dimension}")
    d = basis.dimension
    ops = []
    for block in partition.blocks:
        E = np.zeros((d, d), dtype=complex)
        for k in block:
            E += np.outer(basis.vectors[:, k], basis.biorthogonal_duals[:, k].conj())
        ops.append(E)
    proj = ObliqueProjectors(basis=basis, partition=partition, operators=tuple(ops))
    ident = sum(ops)
    assert np.max(np.abs(ident - np.eye(d))) < 1e-9
    for i, Ei in enumerate(ops):
        assert np.max(np.abs(Ei @ Ei - Ei)) < 1e-9
        for Ej in ops[i + 1:]:
            assert np.max(np.abs(Ei @ Ej)) < 1e-9
    return proj


def _block_pinch(R: np.ndarray, partition: BlockPartition) -> np.ndarray:
    out = np.zeros_like(R)
    for b in partition.blocks:
        idx = np.ix_(b, b)
        out[idx] = R[idx]
    return out


def block_dephase(rho: DensityMatrix, projectors: ObliqueProjectors) -> DensityMatrix:
    """Normalized pinching sum_i E_i rho E_i^dag; keeps the diagonal blocks
    of the oblique coefficient matrix."""
    out = np.zeros_like(rho.matrix)
    for E in projectors.operators:
        out = out + E @ rho.matrix @ E.conj().T
    tr = float(np.trace(out).real)
    if tr < 1e-12:
        raise ZeroTrace(f"pinched trace {tr:g}")
    out = out / tr
    return DensityMatrix(0.5 * (out + out.conj().T))


def is_block_free(rho: DensityMatrix, projectors: ObliqueProjectors,
                  tol: float = 1e-9) -> bool:
    R = coefficients_of(rho, projectors.basis).entries
    return bool(np.max(np.abs(R - _block_pinch(R, projectors.partition))) <= tol)


@dataclass(frozen=True)
class BlockKrausSpec:
    """One block-structured Kraus operator: block index map f and, per source
    block i, a matrix of shape |block_{f(i)}| x |block_i|."""

    block_map: tuple
    block_matrices: tuple


def generalized_free_channel(projectors: ObliqueProjectors, specs) -> KrausChannel:
    """K_n = sum_i V[:, block_{f(i)}] c_{n,i} Chat[:, block_i]^dag.

    In oblique coordinates each K_n moves whole coordinate blocks onto
    blocks, so block-free states stay block-free.  Completeness of the
    family is verified.
    """
    basis = projectors.basis
    blocks = projectors.partition.blocks
    nb = len(blocks)
    d = basis.dimension
    ops = []
    for spec in specs:
        if len(spec.block_map) != nb or len(spec.block_matrices) != nb:
            raise BlockSizeMismatch("spec arity does not match the block count")
        K = np.zeros((d, d), dtype=complex)
        for i, (f, c) in enumerate(zip(spec.block_map, spec.block_matrices)):
            if not (0 <= f < nb):
                raise BlockSizeMismatch(f"block map value {f} out of range")
            c = np.asarray(c, dtype=complex)
            want = (len(blocks[f]), len(blocks[i]))
            if c.shape != want:
                raise BlockSizeMismatch(f"block matrix {i} has shape {c.shape}, expected {want}")
            K += basis.vectors[:, blocks[f]] @ c @ basis.biorthogonal_duals[:, blocks[i]].conj().T
        ops.append(K)
    return make_channel(ops)


def block_shift_channel(projectors: ObliqueProjectors, probs) -> KrausChannel:
    """Block analogue of the cyclic preparation: Kraus n shifts every block
    cyclically by n positions with weight sqrt(p_n).  Requires equal block
    sizes and a permutation-invariant Gram matrix."""
    blocks = projectors.partition.blocks
    nb = len(blocks)
    sizes = {len(b) for b in blocks}
    if len(sizes) != 1:
        raise BlockSizeMismatch("block shifts need equal-size blocks")
    p = np.asarray(probs, dtype=float)
    if p.size != nb or np.min(p) < -1e-12 or abs(p.sum() - 1) > 1e-9:
        raise InvalidProbabilities(f"not a probability vector over blocks: {probs!r}")
    size = sizes.pop()
    eye = np.eye(size)
    specs = []
    for n in range(nb):
        specs.append(BlockKrausSpec(
            block_map=tuple((i + n) % nb for i in range(nb)),
            block_matrices=tuple(math.sqrt(max(p[n], 0.0)) * eye for _ in range(nb)),
        ))
    return generalized_free_channel(projectors, specs)


def block_permutation_channel(projectors: ObliqueProjectors, block_perm) -> KrausChannel:
    """Single-Kraus channel permuting whole blocks; unitary (hence trace
    preserving) when the permutation preserves the Gram matrix, e.g. for
    equal blocks over a constant-overlap basis."""
    blocks = projectors.partition.blocks
    nb = len(blocks)
    perm = tuple(int(i) for i in block_perm)
    if sorted(perm) != list(range(nb)):
        raise BlockSizeMismatch(f"not a block permutation: {block_perm!r}")
    mats = []
    for i in range(nb):
        if len(blocks[perm[i]]) != len(blocks[i]):
            raise BlockSizeMismatch("permuted blocks differ in size")
        mats.append(np.eye(len(blocks[i])))
    spec = BlockKrausSpec(block_map=perm, block_matrices=tuple(mats))
    return generalized_free_channel(projectors, [spec])


def random_block_free_channel(projectors: ObliqueProjectors, seed) -> KrausChannel:
    """Random block shift or block permutation (equal blocks, constant
    overlap); concrete samples for the generalized monotonicity checks."""
    rng = np.random.default_rng(seed)
    nb = len(projectors.partition.blocks)
    if rng.random() < 0.5 and nb > 1:
        q = rng.exponential(size=nb)
        return block_shift_channel(projectors, q / q.sum())
    return block_permutation_channel(projectors, rng.permutation(nb))


# ---------------------------------------------------------------------------
# generalized measures


def _hermitian_params(partition: BlockPartition):
    """Coordinates (block, i, j, kind) for a block-diagonal Hermitian matrix."""
    coords = []
    for b in partition.blocks:
        for a_pos, a in enumerate(b):
            coords.append((a, a, "d"))
            for c in b[a_pos + 1:]:
                coords.append((a, c, "re"))
                coords.append((a, c, "im"))
    return coords


def _unpack(params, coords, d):
    B = np.zeros((d, d), dtype=complex)
    for val, (i, j, kind) in zip(params, coords):
        if kind == "d":
            B[i, i] = val
        elif kind == "re":
            B[i, j] += val
            B[j, i] += val
        else:
            B[i, j] += 1j * val
            B[j, i] += -1j * val
    return B


def _pack_gradient(Gm, coords):
    g = np.empty(len(coords))
    for k, (i, j, kind) in enumerate(coords):
        if kind == "d":
            g[k] = Gm[i, i].real
        elif kind == "re":
            g[k] = 2.0 * Gm[i, j].real
        else:
            g[k] = 2.0 * Gm[i, j].imag
    return g


def _block_eigs_min(B, partition):
    m = math.inf
    for b in partition.blocks:
        m = min(m, float(np.linalg.eigvalsh(B[np.ix_(b, b)]).min()))
    return m


_T_SCHEDULE = tuple(1.0 * 0.15**k for k in range(10))  # down to ~4e-8


def m_weight_generalized(rho: DensityMatrix, projectors: ObliqueProjectors) -> MeasureResult:
    """1 - max Tr(B G) over block-diagonal B with B >= 0 and R - B >= 0,
    working in oblique coordinates (congruence by V preserves positivity)."""
    basis = projectors.basis
    partition = projectors.partition
    R = coefficients_of(rho, basis).entries
    d = basis.dimension
    if is_block_free(rho, projectors, tol=1e-10):
        cert = {"B": _block_pinch(R, partition), "weight": 1.0}
        return MeasureResult(value=0.0, certificate=cert)
    G = basis.gram
    coords = _hermitian_params(partition)
    eps = 1e-10
    Reps = R + eps * np.eye(d)

    def feasible(params):
        B = _unpack(params, coords, d)
        if _block_eigs_min(B, partition) <= 0:
            return False
        return float(np.linalg.eigvalsh(Reps - B).min()) > 0

    def f_grad(params, t):
        B = _unpack(params, coords, d)
        M = Reps - B
        sM, UM = np.linalg.eigh(M)
        val = -float(np.trace(B @ G).real) - t * float(np.sum(np.log(sM)))
        Minv = (UM / sM) @ UM.conj().T
        Gm = -G.astype(complex) + t * Minv
        for b in partition.blocks:
            idx = np.ix_(b, b)
            sb, Ub = np.linalg.eigh(B[idx])
            val -= t * float(np.sum(np.log(sb)))
            Gm[idx] -= t * (Ub / sb) @ Ub.conj().T
        return val, _pack_gradient(Gm, coords)

    # start from a small multiple of the pinched coefficient matrix
    beta = 0.5
    pinched = _block_pinch(Reps, partition)
    x0 = None
    while beta > 1e-8:
        cand = np.array([beta * pinched[i, i].real if k == "d"
                         else beta * pinched[i, j].real if k == "re"
                         else beta * pinched[i, j].imag
                         for (i, j, k) in coords])
        if feasible(cand):
            x0 = cand
            break
        beta *= 0.5
    if x0 is None:
        x0 = np.array([eps if k == "d" else 0.0 for (_, _, k) in coords])
    x, iters = barrier_descent(x0, f_grad, feasible, _T_SCHEDULE)
    B = _unpack(x, coords, d)
    weight = float(np.clip(np.trace(B @ G).real, 0.0, 1.0))
    return MeasureResult(value=1.0 - weight, certificate={"B": B, "weight": weight},
                         iterations=iters)


def m_robustness_generalized(rho: DensityMatrix, projectors: ObliqueProjectors) -> MeasureResult:
    """min Tr(C G) - 1 over block-diagonal C with C >= R; the optimizer
    normalized is the closest block-free state in the robustness sense."""
    basis = projectors.basis
    partition = projectors.partition
    R = coefficients_of(rho, basis).entries
    d = basis.dimension
    if is_block_free(rho, projectors, tol=1e-10):
        return MeasureResult(value=0.0, certificate={"C": _block_pinch(R, partition)})
    G = basis.gram
    coords = _hermitian_params(partition)

    def feasible(params):
        C = _unpack(params, coords, d)
        return float(np.linalg.eigvalsh(C - R).min()) > 0

    def f_grad(params, t):
        C = _unpack(params, coords, d)
        M = C - R
        sM, UM = np.linalg.eigh(M)
        val = float(np.trace(C @ G).real) - t * float(np.sum(np.log(sM)))
        Minv = (UM / sM) @ UM.conj().T
        Gm = G.astype(complex) - t * Minv
        return val, _pack_gradient(Gm, coords)

    pinched = _block_pinch(R, partition)
    shift = max(float(np.linalg.eigvalsh(R - pinched).max()), 0.0) + 0.5
    C0 = pinched + shift * np.eye(d)
    x0 = np.array([C0[i, i].real if k == "d" else C0[i, j].real if k == "re"
                   else C0[i, j].imag for (i, j, k) in coords])
    x, iters = barrier_descent(x0, f_grad, feasible, _T_SCHEDULE)
    C = _unpack(x, coords, d)
    value = max(float(np.trace(C @ G).real) - 1.0, 0.0)
    return MeasureResult(value=value, certificate={"C": C}, iterations=iters)
