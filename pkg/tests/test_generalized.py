import numpy as np
import pytest

from superposition import (
    BlockKrausSpec,
    BlockPartition,
    apply,
    block_dephase,
    block_projectors,
    block_shift_channel,
    coefficients_of,
    constant_overlap_basis,
    contiguous_partition,
    generalized_free_channel,
    is_block_free,
    is_free,
    m_robustness,
    m_robustness_generalized,
    m_weight,
    m_weight_generalized,
    partition_from_json,
    random_density,
    rho_x,
)
from superposition.errors import BlockSizeMismatch, InvalidPartition
from superposition.generalized import block_permutation_channel, random_block_free_channel


def test_partition_validation():
    with pytest.raises(InvalidPartition):
        BlockPartition(((0, 1), (1, 2)))  # overlap
    with pytest.raises(InvalidPartition):
        BlockPartition(((0,), (2,)))  # gap
    with pytest.raises(InvalidPartition):
        BlockPartition(((0,), ()))  # empty block
    part = contiguous_partition(4, [2])
    assert part.blocks == ((0, 1), (2, 3))
    # JSON uses 1-based indices
    assert part.to_json() == [[1, 2], [3, 4]]
    assert partition_from_json(part.to_json()).blocks == part.blocks


def test_projector_invariants():
    for d, mu, cuts in ((3, 0.4, [2]), (4, 0.3, [1, 3]), (5, 0.2, [2])):
        basis = constant_overlap_basis(d, mu)
        proj = block_projectors(basis, contiguous_partition(d, cuts))
        total = sum(proj.operators)
        assert np.max(np.abs(total - np.eye(d))) < 1e-10
        for i, Ei in enumerate(proj.operators):
            assert np.max(np.abs(Ei @ Ei - Ei)) < 1e-10
            for j, Ej in enumerate(proj.operators):
                if i != j:
                    assert np.max(np.abs(Ei @ Ej)) < 1e-10


def test_singleton_blocks_orthonormal_basis():
    from superposition import build_basis

    basis = build_basis(np.eye(3))
    proj = block_projectors(basis, BlockPartition(((0,), (1,), (2,))))
    for k, E in enumerate(proj.operators):
        want = np.zeros((3, 3))
        want[k, k] = 1
        assert np.max(np.abs(E - want)) < 1e-12


def test_block_dephase():
    basis = constant_overlap_basis(4, 0.3)
    part = contiguous_partition(4, [2])
    proj = block_projectors(basis, part)
    rho = random_density(4, 4, 3)
    out = block_dephase(rho, proj)
    assert is_block_free(out, proj)
    # idempotent
    again = block_dephase(out, proj)
    assert np.max(np.abs(again.matrix - out.matrix)) < 1e-9
    # coefficient matrix is block diagonal
    R = coefficients_of(out, basis).entries
    assert np.max(np.abs(R[:2, 2:])) < 1e-10


def test_block_dephase_singletons_gives_free_state():
    basis = constant_overlap_basis(3, 0.4)
    proj = block_projectors(basis, BlockPartition(((0,), (1,), (2,))))
    rho = random_density(3, 3, 1)
    assert is_free(block_dephase(rho, proj), basis, tol=1e-9)


def test_one_block_partition_everything_free():
    rho, basis = rho_x(0.25, 0.5)
    proj = block_projectors(basis, BlockPartition(((0, 1),)))
    assert np.max(np.abs(block_dephase(rho, proj).matrix - rho.matrix)) < 1e-10
    assert is_block_free(rho, proj)
    assert m_weight_generalized(rho, proj).value < 1e-9
    assert m_robustness_generalized(rho, proj).value < 1e-9


def test_generalized_channel_identity():
    basis = constant_overlap_basis(4, 0.3)
    proj = block_projectors(basis, contiguous_partition(4, [2]))
    spec = BlockKrausSpec(block_map=(0, 1), block_matrices=(np.eye(2), np.eye(2)))
    chan = generalized_free_channel(proj, [spec])
    assert np.max(np.abs(chan.operators[0] - np.eye(4))) < 1e-9


def test_generalized_channel_size_mismatch():
    basis = constant_overlap_basis(3, 0.4)
    proj = block_projectors(basis, contiguous_partition(3, [2]))
    bad = BlockKrausSpec(block_map=(1, 0), block_matrices=(np.eye(2), np.eye(2)))
    with pytest.raises(BlockSizeMismatch):
        generalized_free_channel(proj, [bad])


def test_block_channels_preserve_block_free():
    basis = constant_overlap_basis(4, 0.3)
    proj = block_projectors(basis, contiguous_partition(4, [2]))
    for seed in range(20):
        chan = random_block_free_channel(proj, seed)
        assert chan.completeness_defect < 1e-9
        rho = block_dephase(random_density(4, 4, seed), proj)
        assert is_block_free(apply(chan, rho), proj, tol=1e-8)


def test_block_shift_reduces_to_cyclic_on_singletons():
    from superposition import PureState, cyclic_preparation_channel

    basis = constant_overlap_basis(3, 0.4)
    proj = block_projectors(basis, BlockPartition(((0,), (1,), (2,))))
    p = [0.2, 0.5, 0.3]
    a = block_shift_channel(proj, p)
    b = cyclic_preparation_channel(basis, p)
    rho = PureState(basis.vectors[:, 0]).density()
    assert np.max(np.abs(apply(a, rho).matrix - apply(b, rho).matrix)) < 1e-9


def test_singleton_blocks_match_plain_measures():
    basis = constant_overlap_basis(2, 0.5)
    proj = block_projectors(basis, BlockPartition(((0,), (1,))))
    for seed in range(5):
        rho = random_density(2, 2, seed)
        assert abs(m_weight_generalized(rho, proj).value
                   - m_weight(rho, basis).value) < 1e-3
        assert abs(m_robustness_generalized(rho, proj).value
                   - m_robustness(rho, basis).value) < 1e-3


def test_generalized_measures_vanish_iff_block_free():
    basis = constant_overlap_basis(4, 0.3)
    proj = block_projectors(basis, contiguous_partition(4, [2]))
    for seed in range(3):
        rho = random_density(4, 4, seed)
        deph = block_dephase(rho, proj)
        assert m_weight_generalized(deph, proj).value < 1e-6
        assert m_robustness_generalized(deph, proj).value < 1e-6
        assert m_weight_generalized(rho, proj).value > 1e-5
        assert m_robustness_generalized(rho, proj).value > 1e-5


def test_refining_partition_never_decreases():
    basis = constant_overlap_basis(3, 0.4)
    coarse = block_projectors(basis, contiguous_partition(3, [2]))
    fine = block_projectors(basis, BlockPartition(((0,), (1,), (2,))))
    for seed in range(5):
        rho = random_density(3, 3, seed)
        assert m_weight_generalized(rho, fine).value >= \
            m_weight_generalized(rho, coarse).value - 1e-3
        assert m_robustness_generalized(rho, fine).value >= \
            m_robustness_generalized(rho, coarse).value - 1e-3


def test_generalized_monotone_under_block_channels():
    basis = constant_overlap_basis(4, 0.3)
    proj = block_projectors(basis, contiguous_partition(4, [2]))
    for seed in range(5):
        rho = random_density(4, 4, seed)
        chan = random_block_free_channel(proj, seed)
        out = apply(chan, rho)
        assert m_weight_generalized(out, proj).value <= \
            m_weight_generalized(rho, proj).value + 1e-4
        assert m_robustness_generalized(out, proj).value <= \
            m_robustness_generalized(rho, proj).value + 1e-4


def test_block_permutation_channel_validation():
    basis = constant_overlap_basis(4, 0.3)
    proj = block_projectors(basis, contiguous_partition(4, [1]))
    with pytest.raises(BlockSizeMismatch):
        block_permutation_channel(proj, [1, 0])  # blocks of different size
