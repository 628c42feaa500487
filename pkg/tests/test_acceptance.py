"""End-to-end acceptance suite.

Each test prints one `ACCEPTANCE n: PASS|FAIL` line with its headline
numbers, then asserts at the stated tolerance.
"""

import numpy as np

from superposition import (
    BlockPartition,
    PureState,
    RoofOptions,
    apply,
    block_projectors,
    constant_overlap_basis,
    constant_overlap_gram,
    cyclic_preparation_channel,
    delta_map,
    example1_channel,
    example1_optimal_state,
    free_state,
    is_block_free,
    m_delta,
    m_l1,
    m_l1_roof,
    m_rel_ent,
    m_robustness,
    m_robustness_generalized,
    m_weight,
    m_weight_generalized,
    max_measure_value,
    random_density,
    real_dual_kraus,
    rho_x,
    run_axiom_campaign,
    run_oracle_campaign,
    state_from_coefficients,
)
from superposition.errors import OverlapOutOfRange
from superposition.generalized import contiguous_partition, random_block_free_channel
from superposition.qstate import CoefficientMatrix

MU_GRID = (-0.5, -0.25, 0.0, 0.25, 0.5)
X_GRID = np.linspace(-0.45, 0.45, 21)


def _verdict(n: int, ok: bool, detail: str = ""):
    tag = "PASS" if ok else "FAIL"
    print(f"\nACCEPTANCE {n}: {tag}" + (f"  ({detail})" if detail else ""))
    assert ok, f"acceptance criterion {n} failed: {detail}"


def test_acceptance_01_roof_closed_form():
    opts = RoofOptions(ensemble_size_cap=2, restarts=6)
    worst_value = 0.0
    worst_weight = 0.0
    for mu in MU_GRID:
        for x in X_GRID:
            x = float(x)
            rho, basis = rho_x(x, mu)
            res = m_l1_roof(rho, basis, opts)
            closed = 2 * abs(x) / (1 + 2 * mu * x)
            worst_value = max(worst_value, abs(res.value - closed))
            probs = [p for p, _ in res.certificate.members]
            if len(probs) == 2:
                worst_weight = max(worst_weight, abs(probs[0] - 0.5))
            elif x != 0:
                worst_weight = 1.0
    ok = worst_value < 1e-3 and worst_weight < 1e-3
    _verdict(1, ok, f"max value gap {worst_value:.2e}, "
                    f"max weight gap {worst_weight:.2e}, tol 1e-3")


def test_acceptance_02_channel_identity():
    worst = 0.0
    for mu in MU_GRID:
        for x in X_GRID:
            x = float(x)
            rho, basis = rho_x(x, mu)
            phi = example1_optimal_state(x, mu)
            out = apply(example1_channel(basis), phi.density())
            worst = max(worst, float(np.max(np.abs(out.matrix - rho.matrix))))
    _verdict(2, worst < 1e-9, f"max matrix error {worst:.2e}, tol 1e-9")


def test_acceptance_03_gram_threshold():
    ok = True
    detail = []
    for d in range(2, 6):
        lo = 1 / (1 - d)
        try:
            constant_overlap_basis(d, lo + 1e-3)
            constant_overlap_basis(d, 1 - 1e-3)
        except OverlapOutOfRange:
            ok = False
        det = abs(np.linalg.det(constant_overlap_gram(d, lo)).real)
        detail.append(f"d={d} |det|={det:.1e}")
        ok = ok and det <= 1e-9
    _verdict(3, ok, "; ".join(detail))


def test_acceptance_04_cyclic_preparation():
    worst = 0.0
    for d in range(2, 6):
        for mu in (0.0, 0.3, -0.2):
            basis = constant_overlap_basis(d, mu)
            start = PureState(basis.vectors[:, 0]).density()
            rng = np.random.default_rng(1000 * d + int(10 * mu))
            for _ in range(50):
                p = rng.exponential(size=d)
                p /= p.sum()
                out = apply(cyclic_preparation_channel(basis, p), start)
                target = free_state(basis, p)
                worst = max(worst, float(np.max(np.abs(out.matrix - target.matrix))))
    _verdict(4, worst < 1e-9, f"max preparation error {worst:.2e}, tol 1e-9")


def test_acceptance_05_axiom_suites():
    failures = []
    for measure in ("l1", "rel_ent", "robustness", "weight", "delta", "l1_roof"):
        for d in (2, 3):
            basis = constant_overlap_basis(d, 0.5)
            reports = run_axiom_campaign(measure, basis, trials=200, seed=1)
            for r in reports:
                if not r.passed:
                    failures.append(f"{measure}/d={d}/{r.axiom}")
    control = run_axiom_campaign("broken_l1", constant_overlap_basis(2, 0.5),
                                 trials=200, seed=1)
    control_fails_s1 = not control[0].passed
    ok = not failures and control_fails_s1
    _verdict(5, ok, ("violations: " + ",".join(failures) if failures else
                     "all campaigns clean") +
             f"; negative control fails S1: {control_fails_s1}")


def test_acceptance_06_roof_dominates_l1():
    worst = np.inf
    for d in (2, 3):
        basis = constant_overlap_basis(d, 0.5)
        opts = RoofOptions(ensemble_size_cap=1, restarts=4)
        for seed in range(200):
            rho = random_density(d, d, 10_000 + seed)
            gap = m_l1_roof(rho, basis, opts).value - m_l1(rho, basis).value
            worst = min(worst, gap)
    _verdict(6, worst > -1e-6, f"min(roof - l1) = {worst:.2e}, tol -1e-6")


def test_acceptance_07_weight_upper_bound():
    basis = constant_overlap_basis(2, 0.5)
    from superposition import m_l1_pure

    cd_l1 = max_measure_value(basis, lambda phi: m_l1_pure(phi, basis),
                              restarts=12, seed=0)
    cd_re = max_measure_value(
        basis, lambda phi: m_rel_ent(phi.density(), basis).value,
        restarts=8, seed=0)
    worst = -np.inf
    for seed in range(100):
        rho = random_density(2, 2, 20_000 + seed)
        mw = m_weight(rho, basis).value
        worst = max(worst, m_l1(rho, basis).value - cd_l1 * mw)
        worst = max(worst, m_rel_ent(rho, basis).value - cd_re * mw)
    _verdict(7, worst <= 1e-4,
             f"C_d(l1)={cd_l1:.6f} C_d(rel_ent)={cd_re:.6f}, "
             f"max C - C_d*m_w = {worst:.2e}, tol 1e-4")


def test_acceptance_08_oracle_equivalence():
    gaps = {}
    for measure, oracle in (("rel_ent", "rel_ent_grid"),
                            ("robustness", "robustness_grid"),
                            ("weight", "weight_grid")):
        r = run_oracle_campaign(measure, oracle, trials=50, seed=2, tol=1e-3)
        gaps[measure] = (r.passed, r.max_slack)
    ok = all(p for p, _ in gaps.values())
    detail = "; ".join(f"{m}: max_slack {s:.2e}" for m, (_, s) in gaps.items())
    _verdict(8, ok, detail + ", tol 1e-3")


def test_acceptance_09_delta_iff_real_and_commutation():
    basis = constant_overlap_basis(2, 0.5)
    rng = np.random.default_rng(9)
    real_ok = True
    complex_ok = True
    for _ in range(20):
        A = rng.standard_normal((2, 2))
        R = A @ A.T + 1e-3 * np.eye(2)
        R = R / np.trace(R @ basis.gram).real
        rho = state_from_coefficients(CoefficientMatrix(entries=R, basis=basis), basis)
        real_ok = real_ok and m_delta(rho, basis).value <= 1e-6
        y = rng.uniform(0.05, 0.3)
        Rc = np.array([[R[0, 0], R[0, 1] + 1j * y],
                       [R[1, 0] - 1j * y, R[1, 1]]])
        ev = np.linalg.eigvalsh(Rc)
        if ev.min() <= 1e-6:
            continue
        rho_c = state_from_coefficients(
            CoefficientMatrix(entries=Rc, basis=basis), basis)
        complex_ok = complex_ok and m_delta(rho_c, basis).value > 1e-6
    worst_comm = 0.0
    for seed in range(50):
        rho = random_density(2, 2, 30_000 + seed)
        cs = [np.random.default_rng(seed).standard_normal((2, 2)) for _ in range(2)]
        chan = real_dual_kraus(basis, cs)
        lhs = delta_map(apply(chan, rho), basis).matrix
        rhs = sum(K @ delta_map(rho, basis).matrix @ K.conj().T
                  for K in chan.operators)
        worst_comm = max(worst_comm, float(np.max(np.abs(lhs - rhs))))
    ok = real_ok and complex_ok and worst_comm < 1e-8
    _verdict(9, ok, f"real->0: {real_ok}, complex->positive: {complex_ok}, "
                    f"max commutation error {worst_comm:.2e}, tol 1e-8")


def test_acceptance_10_generalized():
    basis = constant_overlap_basis(2, 0.5)
    proj_single = block_projectors(basis, BlockPartition(((0,), (1,))))
    proj_whole = block_projectors(basis, BlockPartition(((0, 1),)))
    worst_agree = 0.0
    worst_whole = 0.0
    for seed in range(10):
        rho = random_density(2, 2, 40_000 + seed)
        worst_agree = max(worst_agree, abs(
            m_weight_generalized(rho, proj_single).value - m_weight(rho, basis).value))
        worst_agree = max(worst_agree, abs(
            m_robustness_generalized(rho, proj_single).value
            - m_robustness(rho, basis).value))
        worst_whole = max(worst_whole, m_weight_generalized(rho, proj_whole).value,
                          m_robustness_generalized(rho, proj_whole).value)
    basis4 = constant_overlap_basis(4, 0.3)
    proj4 = block_projectors(basis4, contiguous_partition(4, [2]))
    preserve = True
    from superposition import block_dephase

    for seed in range(50):
        chan = random_block_free_channel(proj4, seed)
        rho = block_dephase(random_density(4, 4, seed), proj4)
        preserve = preserve and is_block_free(apply(chan, rho), proj4, tol=1e-8)
    ok = worst_agree < 1e-3 and worst_whole < 1e-9 and preserve
    _verdict(10, ok, f"singleton agreement {worst_agree:.2e} (tol 1e-3), "
                     f"one-block max {worst_whole:.2e}, "
                     f"50 channel samples preserve block-freeness: {preserve}")
