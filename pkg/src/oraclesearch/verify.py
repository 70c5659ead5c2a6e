"""Self-contained invariant suite behind the `verify` CLI command.

Each check returns a CheckResult with a one-line detail. The Monte Carlo
checks accept a trial count so the command line can trade time for power;
the defaults match the documented tolerances.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from . import analytics, circuits, measurement, oracle, statevector, strategies, teststate

DEFAULT_SEED = 20260814


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _result(name: str, passed: bool, detail: str) -> CheckResult:
    return CheckResult(name, bool(passed), detail)


def check_statevector() -> CheckResult:
    rng = np.random.default_rng(7)
    worst = 0.0
    for n in (1, 2, 3, 5):
        dim = 1 << n
        raw = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        state = statevector.Ket(raw / np.linalg.norm(raw))
        for q in range(1, n + 1):
            state = statevector.apply_single(statevector.HADAMARD, q, state)
            state = statevector.apply_single(statevector.ry(0.3 * q), q, state)
        if n >= 2:
            state = statevector.apply_controlled(statevector.PAULI_X, ((1, 0),), n, state)
        worst = max(worst, abs(float(np.vdot(state.amps, state.amps).real) - 1.0))
    rejected = False
    try:
        statevector.apply_single(np.array([[1.0, 1.0], [0.0, 1.0]]), 1, statevector.basis_ket(2, 0))
    except ValueError:
        rejected = True
    flip = statevector.apply_controlled(
        statevector.PAULI_Z,
        tuple((q, 1) for q in range(1, 3)),
        3,
        statevector.basis_ket(8, 7),
    )
    anchored = abs(flip.amps[7] + 1.0) < 1e-12
    passed = worst < 1e-10 and rejected and anchored
    return _result(
        "statevector.gates", passed, f"norm drift {worst:.2e}, non-unitary rejected: {rejected}"
    )


def check_oracle_involution() -> CheckResult:
    rng = np.random.default_rng(11)
    raw = rng.normal(size=8) + 1j * rng.normal(size=8)
    state = statevector.Ket(raw / np.linalg.norm(raw))
    box = oracle.BlackBox(5, 8)
    twice = box.query(box.query(state))
    drift = float(np.max(np.abs(twice.amps - state.amps)))
    passed = drift < 1e-12 and box.queries == 2
    return _result("oracle.involution", passed, f"|O^2 - I| = {drift:.2e}, queries = {box.queries}")


def check_grover_success_law() -> CheckResult:
    """Simulated k-step success equals sin((2k+1) theta_N)^2 for n <= 10."""
    worst = 0.0
    spread_worst = 0.0
    for n in range(2, 11):
        N = 1 << n
        target = N // 3
        state = statevector.basis_ket(N, 0)
        for q in range(1, n + 1):
            state = statevector.apply_single(statevector.HADAMARD, q, state)
        for k in range(1, math.ceil(2.0 * math.sqrt(N)) + 1):
            state = oracle.diffusion(oracle.apply_oracle(target, state))
            p_sim = float(abs(state.amps[target]) ** 2)
            worst = max(worst, abs(p_sim - oracle.success_probability(N, k)))
            rest = np.delete(state.amps, target)
            spread_worst = max(spread_worst, float(np.max(np.abs(rest - rest[0]))))
    exact4 = abs(oracle.success_probability(4, 1) - 1.0)
    passed = worst < 1e-10 and spread_worst < 1e-10 and exact4 < 1e-12
    return _result(
        "oracle.grover_success_law",
        passed,
        f"max |p_sim - p| = {worst:.2e}, off-target spread {spread_worst:.2e}, 1 - p(4,1) = {exact4:.1e}",
    )


def check_teststate_geometry() -> CheckResult:
    worst = 0.0
    for M in (4, 5, 8, 16, 33, 64):
        cset = teststate.CandidateSet.full(M)
        lam = teststate.pyramid_overlap(M)
        hit = teststate.processed_state(cset, 0, 0)
        misses = [teststate.processed_state(cset, 0, k) for k in range(1, M)]
        for miss in misses:
            worst = max(worst, abs(statevector.inner(hit, miss)))
        for i, u in enumerate(misses):
            for v in misses[i:]:
                expect = 1.0 if u is v else lam
                worst = max(worst, abs(statevector.inner(u, v).real - expect))
    # the same geometry embedded at scattered positions of a larger space
    sub = teststate.CandidateSet(16, (1, 3, 5, 7, 9))
    ref = teststate.CandidateSet.full(5)
    for k_sub, k_ref in zip((3, 5), (1, 2)):
        a = statevector.inner(
            teststate.processed_state(sub, 1, k_sub), teststate.processed_state(sub, 1, 9)
        )
        b = statevector.inner(
            teststate.processed_state(ref, 0, k_ref), teststate.processed_state(ref, 0, 4)
        )
        worst = max(worst, abs(a - b))
    passed = worst < 1e-10
    return _result("teststate.geometry", passed, f"max geometric defect {worst:.2e}")


def check_srm_measurement(m_max: int = 64) -> CheckResult:
    """Gram identity and the (1, alpha, beta) outcome cases for M in [5, m_max]."""
    worst_gram = 0.0
    worst_case = 0.0
    for M in range(5, m_max + 1):
        cset = teststate.CandidateSet.full(M)
        basis = teststate.srm_basis(cset, 0)
        gram = basis.matrix @ basis.matrix.conj().T
        worst_gram = max(worst_gram, float(np.max(np.abs(gram - np.eye(M)))))
        alpha, beta = measurement.alpha_beta(M - 1)
        hit = basis.matrix.conj() @ teststate.processed_state(cset, 0, 0).amps
        probs = np.abs(hit) ** 2
        expected = np.zeros(M)
        expected[0] = 1.0
        worst_case = max(worst_case, float(np.max(np.abs(probs - expected))))
        miss = basis.matrix.conj() @ teststate.processed_state(cset, 0, 2).amps
        probs = np.abs(miss) ** 2
        expected = np.full(M, beta)
        expected[0] = 0.0
        expected[2] = alpha
        worst_case = max(worst_case, float(np.max(np.abs(probs - expected))))
    a3, b3 = measurement.alpha_beta(3)
    edge = max(abs(a3 - 1.0), abs(b3))
    passed = worst_gram < 1e-10 and worst_case < 1e-10 and edge == 0.0
    return _result(
        "measurement.srm_cases",
        passed,
        f"max |gram - I| = {worst_gram:.2e}, max case defect {worst_case:.2e}, "
        f"(alpha_3, beta_3) = ({a3}, {b3})",
    )


def check_mud_model() -> CheckResult:
    worst_eig = 0.0
    worst_sum = 0.0
    worst_fire = 0.0
    worst_success = 0.0
    for M in (5, 6, 8, 16, 32):
        cset = teststate.CandidateSet.full(M)
        pom = measurement.build_mud(cset, 0)
        L = M - 1
        total = np.zeros((M, M), dtype=np.complex128)
        for i in range(L):
            element = pom.conclusive_element(i)
            total += element
            for edge_i, k in enumerate(pom.edge_members):
                fire = float(
                    np.vdot(pom.edges[edge_i], element @ pom.edges[edge_i]).real
                )
                if k == pom.edge_members[i]:
                    worst_success = max(worst_success, abs(fire - pom.success))
                else:
                    worst_fire = max(worst_fire, abs(fire))
        inconclusive = pom.inconclusive_element()
        worst_eig = max(worst_eig, -float(np.linalg.eigvalsh(inconclusive).min()))
        # independent projector from an orthonormal basis of the edge span
        q = np.linalg.qr(pom.edges.T.conj())[0]
        projector = q @ q.conj().T
        worst_sum = max(
            worst_sum, float(np.max(np.abs(total + inconclusive - projector)))
        )
        expect = 2.0 / (M - 2)
        worst_success = max(worst_success, abs(pom.success - expect))
    passed = (
        worst_eig < 1e-9 and worst_sum < 1e-10 and worst_fire < 1e-12 and worst_success < 1e-12
    )
    return _result(
        "measurement.mud_model",
        passed,
        f"min eigenvalue >= -{worst_eig:.2e}, completeness defect {worst_sum:.2e}, "
        f"cross-fire {worst_fire:.2e}, success defect {worst_success:.2e}",
    )


def check_analytics_consistency() -> CheckResult:
    spots = [
        abs(analytics.g_classical(64) - 32.484375),
        abs(analytics.g_teststate(4) - 1.0),
        abs(analytics.g_teststate(5) - 1.8),
        abs(analytics.g_mud(8) - 196.0 / 96.0),
        abs(analytics.g_grover_opt(4).queries - 2.0),
        float(analytics.g_grover_opt(4).k_opt - 1),
    ]
    worst_spot = max(spots)
    worst_dist = 0.0
    for N in range(5, 201):
        probs = analytics.termination_probs(N)
        worst_dist = max(worst_dist, abs(float(probs.sum()) - 1.0))
        mean = float(np.arange(1, N - 2) @ probs)
        worst_dist = max(worst_dist, abs(mean - analytics.g_teststate(N)))
    # alpha = beta = 1/m collapses the recurrence onto the classical curve
    worst_reduce = 0.0
    g = analytics.g_classical(4)
    for m in range(4, 129):
        g = analytics.recurrence_step(m, 1.0 / m, 1.0 / m, g)
        worst_reduce = max(worst_reduce, abs(g - analytics.g_classical(m + 1)))
    worst_order = 0.0
    classical, grover, ts = analytics.comparison_curves(16, 256, 8)
    for (_, gc), (_, gq), (_, gt) in zip(classical.points, grover.points, ts.points):
        if not gq < gt < gc:
            worst_order = 1.0
    passed = (
        worst_spot < 1e-12 and worst_dist < 1e-9 and worst_reduce < 1e-9 and worst_order == 0.0
    )
    return _result(
        "analytics.consistency",
        passed,
        f"spot defect {worst_spot:.2e}, round-distribution defect {worst_dist:.2e}, "
        f"classical reduction defect {worst_reduce:.2e}, ordering holds: {worst_order == 0.0}",
    )


def check_asymptotics() -> CheckResult:
    """Large-N coefficients at N = 2^20."""
    N = 1 << 20
    gt = analytics.g_teststate(N)
    gc = analytics.g_classical(N)
    gt_full = analytics.g_teststate_fullspace(N)
    plan = analytics.g_grover_opt(N)
    gm = analytics.g_mud(N)
    gm_full = analytics.g_mud_fullspace(N)
    defects = {
        "ratio": abs(gt / gc * analytics.CLASSICAL_RATIO - 1.0),
        "teststate": abs(gt * analytics.TESTSTATE_DIVISOR / N - 1.0),
        "fullspace": abs(gt_full * analytics.TESTSTATE_FULL_DIVISOR / N - 1.0),
        "grover": abs(plan.queries / math.sqrt(N) / analytics.GROVER_LIMIT - 1.0),
        "k_opt": abs(plan.k_opt / math.sqrt(N) / 0.58 - 1.0),
        "mud": abs(gm * analytics.MUD_DIVISOR / N - 1.0),
        "mud_full": abs(gm_full * analytics.MUD_FULL_DIVISOR / N - 1.0),
    }
    limits = {
        "ratio": 0.01,
        "teststate": 0.01,
        "fullspace": 0.01,
        "grover": 0.005,
        "k_opt": 0.02,
        "mud": 0.01,
        "mud_full": 0.01,
    }
    passed = all(defects[key] <= limits[key] for key in defects)
    detail = ", ".join(f"{key} {defects[key]:.2e}" for key in defects)
    return _result("analytics.asymptotics", passed, detail)


def _fidelity(u: statevector.Ket, v: statevector.Ket) -> float:
    return float(abs(statevector.inner(u, v)) ** 2)


def check_circuit_prep() -> CheckResult:
    worst = 1.0
    for n in range(2, 6):
        N = 1 << n
        prep = circuits.compile_teststate_prep(n)
        target = teststate.test_state(teststate.CandidateSet.full(N), 0)
        worst = min(worst, _fidelity(circuits.simulate(prep), target))
    prep3 = circuits.compile_teststate_prep(3)
    for j in range(8):
        moved = circuits.localize_teststate(prep3, j)
        target = teststate.test_state(teststate.CandidateSet.full(8), j)
        worst = min(worst, _fidelity(circuits.simulate(moved), target))
    angles = [g.angle for g in prep3.gates if g.kind == "ry"]
    expected = [
        math.atan(1.0 / math.sqrt(2.0)),
        math.atan(2.0 - math.sqrt(3.0)),
        math.atan((3.0 - math.sqrt(5.0)) / 2.0),
    ]
    angle_defect = max(abs(a - e) for a, e in zip(angles, expected))
    gate_count_ok = len(prep3.gates) == 5
    passed = worst >= 1.0 - 1e-10 and angle_defect < 1e-12 and gate_count_ok
    return _result(
        "circuits.prep",
        passed,
        f"min fidelity {worst:.12f}, angle defect {angle_defect:.2e}, 5 gates: {gate_count_ok}",
    )


def _srm_reference_matrix(n: int) -> np.ndarray:
    N = 1 << n
    amp = teststate.amplitudes(N)
    y = teststate.srm_coefficients(N).y
    m = -np.eye(N, dtype=np.complex128)
    m[0, 0] += 1.0 - amp.a
    m[0, 1:] += amp.b
    m[1:, 0] += amp.b
    m[1:, 1:] += y
    return m


def check_circuit_srm(shots: int = 100_000, seed: int = DEFAULT_SEED) -> CheckResult:
    worst_entry = 0.0
    worst_map = 0.0
    worst_eigen = 0.0
    for n in (3, 4):
        N = 1 << n
        sim = circuits.unitary(circuits.compile_srm_unitary(n))
        worst_entry = max(worst_entry, float(np.max(np.abs(sim - _srm_reference_matrix(n)))))
        basis = teststate.srm_basis(teststate.CandidateSet.full(N), 0)
        for row in range(N):
            image = sim @ basis.matrix[row]
            worst_map = max(worst_map, abs(abs(image[row]) - 1.0))
        amp = teststate.amplitudes(N)
        ones = np.ones(N - 1)
        e0 = np.concatenate(
            ([math.sqrt((1 - amp.a) / 2.0)], amp.b / math.sqrt(2.0 * (1 - amp.a)) * ones)
        ).astype(np.complex128)
        e1 = np.concatenate(
            ([-math.sqrt((1 + amp.a) / 2.0)], amp.b / math.sqrt(2.0 * (1 + amp.a)) * ones)
        ).astype(np.complex128)
        worst_eigen = max(worst_eigen, float(np.max(np.abs(sim @ e0 - e0))))
        worst_eigen = max(worst_eigen, float(np.max(np.abs(sim @ e1 + e1))))
        for j in range(2, N):
            ej = np.zeros(N, dtype=np.complex128)
            ej[1], ej[j] = -1.0, 1.0
            ej /= math.sqrt(2.0)
            worst_eigen = max(worst_eigen, float(np.max(np.abs(sim @ ej + ej))))
    # sampling the computational basis after the circuit reproduces the
    # pointer statistics of the measurement module (chi-square at the
    # two-sided-3-sigma quantile; per-bin bounds over-reject with 16 bins)
    N = 16
    cset = teststate.CandidateSet.full(N)
    state = circuits.simulate(
        circuits.compile_srm_unitary(4), teststate.processed_state(cset, 0, 2)
    )
    probs = np.abs(state.amps) ** 2
    counts = np.random.default_rng(seed).multinomial(shots, probs / probs.sum())
    live = probs > 1e-12
    chisq = float(np.sum((counts[live] - shots * probs[live]) ** 2 / (shots * probs[live])))
    limit = float(stats.chi2.ppf(0.9973, int(live.sum()) - 1))
    dead_hits = int(counts[~live].sum())
    passed = (
        worst_entry < 1e-9
        and worst_map < 1e-9
        and worst_eigen < 1e-9
        and chisq <= limit
        and dead_hits == 0
    )
    return _result(
        "circuits.srm_unitary",
        passed,
        f"entry defect {worst_entry:.2e}, |<l|M|T_0^l>| defect {worst_map:.2e}, "
        f"eigen defect {worst_eigen:.2e}, sampling chi2 {chisq:.1f} <= {limit:.1f}, "
        f"forbidden-outcome hits {dead_hits}",
    )


def check_circuit_pair() -> CheckResult:
    failures = 0
    for n in (3, 4):
        N = 1 << n
        for j in range(N):
            for hidden in range(N):
                box = oracle.BlackBox(hidden, N)
                confirmed, queries = strategies.run_pair_confirm(box, j)
                if confirmed != (hidden == j):
                    failures += 1
                paired = hidden in (j, j ^ (1 << (n - 1)))
                if queries != (2 if paired else 1) or queries != box.queries:
                    failures += 1
    passed = failures == 0
    return _result("circuits.pair_check", passed, f"{failures} truth-table failures at n = 3, 4")


def check_circuit_graph(shots: int = 100_000, seed: int = DEFAULT_SEED) -> CheckResult:
    worst = 1.0
    seen_outcomes = set()
    rng = np.random.default_rng(seed)
    for n in range(2, 6):
        target = circuits.complex_test_state(n)
        for _ in range(24):
            out, outcome = circuits.prepare_graph_test_state(n, rng)
            seen_outcomes.add((n, outcome))
            worst = min(worst, _fidelity(out, target))
    both = all((n, m) in seen_outcomes for n in range(2, 6) for m in (0, 1))
    angle_edge = abs(circuits.ancilla_basis_angle(2) - math.pi)
    ups = sum(1 - prepare[1] for prepare in
              (circuits.prepare_graph_test_state(3, rng) for _ in range(shots)))
    sigma = math.sqrt(0.25 / shots)
    freq_z = abs(ups / shots - 0.5) / sigma
    passed = worst >= 1.0 - 1e-10 and both and angle_edge < 1e-12 and freq_z <= 3.0
    return _result(
        "circuits.graph_state",
        passed,
        f"min fidelity {worst:.12f}, both outcomes seen: {both}, "
        f"theta(N=4) - pi = {angle_edge:.1e}, ancilla frequency z = {freq_z:.2f}",
    )


def check_circuit_roundtrip() -> CheckResult:
    rng = np.random.default_rng(3)
    worst = 0.0
    exact = True
    for circuit in (
        circuits.compile_teststate_prep(3),
        circuits.compile_srm_unitary(3),
        circuits.compile_pair_check(3, 5),
        circuits.compile_graph_prep(3),
    ):
        back = circuits.import_circuit(circuits.export(circuit))
        exact = exact and back == circuit
        dim = 1 << circuit.width
        raw = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        probe = statevector.Ket(raw / np.linalg.norm(raw))
        delta = circuits.simulate(back, probe).amps - circuits.simulate(circuit, probe).amps
        worst = max(worst, float(np.max(np.abs(delta))))
    passed = exact and worst == 0.0
    return _result(
        "circuits.roundtrip", passed, f"gate-exact: {exact}, simulation delta {worst:.1e}"
    )


_CLOSED_FORMS = {
    "classical": analytics.g_classical,
    "teststate_relevant": analytics.g_teststate,
    "teststate_full": analytics.g_teststate_fullspace,
    "mud_relevant": analytics.g_mud,
    "mud_full": analytics.g_mud_fullspace,
}


def closed_form(strategy: str, N: int, k: int | None = None) -> float:
    """The analytic expectation a Monte Carlo run is compared against."""
    if strategy == "grover":
        return analytics.g_grover(N, analytics.g_grover_opt(N).k_opt if k is None else k)
    if strategy in _CLOSED_FORMS:
        return _CLOSED_FORMS[strategy](N)
    raise ValueError(f"unknown strategy {strategy!r}")


def check_montecarlo(
    trials: int = 100_000, seed: int = DEFAULT_SEED, workers: int = 1
) -> CheckResult:
    """Strategy means against closed forms at N in {8, 16, 32, 64}."""
    worst_z = 0.0
    worst_at = ""
    for strategy in ("classical", "teststate_relevant", "teststate_full", "mud_relevant", "mud_full"):
        for N in (8, 16, 32, 64):
            stats = strategies.estimate(strategy, N, trials, seed, workers=workers)
            z = abs(stats.mean - closed_form(strategy, N)) / stats.stderr
            if z > worst_z:
                worst_z, worst_at = z, f"{strategy}@N={N}"
    exact = strategies.estimate("teststate_relevant", 4, 2000, seed)
    exact_ok = exact.mean == 1.0 and exact.stderr == 0.0
    passed = worst_z <= 3.0 and exact_ok
    return _result(
        "strategies.montecarlo",
        passed,
        f"worst |z| = {worst_z:.2f} at {worst_at}, N=4 mean exactly 1: {exact_ok}",
    )


def check_grover_verified(
    trials: int = 100_000, seed: int = DEFAULT_SEED, workers: int = 1
) -> CheckResult:
    stats = strategies.estimate("grover", 64, trials, seed, workers=workers)
    expect = closed_form("grover", 64)
    gap = abs(stats.mean - expect)
    # 1% systematic slack (the closed form drops a small correction) plus 3 sigma of noise
    allowance = 3.0 * stats.stderr + 0.01 * expect
    tiny = strategies.estimate("grover", 4, 2000, seed, k=1)
    tiny_ok = tiny.mean == 2.0 and tiny.stderr == 0.0
    passed = gap <= allowance and tiny_ok
    return _result(
        "strategies.grover_verified",
        passed,
        f"|mean - {expect:.4f}| = {gap:.4f} within {allowance:.4f}, "
        f"N=4 k=1 always 2 queries: {tiny_ok}",
    )


def check_determinism(workers: tuple[int, ...] = (1, 2, 3)) -> CheckResult:
    baseline = strategies.estimate("teststate_relevant", 16, 600, DEFAULT_SEED)
    repeat = strategies.estimate("teststate_relevant", 16, 600, DEFAULT_SEED)
    same_repeat = (baseline.mean, baseline.stderr) == (repeat.mean, repeat.stderr)
    same_workers = True
    for w in workers:
        if w == 1:
            continue
        again = strategies.estimate("teststate_relevant", 16, 600, DEFAULT_SEED, workers=w)
        same_workers = same_workers and (again.mean, again.stderr) == (
            baseline.mean,
            baseline.stderr,
        )
    passed = same_repeat and same_workers
    return _result(
        "strategies.determinism",
        passed,
        f"repeat bit-identical: {same_repeat}, worker counts {workers} bit-identical: {same_workers}",
    )


def run_all(trials: int = 100_000, seed: int = DEFAULT_SEED, workers: int = 1) -> list[CheckResult]:
    return [
        check_statevector(),
        check_oracle_involution(),
        check_grover_success_law(),
        check_teststate_geometry(),
        check_srm_measurement(),
        check_mud_model(),
        check_analytics_consistency(),
        check_asymptotics(),
        check_circuit_prep(),
        check_circuit_srm(seed=seed),
        check_circuit_pair(),
        check_circuit_graph(seed=seed),
        check_circuit_roundtrip(),
        check_montecarlo(trials=trials, seed=seed, workers=workers),
        check_grover_verified(trials=trials, seed=seed, workers=workers),
        check_determinism(),
    ]
