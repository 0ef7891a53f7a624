import pytest

from czlab import verify
from czlab.core import multiply, up_set
from czlab.regions import Region, ResourceCapError
from czlab.verify import (
    CHECKS,
    FAIL,
    PASS,
    SuiteConfig,
    corrupted_multiply,
    replay_witness,
    run_all,
    run_check,
)

SPEC_NAMES = [
    "axioms", "order", "tau1-cont", "tau2-cont", "lemma-2-7", "prop-2-9", "subcover",
    "lemma-3-1", "prop-3-1", "isolated", "shifts", "density", "lemma-3-5",
]

SMALL = {
    "axioms": {"window": 2},
    "order": {"window": 2, "filter_window": 3},
    "tau1-cont": {"n_max": 1, "coord_max": 1},
    "tau2-cont": {"n_max": 1, "coord_max": 1},
    "lemma-2-7": {"coord_max": 1, "random_cases": 5},
    "prop-2-9": {"p_max": 1, "coord_max": 1},
    "subcover": {"trials": 5},
    "lemma-3-1": {"coord_max": 1, "brute": 4},
    "prop-3-1": {"coord_max": 1, "k_max": 2},
    "isolated": {"window": 2, "t1_window": 1},
    "shifts": {"K": 2, "grid": 1},
    "density": {"window": 2},
    "lemma-3-5": {"coord_max": 1, "window": 3},
    "regions": {"cases": 20},
}


def test_registry_covers_named_checks():
    assert set(SPEC_NAMES) <= set(CHECKS)
    assert set(SMALL) == set(CHECKS)


@pytest.mark.parametrize("check_id", sorted(SMALL))
def test_small_parameters_pass(check_id):
    r = run_check(check_id, SMALL[check_id])
    assert r.verdict == PASS, r.witness
    assert r.check_id == check_id
    assert r.elapsed_ms >= 0


def test_axioms_single_idempotent_window():
    assert run_check("axioms", {"window": 0}).passed


def test_axioms_window_cap():
    with pytest.raises(ResourceCapError):
        run_check("axioms", {"window": 40})


def test_unknown_check_and_parameter():
    with pytest.raises(KeyError):
        run_check("nope")
    with pytest.raises(ValueError):
        run_check("axioms", {"size": 3})


def test_mutation_yields_replayable_triple():
    r = run_check("axioms", {"window": 3}, mutate=True)
    assert r.verdict == FAIL
    assert r.witness.startswith("associativity")
    assert replay_witness(r.witness, corrupted_multiply)
    assert not replay_witness(r.witness)
    assert r.params["mutate"] is True


def test_mutation_breaks_order_oracle():
    r = run_check("order", {"window": 3, "filter_window": 3}, mutate=True)
    assert r.verdict == FAIL and replay_witness(r.witness, corrupted_multiply)


def test_order_examples():
    from czlab.core import leq

    assert leq((5, 7), (3, 5))
    assert not leq((2, 2), (3, 3))


def test_continuity_examples():
    from czlab.topologies import FAMILIES

    t1, t2 = FAMILIES["tau1"], FAMILIES["tau2"]
    assert t1.basic((0, 0), 2).product(t1.basic((0, 0), 2)).is_subset(t1.basic((0, 0), 1))
    assert t1.basic((2, 5), 3).inverted().is_subset(t1.basic((5, 2), 3))
    lhs = t2.basic((0, 2), 7).product(t2.basic((3, 0), 7))
    assert lhs.is_subset(t2.basic(multiply((0, 2), (3, 0)), 1))
    assert t2.basic((1, 1), 2).inverted() == t2.basic((1, 1), 2)


def test_up_set_translate_examples():
    for i, j, k, l in [(0, 3, 1, 0), (0, 0, 2, 1)]:
        target = up_set(multiply((i, j), (k, l)))
        assert up_set((i, j)).translate_right((k, l)).is_subset(target)
        assert up_set((k, l)).translate_left((i, j)).is_subset(target)


def test_wedge_right_translate_examples():
    from czlab.topologies import FAMILIES

    tb = FAMILIES["tauB"]
    assert tb.basic((1, 1), 2).translate_right((2, 0)).is_subset(tb.basic(multiply((1, 1), (2, 0)), 2))
    assert tb.basic((1, 0), 1).translate_right((0, 0)).is_subset(tb.basic((1, 0), 1))
    r = run_check("prop-2-9", {"p_max": 2, "coord_max": 2})
    assert r.details["isolated_target_subcases"] == 0


def test_subcover_examples():
    r = run_check("subcover", {"index_set": "-2,0,3"})
    assert r.passed and "(-2,-2)" in r.witness
    # the whole uncovered part is up_set(-2,-2), which also holds (-3,-3)
    covered = Region.empty()
    for i in (-2, 0, 3):
        covered = covered | up_set((i, i)).complement()
    assert not covered.member((-3, -3)) and not covered.member((-2, -2))
    assert covered.complement() == up_set((-2, -2))
    r = run_check("subcover", {"index_set": [0]})
    assert r.passed and r.witness.endswith("misses (0,0)")


def test_equation_solving_example():
    from czlab.core import solve_right, solve_two_sided

    assert solve_two_sided((0, 2), (3, 0), (0, 0)) == up_set((2, 3))
    assert solve_right((3, 0), (0, 0)) == up_set((0, 3))


def test_preimage_identity_examples():
    assert Region.singleton((0, 0)).preimage_right((0, 0)) == up_set((0, 0))
    i0, j0, k = 2, 1, 2
    assert Region.singleton((i0 - k, j0 - k)).preimage_right((j0, j0 - k)) == up_set((i0 - k, j0))


def test_isolated_details():
    r = run_check("isolated", {"window": 2, "t1_window": 1})
    assert r.details["isolated_counts"] == {"tau1": 0, "tau2": 0, "tauB": 15, "tauBd": 15}
    assert "reading" in r.details


def test_density_examples():
    from czlab import topologies as topo

    iz = verify.IZ
    assert topo.forall_n_meets("tauB", (1, 0), iz)
    assert topo.forall_n_meets("tauB", (0, 0), iz)


def test_conjugation_map_examples():
    from czlab.core import conjugate_map

    assert [conjugate_map(0, 0, 2, 5, (2 + k, 5 + k)) for k in range(7)] == [(k, k) for k in range(7)]


def test_failures_become_reports(monkeypatch):
    def broken(window: int = 1):
        raise RuntimeError("boom")

    monkeypatch.setitem(CHECKS, "broken", (broken, {"window": 1}))
    r = run_check("broken")
    assert r.verdict == FAIL and "boom" in r.witness
    reports = run_all(SuiteConfig(only=["broken", "density"], params={"density": {"window": 1}}))
    assert [x.check_id for x in reports] == ["density", "broken"]
    assert [x.verdict for x in reports] == [PASS, FAIL]


def test_every_fail_carries_witness(monkeypatch):
    reports = run_all(SuiteConfig(mutate=True, only=["axioms", "order"],
                                  params={"axioms": {"window": 2}, "order": {"window": 2, "filter_window": 2}}))
    assert all(r.verdict == FAIL and r.witness for r in reports)


def test_seed_changes_keep_verdicts():
    a = run_check("subcover", seed=1)
    b = run_check("subcover", seed=2)
    assert a.verdict == b.verdict == PASS
    assert a.params["seed"] == 1 and b.params["seed"] == 2
    again = run_check("subcover", seed=1)
    assert again.witness == a.witness


def test_parallel_matches_serial():
    params = {k: v for k, v in SMALL.items()}
    serial = run_all(SuiteConfig(params=params))
    parallel = run_all(SuiteConfig(params=params, jobs=3))
    doc = lambda rs: verify.report_document(rs, 194, timing=False)  # noqa: E731
    assert doc(serial) == doc(parallel)
    assert verify.summarize(serial) == {"PASS": len(CHECKS), "FAIL": 0, "UNRESOLVED": 0}


def test_report_json_shape():
    r = run_check("density", {"window": 1})
    j = r.to_json()
    assert set(j) == {"check_id", "params", "verdict", "witness", "elapsed_ms"}
    assert r.to_json(timing=False)["elapsed_ms"] == 0
