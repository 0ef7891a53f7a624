"""End-to-end acceptance run with the default (full-size) parameters of every check."""

import json
from pathlib import Path

import pytest

from czlab import cli, topologies as topo
from czlab.regions import Box
from czlab.verify import IZ, PASS, SuiteConfig, corrupted_multiply, replay_witness, report_document, run_all

GOLDEN = Path(__file__).parent / "golden" / "check_all.json"


@pytest.fixture(scope="module")
def suite():
    reports = run_all(SuiteConfig(jobs=1))
    return {r.check_id: r for r in reports}, reports


def _passed(suite, check_id):
    r = suite[0][check_id]
    assert r.verdict == PASS, f"{check_id}: {r.witness}"
    return r


def test_criterion_01_semigroup_axioms(suite, criterion):
    with criterion(1, "semigroup axioms exhaustive on [-6,6]^2"):
        r = _passed(suite, "axioms")
        assert r.params["window"] == 6
        assert r.details["triples"] == 169**3


def test_criterion_02_order(suite, criterion):
    with criterion(2, "order conditions vs idempotent oracle, order filters on [-10,10]^2"):
        r = _passed(suite, "order")
        assert r.details["pairs"] == 121**2
        assert r.params["filter_window"] == 10


def test_criterion_03_region_algebra(suite, criterion):
    with criterion(3, "region algebra on 1000 random cases"):
        r = _passed(suite, "regions")
        assert r.details["cases"] == 1000


def test_criterion_04_up_set_translates(suite, criterion):
    with criterion(4, "translates of up-sets, full grid <= 5 and 100 random tuples"):
        r = _passed(suite, "lemma-2-7")
        assert r.details["tuples"] == 11**4 + 100


def test_criterion_05_product_continuity(suite, criterion):
    with criterion(5, "tau1/tau2 product and inversion inclusions, n <= 3, coords <= 3"):
        for cid in ("tau1-cont", "tau2-cont"):
            r = _passed(suite, cid)
            assert r.params == {"n_max": 3, "coord_max": 3}
            assert r.details["product_inclusions"] > 0


def test_criterion_06_tau_b_right_translates(suite, criterion):
    with criterion(6, "tauB right-translation inclusions, p <= 3, coords <= 3"):
        r = _passed(suite, "prop-2-9")
        assert r.details["inclusions"] == 3 * 21 * 49
        assert r.details["isolated_target_subcases"] == r.details["isolated_target_subcases_holding"]


def test_criterion_07_equation_solving(suite, criterion):
    with criterion(7, "solution regions equal up-sets and brute solving on [-12,12]^2"):
        r = _passed(suite, "lemma-3-1")
        assert r.details["equations"] == 3 * 7**4
        assert r.details["brute_window"] == str(Box.square(12))


def test_criterion_08_preimage_identities(suite, criterion):
    with criterion(8, "right-shift preimage and singleton extraction, coords <= 3, k <= 4"):
        r = _passed(suite, "prop-3-1")
        assert r.params == {"coord_max": 3, "k_max": 4}


def test_criterion_09_topology_profiles(suite, criterion):
    with criterion(9, "isolated-point profiles and minimal T1 witnesses on [-4,4]^2"):
        r = _passed(suite, "isolated")
        assert r.details["isolated_counts"]["tau1"] == 0
        assert r.details["isolated_counts"]["tau2"] == 0
        assert r.details["t1_ordered_pairs"] == 81 * 80
        small = Box.square(2)
        iso = topo.isolated_in_window("tauB", small)
        assert len(iso) == 15 and all(p[0] <= 0 for p in iso)
        assert sorted(topo.isolated_in_window("tauBd", small)) == sorted((j, i) for i, j in iso)


def test_criterion_10_shift_continuity(suite, criterion):
    with criterion(10, "shift continuity up to 6 with schema n(k)=k and discontinuity certificates"):
        r = _passed(suite, "shifts")
        assert r.params == {"K": 6, "grid": 2}
        assert r.details["continuous_cases"] == 6 * 25 * 25
        assert "tauB LEFT g=(0,1) p=(1,1) k*=1" in r.witness
        assert "tauBd RIGHT g=(1,0) p=(1,1) k*=1" in r.witness


def test_criterion_11_no_finite_subcover(suite, criterion):
    with criterion(11, "50 random finite subfamilies each miss an exhibited point"):
        r = _passed(suite, "subcover")
        assert r.details["index_sets"] == 50
        assert "misses" in r.witness


def test_criterion_12_density(suite, criterion):
    with criterion(12, "every tauB neighborhood of [-4,4]^2 meets IZ"):
        r = _passed(suite, "density")
        assert r.params["window"] == 4
        assert all(topo.forall_n_meets("tauB", p, IZ) for p in Box.square(4).points())


def test_criterion_13_conjugation_maps(suite, criterion):
    with criterion(13, "k-shift identity and round trips on down-set windows of size 12"):
        r = _passed(suite, "lemma-3-5")
        assert r.params == {"coord_max": 3, "window": 12}


def test_criterion_14_determinism_and_mutation(suite, criterion, tmp_path, capsys):
    with criterion(14, "check all exits 0, golden JSON identical for --jobs 1/8, mutation caught"):
        serial = json.dumps(report_document(suite[1], 0xC2, timing=False), indent=2) + "\n"
        out = tmp_path / "jobs8.json"
        assert cli.main(["check", "all", "--jobs", "8", "--no-timing", "--json", str(out)]) == 0
        capsys.readouterr()
        golden = GOLDEN.read_bytes()
        assert out.read_bytes() == golden
        assert serial.encode() == golden
        mutated = run_all(SuiteConfig(mutate=True, only=["axioms", "order"]))
        fails = [r for r in mutated if r.verdict != PASS]
        assert fails
        for r in fails:
            assert replay_witness(r.witness, corrupted_multiply)
            assert not replay_witness(r.witness)
