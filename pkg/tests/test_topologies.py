import pytest
from hypothesis import given, settings, strategies as st

from czlab import topologies as topo
from czlab.core import down_set, invert, up_set
from czlab.regions import Box, Cell, IntervalZ, Region
from czlab.topologies import FAMILIES, Side, shift_continuity

from oracles import mul, window

IZ = Region.of(Cell(ix=IntervalZ.at_most(0)))
GRID4 = window(4)
pts = st.tuples(st.integers(-4, 4), st.integers(-4, 4))
fams = st.sampled_from(sorted(FAMILIES))


def wedge(i, j):
    """Union of up_set((i + k, j)) for k >= 0."""
    return Region.of(Cell(iy=IntervalZ.at_most(j), id=IntervalZ.at_least(i - j)))


def test_closed_forms_of_bases():
    t1, t2, tb, tbd = (FAMILIES[n] for n in ("tau1", "tau2", "tauB", "tauBd"))
    assert t1.basic((0, 0), 3) == Region.singleton((0, 0)) | Region.of(
        Cell(IntervalZ.at_least(3), IntervalZ.at_least(3)))
    assert t2.basic((0, 0), 1) == Region.singleton((0, 0)) | down_set((2, 2))
    assert tb.basic((1, 0), 2) == Region.singleton((1, 0)) | Region.of(
        Cell(iy=IntervalZ.at_most(0), id=IntervalZ.at_least(3)))
    assert tb.basic((0, 3), 4) == Region.singleton((0, 3))
    assert tbd.basic((3, 1), 2) == tb.basic((1, 3), 2).inverted()


def test_unknown_family():
    with pytest.raises(ValueError):
        topo.get_family("tau3")


def test_is_isolated_examples():
    assert topo.is_isolated("tauB", (0, 5), cross_check=True)
    assert not topo.is_isolated("tauB", (1, 5), cross_check=True)
    assert not any(topo.is_isolated("tau1", p) for p in window(5))
    assert not any(topo.is_isolated("tau2", p) for p in window(5))


def test_isolated_in_window_counts():
    box = Box.square(2)
    iso = topo.isolated_in_window("tauB", box)
    assert len(iso) == 15
    assert set(iso) == {(i, j) for i in range(-2, 1) for j in range(-2, 3)}
    dual = topo.isolated_in_window("tauBd", box)
    assert set(dual) == {(j, i) for i, j in iso}
    assert topo.isolated_in_window("tau1", Box.square(5)) == []


def test_exists_n_subset_examples():
    s = Region.singleton((0, 0)) | Region.of(Cell(IntervalZ.at_least(4), IntervalZ.at_least(4)))
    assert topo.exists_n_subset("tau1", (0, 0), s) == 4
    assert topo.exists_n_subset("tau1", (0, 0), Region.singleton((9, 9)).complement()) == 10
    assert topo.exists_n_subset("tau2", (0, 0), down_set((0, 0))) == 1
    assert topo.exists_n_subset("tau1", (0, 0), up_set((0, 0))) is None
    assert topo.exists_n_subset("tauB", (0, 0), Region.singleton((0, 0))) == 1
    assert topo.exists_n_subset("tauB", (1, 0), Region.singleton((1, 0))) is None


def test_exists_n_subset_by_windowed_containment():
    s = Region.singleton((0, 0)) | Region.of(Cell(IntervalZ.at_least(4), IntervalZ.at_least(4)))
    box = Box.square(30)
    fam = FAMILIES["tau1"]
    inside = [n for n in range(1, 10) if set(fam.basic((0, 0), n).enumerate(box)) <= set(s.enumerate(box))]
    assert min(inside) == 4


def test_forall_n_meets_examples():
    assert topo.forall_n_meets("tauB", (1, 0), IZ)
    assert not topo.forall_n_meets("tau1", (0, 0), Region.singleton((5, 5)))
    for name in FAMILIES:
        assert topo.forall_n_meets(name, (2, -1), up_set((2, -1)))


def test_separates_examples():
    assert topo.separates("tau1", (0, 0), (4, 4)) == 5
    assert topo.separates("tauB", (0, 7), (3, 3)) == 1
    assert topo.separates("tau2", (0, 0), (2, 2)) == 2
    with pytest.raises(ValueError):
        topo.separates("tau1", (1, 1), (1, 1))


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_monotone_and_contains_center(name):
    fam = FAMILIES[name]
    for p in GRID4:
        prev = None
        for n in range(1, 7):
            b = fam.basic(p, n)
            assert b.member(p)
            if prev is not None:
                assert b.is_subset(prev)
            prev = b


def test_tau_b_base_identity_and_subbase():
    fam = FAMILIES["tauB"]
    for p in [(i, j) for i in range(1, 4) for j in range(-3, 4)]:
        i, j = p
        for n in range(1, 6):
            closed = fam.basic(p, n)
            rays = Region.singleton(p)
            for s in range(n, n + 6):
                rays = rays | up_set((i + s, j))
            far = Region.of(Cell(iy=IntervalZ.at_most(j), id=IntervalZ.at_least(i - j + n + 6)))
            assert closed == rays | far
            sub = wedge(i, j) & up_set((i - 1, j - 1)).complement()
            for s in range(1, n):
                sub = sub & up_set((i + s, j)).complement()
            assert closed == sub


def test_duality():
    for p in GRID4:
        for n in range(1, 4):
            assert FAMILIES["tauBd"].basic(p, n) == FAMILIES["tauB"].basic(invert(p), n).inverted()


def test_t1_separation_witness_minimal():
    pts_ = window(3)
    for name, fam in FAMILIES.items():
        for p in pts_:
            for q in pts_:
                if p == q:
                    continue
                n = topo.separates(name, p, q)
                assert n is not None
                assert not fam.basic(p, n).member(q)
                assert n == 1 or fam.basic(p, n - 1).member(q)


def test_density_of_iz():
    assert all(topo.forall_n_meets("tauB", p, IZ) for p in GRID4)


@settings(max_examples=200, deadline=None)
@given(fams, pts, st.lists(pts, max_size=4), st.integers(-3, 3))
def test_queries_against_windowed_neighborhoods(name, p, extra, m):
    # S = {p} plus a few points plus a quadrant; compare with explicit bases
    fam = FAMILIES[name]
    s = Region.points([p] + extra) | Region.of(Cell(IntervalZ.at_least(m), IntervalZ.at_least(m)))
    n = topo.exists_n_subset(name, p, s)
    if n is not None:
        assert fam.basic(p, n).is_subset(s)
        assert n == 1 or not fam.basic(p, n - 1).is_subset(s)
    else:
        assert not any(fam.basic(p, k).is_subset(s) for k in range(1, 40))
    meets = topo.forall_n_meets(name, p, s - Region.singleton(p))
    hits = [not (fam.basic(p, k) & s - Region.singleton(p)).is_empty() for k in range(1, 40)]
    if meets:
        assert all(hits)
    else:
        assert not hits[-1]


# --- shift continuity ------------------------------------------------------------


def test_left_shift_discontinuity_certificate():
    v = shift_continuity("tauB", Side.LEFT, (0, 1), (1, 1), 1)
    assert v.discontinuous and v.witness_level == 1
    assert v.q == (0, 1)
    assert topo.forall_n_meets("tauB", (1, 1), v.witness_region)
    # independent replay: (1 + n, 1) lies in every U_n(1,1) and maps off the target
    for n in range(1, 30):
        assert FAMILIES["tauB"].basic((1, 1), n).member((1 + n, 1))
        assert mul((0, 1), (1 + n, 1)) == (n, 1) != (0, 1)
    assert "Discontinuous(k*=1)" in str(v)


def test_right_shift_continuous_with_uniform_schema():
    v = shift_continuity("tauB", "RIGHT", (2, 0), (1, 1), 8)
    assert v.continuous
    assert v.levels == tuple(range(1, 9))
    assert topo.schema_holds("tauB", Side.RIGHT, (2, 0), (1, 1), 8)
    assert str(v).endswith("Continuous-up-to(8) with " + ", ".join(f"n({k})={k}" for k in range(1, 9)))


def test_tau1_left_shift_continuous():
    v = shift_continuity("tau1", Side.LEFT, (0, 0), (0, 0), 8)
    assert v.continuous and len(v.levels) == 8


def test_dual_right_shift_discontinuous():
    v = shift_continuity("tauBd", Side.RIGHT, (1, 0), (1, 1), 2)
    assert v.discontinuous and v.witness_level == 1


def test_shift_continuity_rejects_bad_bound():
    with pytest.raises(ValueError):
        shift_continuity("tau1", Side.LEFT, (0, 0), (0, 0), 0)
    with pytest.raises(ValueError):
        Side.parse("UP")


@settings(max_examples=60, deadline=None)
@given(fams, st.sampled_from([Side.LEFT, Side.RIGHT]), pts, pts)
def test_continuous_levels_are_sound(name, side, g, p):
    fam = FAMILIES[name]
    v = shift_continuity(name, side, g, p, 3)
    assert v.kind != "unresolved"
    if v.continuous:
        for k, n in enumerate(v.levels, 1):
            image = topo.shift_image(side, g, fam.basic(p, n))
            assert image.is_subset(fam.basic(v.q, k))
            if n > 1:
                image = topo.shift_image(side, g, fam.basic(p, n - 1))
                assert not image.is_subset(fam.basic(v.q, k))
    else:
        k = v.witness_level
        target = fam.basic(v.q, k)
        for n in range(1, 12):
            assert not topo.shift_image(side, g, fam.basic(p, n)).is_subset(target)
