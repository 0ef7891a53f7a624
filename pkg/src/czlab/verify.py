"""Named checks of concrete claims about Z x Z and its three topologies.

Each check is a pure function of its keyword parameters (and seed) that
returns a :class:`CheckReport`.  Set-level claims are decided symbolically
through :mod:`czlab.regions`; wherever a finite oracle makes sense the
symbolic answer is also compared with brute-force enumeration.
"""

from __future__ import annotations

import random
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Any, Callable

import numpy as np

from . import topologies as topo
from .core import (
    conjugate_map,
    down_set,
    invert,
    leq,
    multiply,
    solve_left,
    solve_right,
    solve_two_sided,
    up_set,
)
from .element import Element
from .regions import (
    Box,
    Cell,
    DiffWithinYLe,
    IntervalZ,
    Region,
    ResourceCapError,
)
from .topologies import FAMILIES, Side

PASS, FAIL, UNRESOLVED = "PASS", "FAIL", "UNRESOLVED"
DEFAULT_SEED = 0xC2
MAX_AXIOM_WINDOW = 12  # (2W+1)^6 triples; W=12 is ~2.4e8 already


@dataclass
class CheckReport:
    check_id: str
    params: dict
    verdict: str
    witness: str | None = None
    elapsed_ms: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_json(self, timing: bool = True) -> dict:
        return {
            "check_id": self.check_id,
            "params": self.params,
            "verdict": self.verdict,
            "witness": self.witness,
            "elapsed_ms": round(self.elapsed_ms, 3) if timing else 0,
        }

    def line(self) -> str:
        tail = f"  witness: {self.witness}" if self.witness else ""
        return f"{self.verdict:<10} {self.check_id:<10} ({self.elapsed_ms:.0f} ms){tail}"


class _Fail(Exception):
    def __init__(self, witness: str):
        super().__init__(witness)
        self.witness = witness


def _require(ok: bool, witness: str) -> None:
    if not ok:
        raise _Fail(witness)


def _e(p) -> str:
    return f"({p[0]},{p[1]})"


def corrupted_multiply(a, b) -> Element:
    """Multiplication whose branch boundary is off by one, for harness self-tests.

    Swapping the branches outright gives the (still associative) dual
    product, so the mutation moves the boundary instead.
    """
    i1, j1 = a
    i2, j2 = b
    if j1 <= i2 + 1:
        return Element(i1 - j1 + i2, j2)
    return Element(i1, j1 - i2 + j2)


def _branch_multiply(ax, ay, bx, by):
    """Vectorised two-branch product, the brute-force oracle's own copy."""
    low = ay <= bx
    return np.where(low, ax - ay + bx, ax), np.where(low, by, ay - bx + by)


# --- registry ---------------------------------------------------------------

CHECKS: dict[str, tuple[Callable[..., dict | None], dict]] = {}


def check(check_id: str, **defaults):
    """Register a check body.

    The body raises ``_Fail(witness)`` on a counterexample and may return a
    dict with ``details`` and an optional PASS-side ``witness``.
    """

    def deco(fn):
        CHECKS[check_id] = (fn, defaults)
        fn.check_id = check_id
        return fn

    return deco


def run_check(check_id: str, params: dict | None = None, seed: int = DEFAULT_SEED,
              mutate: bool = False) -> CheckReport:
    if check_id not in CHECKS:
        raise KeyError(f"unknown check {check_id!r}; known: {', '.join(CHECKS)}")
    fn, defaults = CHECKS[check_id]
    unknown = set(params or {}) - set(defaults)
    if unknown:
        raise ValueError(f"check {check_id!r} has no parameter(s) {sorted(unknown)}")
    eff = dict(defaults)
    eff.update(params or {})
    if "seed" in eff:
        eff["seed"] = (params or {}).get("seed", seed)
    call = dict(eff)
    if mutate and "mul" in _accepts(fn):
        call["mul"] = corrupted_multiply
        eff = {**eff, "mutate": True}
    t0 = time.perf_counter()
    try:
        out = fn(**call) or {}
        verdict, witness, details = out.get("verdict", PASS), out.get("witness"), out.get("details", {})
    except _Fail as exc:
        verdict, witness, details = FAIL, exc.witness, {}
    except ResourceCapError:
        raise
    except Exception as exc:  # noqa: BLE001 - surfaced as a FAIL report
        verdict, witness, details = FAIL, f"error: {type(exc).__name__}: {exc}", {}
    elapsed = (time.perf_counter() - t0) * 1000.0
    return CheckReport(check_id, eff, verdict, witness, elapsed, details)


def _accepts(fn) -> set[str]:
    import inspect

    return set(inspect.signature(fn).parameters)


# --- algebra ----------------------------------------------------------------


@check("axioms", window=6)
def check_semigroup_axioms(window: int = 6, mul=multiply):
    """Associativity, ties, inverse laws, anti-isomorphism, difference additivity."""
    if window > MAX_AXIOM_WINDOW:
        raise ResourceCapError(f"axiom window {window} exceeds cap {MAX_AXIOM_WINDOW}")
    elems = list(Box.square(window).points())
    n = len(elems)

    # associativity over all triples through product tables
    ab_vals: dict[Element, int] = {}
    ab_idx = np.empty((n, n), dtype=np.int64)
    for ia, a in enumerate(elems):
        for ib, b in enumerate(elems):
            ab_idx[ia, ib] = ab_vals.setdefault(mul(a, b), len(ab_vals))
    bc_idx = ab_idx  # same table: b*c for b, c in the window
    ab_list = list(ab_vals)
    lhs_x = np.empty((len(ab_list), n), dtype=np.int64)
    lhs_y = np.empty_like(lhs_x)
    for iv, v in enumerate(ab_list):
        for ic, c in enumerate(elems):
            lhs_x[iv, ic], lhs_y[iv, ic] = mul(v, c)
    rhs_x = np.empty((n, len(ab_list)), dtype=np.int64)
    rhs_y = np.empty_like(rhs_x)
    for ia, a in enumerate(elems):
        for iv, v in enumerate(ab_list):
            rhs_x[ia, iv], rhs_y[ia, iv] = mul(a, v)
    diffs = np.array([a[0] - a[1] for a in elems], dtype=np.int64)
    for ia, a in enumerate(elems):
        left_x = lhs_x[ab_idx[ia, :], :]  # [b, c] -> ((a*b)*c).x
        left_y = lhs_y[ab_idx[ia, :], :]
        right_x = rhs_x[ia, bc_idx]  # [b, c] -> (a*(b*c)).x
        right_y = rhs_y[ia, bc_idx]
        bad = (left_x != right_x) | (left_y != right_y)
        if bad.any():
            ib, ic = map(int, np.argwhere(bad)[0])
            raise _Fail(f"associativity {_e(a)} {_e(elems[ib])} {_e(elems[ic])}")
        want = diffs[ia] + diffs[:, None] + diffs[None, :]
        bad = (left_x - left_y) != want
        if bad.any():
            ib, ic = map(int, np.argwhere(bad)[0])
            raise _Fail(f"difference {_e(a)} {_e(elems[ib])} {_e(elems[ic])}")
    for a in elems:
        inv = invert(a)
        _require(mul(mul(a, inv), a) == a, f"inverse {_e(a)}")
        _require(mul(mul(inv, a), inv) == inv, f"inverse {_e(a)}")
    for a in elems:
        for b in elems:
            ab = mul(a, b)
            if a[1] == b[0]:
                low = (a[0] - a[1] + b[0], b[1])
                high = (a[0], a[1] - b[0] + b[1])
                _require(low == high == tuple(ab), f"tie {_e(a)} {_e(b)}")
            _require(invert(ab) == mul(invert(b), invert(a)), f"anti-isomorphism {_e(a)} {_e(b)}")

    return {"details": {"elements": n, "triples": n**3}}


@check("order", window=5, filter_window=10)
def check_order_characterization(window: int = 5, filter_window: int = 10, mul=multiply):
    """Three equivalent order conditions, the idempotent-witness oracle, and the order sets."""
    elems = list(Box.square(window).points())
    for a in elems:
        for b in elems:
            c1 = leq(a, b)
            c2 = a[0] >= b[0] and a[0] - a[1] == b[0] - b[1]
            c3 = a[1] >= b[1] and a[0] - a[1] == b[0] - b[1]
            bound = abs(a[0]) + abs(a[1]) + abs(b[0]) + abs(b[1])
            brute = any(mul(b, (k, k)) == a for k in range(-bound, bound + 1))
            _require(c1 == c2 == c3 == brute, f"order {_e(a)} {_e(b)}")
    box = Box.square(filter_window)
    xs, ys = box.grid()
    pts = list(zip(xs.tolist(), ys.tolist()))
    for a in box.points():
        up = up_set(a).mask(xs, ys)
        down = down_set(a).mask(xs, ys)
        for k, p in enumerate(pts):
            if up[k] != leq(a, p) or down[k] != leq(p, a):
                raise _Fail(f"order-set {_e(a)} {_e(p)}")
    return {"details": {"pairs": len(elems) ** 2, "filter_centers": box.size}}


def replay_witness(witness: str, mul=multiply) -> bool:
    """Re-evaluate an ``axioms``/``order`` witness; True if the violation recurs."""
    law = witness.split()[0]
    pts = [Element(int(x), int(y)) for x, y in re.findall(r"\((-?\d+),(-?\d+)\)", witness)]
    if law == "associativity":
        a, b, c = pts
        return mul(mul(a, b), c) != mul(a, mul(b, c))
    if law == "difference":
        a, b, c = pts
        p = mul(mul(a, b), c)
        return p.diff != a.diff + b.diff + c.diff
    if law == "inverse":
        (a,) = pts
        inv = invert(a)
        return mul(mul(a, inv), a) != a or mul(mul(inv, a), inv) != inv
    if law == "tie":
        a, b = pts
        return tuple(mul(a, b)) != (a[0] - a[1] + b[0], b[1])
    if law == "anti-isomorphism":
        a, b = pts
        return invert(mul(a, b)) != mul(invert(b), invert(a))
    if law == "order":
        a, b = pts
        bound = abs(a[0]) + abs(a[1]) + abs(b[0]) + abs(b[1])
        brute = any(mul(b, (k, k)) == a for k in range(-bound, bound + 1))
        return brute != leq(a, b)
    raise ValueError(f"no replay rule for witness {witness!r}")


# --- continuity inclusions ---------------------------------------------------


def _inclusion(lhs: Region, rhs: Region, label: str) -> None:
    if not lhs.is_subset(rhs):
        pt = (lhs - rhs).sample_point()
        raise _Fail(f"{label}: point {_e(pt)}")


def _grid(c: int):
    return list(Box.square(c).points())


@check("tau1-cont", n_max=3, coord_max=3)
def check_continuity_inclusions_tau1(n_max: int = 3, coord_max: int = 3):
    fam = FAMILIES["tau1"]
    centers = _grid(coord_max)
    count = 0
    for n in range(1, n_max + 1):
        for a in centers:
            _inclusion(fam.basic(a, n).inverted(), fam.basic(invert(a), n), f"inverse n={n} a={_e(a)}")
            for b in centers:
                m = 2 * n + abs(a[0]) + abs(a[1]) + abs(b[0]) + abs(b[1])
                lhs = fam.basic(a, m).product(fam.basic(b, m))
                _inclusion(lhs, fam.basic(multiply(a, b), n), f"product n={n} m={m} a={_e(a)} b={_e(b)}")
                count += 1
    return {"details": {"product_inclusions": count}}


@check("tau2-cont", n_max=3, coord_max=3)
def check_continuity_inclusions_tau2(n_max: int = 3, coord_max: int = 3):
    fam = FAMILIES["tau2"]
    centers = _grid(coord_max)
    count = 0
    for n in range(1, n_max + 1):
        for a in centers:
            _inclusion(fam.basic(a, n).inverted(), fam.basic(invert(a), n), f"inverse n={n} a={_e(a)}")
            for b in centers:
                m = max(1, 2 * n + abs(a[1]) + abs(b[0]))
                lhs = fam.basic(a, m).product(fam.basic(b, m))
                _inclusion(lhs, fam.basic(multiply(a, b), n), f"product n={n} m={m} a={_e(a)} b={_e(b)}")
                count += 1
    return {"details": {"product_inclusions": count}}


@check("lemma-2-7", coord_max=5, random_cases=100, random_bound=50, seed=DEFAULT_SEED)
def check_up_set_translates(coord_max: int = 5, random_cases: int = 100, random_bound: int = 50,
                    seed: int = DEFAULT_SEED):
    """Translates of up-sets stay inside the up-set of the translated point."""
    rng = random.Random(f"{seed}:lemma-2-7")
    span = range(-coord_max, coord_max + 1)
    tuples = list(cartesian(span, repeat=4))
    tuples += [
        tuple(rng.randint(-random_bound, random_bound) for _ in range(4))
        for _ in range(random_cases)
    ]
    for i, j, k, l in tuples:
        target = up_set(multiply((i, j), (k, l)))
        _inclusion(up_set((i, j)).translate_right((k, l)), target, f"right ({i},{j}) ({k},{l})")
        _inclusion(up_set((k, l)).translate_left((i, j)), target, f"left ({i},{j}) ({k},{l})")
    return {"details": {"tuples": len(tuples)}}


@check("prop-2-9", p_max=3, coord_max=3)
def check_wedge_right_translates(p_max: int = 3, coord_max: int = 3):
    """Right translates of the wedge neighborhoods of tauB."""
    fam = FAMILIES["tauB"]
    shifts = _grid(coord_max)
    centers = [Element(i, j) for i in range(1, coord_max + 1) for j in range(-coord_max, coord_max + 1)]
    checked = subcases = subcase_holds = 0
    for p in range(1, p_max + 1):
        for c in centers:
            for g in shifts:
                q = multiply(c, g)
                image = fam.basic(c, p).translate_right(g)
                if fam.is_isolated(q):
                    subcases += 1
                    subcase_holds += image == Region.singleton(q)
                    continue
                _inclusion(image, fam.basic(q, p), f"p={p} center={_e(c)} shift={_e(g)}")
                checked += 1
    return {"details": {"inclusions": checked, "isolated_target_subcases": subcases,
                        "isolated_target_subcases_holding": subcase_holds}}


@check("subcover", index_set="", trials=50, max_size=20, bound=30, seed=DEFAULT_SEED)
def check_no_finite_subcover(index_set="", trials: int = 50, max_size: int = 20,
                             bound: int = 30, seed: int = DEFAULT_SEED):
    """A finite subfamily of ``{complement of up_set((i, i))}`` never covers Z x Z.

    ``index_set`` is a comma-separated string or a collection of integers;
    when empty, ``trials`` random sets are drawn from the seed.
    """
    if isinstance(index_set, str):
        index_set = [int(v) for v in index_set.split(",") if v.strip()]
    if index_set:
        families = [sorted(set(index_set))]
    else:
        rng = random.Random(f"{seed}:subcover")
        families = [
            sorted(rng.sample(range(-bound, bound + 1), rng.randint(1, max_size)))
            for _ in range(trials)
        ]
    witnesses = []
    for fset in families:
        covered = Region.empty()
        for i in fset:
            covered = covered | up_set((i, i)).complement()
        uncovered = covered.complement()
        m = min(fset)
        _require(uncovered == up_set((m, m)), f"F={fset}: uncovered part is {uncovered}")
        w = Element(m, m)
        _require(not covered.member(w) and not uncovered.is_empty(), f"F={fset}")
        witnesses.append(w)
    first = families[0]
    return {"witness": f"F={{{','.join(map(str, first))}}} misses {_e(witnesses[0])}",
            "details": {"index_sets": len(families)}}


# --- equations and isolated points -------------------------------------------


@check("lemma-3-1", coord_max=3, brute=12)
def check_equation_solutions(coord_max: int = 3, brute: int = 12):
    box = Box.square(brute)
    xs, ys = box.grid()
    span = range(-coord_max, coord_max + 1)
    count = 0
    for i0, i1, j1, j0 in cartesian(span, repeat=4):
        l, r, t = (i0, i1), (j1, j0), (i0, j0)
        tag = f"i0={i0} i1={i1} j1={j1} j0={j0}"
        cases = (
            ("two-sided", solve_two_sided(l, r, t), up_set((i1, j1)),
             _branch_multiply(*_branch_multiply(i0, i1, xs, ys), j1, j0)),
            ("right", solve_right(r, t), up_set((i0, j1)), _branch_multiply(xs, ys, j1, j0)),
            ("left", solve_left(l, t), up_set((i1, j0)), _branch_multiply(i0, i1, xs, ys)),
        )
        for name, sol, expected, (px, py) in cases:
            _require(sol == expected, f"{name} {tag}: symbolic {sol}")
            brute_mask = (px == t[0]) & (py == t[1])
            bad = brute_mask != sol.mask(xs, ys)
            if bad.any():
                k = int(np.argwhere(bad)[0][0])
                raise _Fail(f"{name} {tag}: brute disagrees at ({xs[k]},{ys[k]})")
            count += 1
    return {"details": {"equations": count, "brute_window": str(box)}}


@check("prop-3-1", coord_max=3, k_max=4)
def check_preimage_identities(coord_max: int = 3, k_max: int = 4):
    for i0, j0 in _grid(coord_max):
        pre = Region.singleton((i0, j0)).preimage_right((j0, j0))
        _require(pre == up_set((i0, j0)), f"preimage ({i0},{j0})")
        for k in range(k_max + 1):
            head = Region.points((i0 - r, j0 - r) for r in range(k))
            rest = up_set((i0, j0)) - (up_set((i0 - k - 1, j0 - k - 1)) | head)
            _require(rest == Region.singleton((i0 - k, j0 - k)), f"extraction ({i0},{j0}) k={k}")
            _require(multiply((i0 - k, j0), (j0, j0 - k)) == (i0 - k, j0 - k),
                     f"factorisation ({i0},{j0}) k={k}")
            pre_k = Region.singleton((i0 - k, j0 - k)).preimage_right((j0, j0 - k))
            _require(pre_k == up_set((i0 - k, j0)), f"second preimage ({i0},{j0}) k={k}")
    return {}


@check("isolated", window=5, t1_window=4)
def check_isolated_profiles(window: int = 5, t1_window: int = 4):
    box = Box.square(window)
    expected = {
        "tau1": lambda p: False,
        "tau2": lambda p: False,
        "tauB": lambda p: p[0] <= 0,
        "tauBd": lambda p: p[1] <= 0,
    }
    counts = {}
    for name, rule in expected.items():
        found = 0
        for p in box.points():
            iso = topo.is_isolated(name, p, cross_check=True)
            _require(iso == rule(p), f"{name} {_e(p)}")
            found += iso
        counts[name] = found
    pairs = _t1_separation(t1_window)
    return {"details": {
        "isolated_counts": counts,
        "t1_ordered_pairs": pairs,
        "reading": "tau1 and tau2 are shift-continuous, non-discrete and have no isolated "
                   "point; tauB has isolated points and is non-discrete, so it cannot be "
                   "two-sided shift-continuous (see the shifts check)",
    }}


def _t1_separation(window: int) -> int:
    """Every ordered pair of distinct points is separated at a minimal index."""
    pts = list(Box.square(window).points())
    for name, fam in FAMILIES.items():
        for p in pts:
            for q in pts:
                if p == q:
                    continue
                n = topo.separates(fam, p, q)
                _require(n is not None, f"{name} {_e(p)} {_e(q)}: no separating index")
                _require(not fam.basic(p, n).member(q), f"{name} {_e(p)} {_e(q)}: n={n} fails")
                _require(n == fam.min_index or fam.basic(p, n - 1).member(q),
                         f"{name} {_e(p)} {_e(q)}: n={n} not minimal")
    return len(pts) * (len(pts) - 1)


@check("shifts", K=6, grid=2)
def check_shift_witnesses(K: int = 6, grid: int = 2):
    pts = _grid(grid)
    continuous = [("tauB", Side.RIGHT), ("tauBd", Side.LEFT),
                  ("tau1", Side.LEFT), ("tau1", Side.RIGHT),
                  ("tau2", Side.LEFT), ("tau2", Side.RIGHT)]
    schema = {("tauB", Side.RIGHT), ("tauBd", Side.LEFT)}
    count = 0
    for name, side in continuous:
        for g in pts:
            for p in pts:
                v = topo.shift_continuity(name, side, g, p, K)
                _require(v.continuous, f"{name} {side.value} g={_e(g)} p={_e(p)}: {v.kind}")
                if (name, side) in schema:
                    _require(topo.schema_holds(name, side, g, p, K),
                             f"{name} {side.value} g={_e(g)} p={_e(p)}: schema n(k)=k fails")
                count += 1
    certs = []
    for name, side, g, p in (("tauB", Side.LEFT, (0, 1), (1, 1)),
                             ("tauBd", Side.RIGHT, (1, 0), (1, 1))):
        v = topo.shift_continuity(name, side, g, p, 2)
        _require(v.discontinuous and v.witness_level == 1,
                 f"{name} {side.value} g={_e(g)} p={_e(p)}: {v.kind}")
        _require(topo.forall_n_meets(name, p, v.witness_region),
                 f"{name} {side.value}: certificate does not replay")
        certs.append(f"{name} {side.value} g={_e(g)} p={_e(p)} k*={v.witness_level}")
    return {"witness": "; ".join(certs), "details": {"continuous_cases": count}}


IZ = Region.of(Cell(ix=IntervalZ.at_most(0)))


@check("density", window=4)
def check_density_and_quasiregularity(window: int = 4):
    for p in Box.square(window).points():
        _require(topo.forall_n_meets("tauB", p, IZ), f"tauB {_e(p)}: a neighborhood misses IZ")
    return {}


@check("lemma-3-5", coord_max=3, window=12)
def check_conjugation_maps(coord_max: int = 3, window: int = 12):
    span = range(-coord_max, coord_max + 1)
    for i, j, m, n in cartesian(span, repeat=4):
        target = down_set((i, j))
        for k in range(window + 1):
            a = (m + k, n + k)
            fa = conjugate_map(i, j, m, n, a)
            _require(fa == (i + k, j + k), f"shift ({i},{j},{m},{n}) k={k}")
            _require(target.member(fa), f"into ({i},{j},{m},{n}) k={k}")
            _require(conjugate_map(m, n, i, j, fa) == a, f"round-trip ({i},{j},{m},{n}) k={k}")
    return {}


# --- region engine self-check --------------------------------------------------


def random_cell(rng: random.Random, span: int = 5, p_bound: float = 0.8) -> Cell:
    def iv(p):
        if rng.random() > p:
            return None
        a = rng.choice([None] + list(range(-span, span + 1)))
        b = rng.choice([None] + list(range(-span, span + 1)))
        if a is not None and b is not None and a > b and rng.random() < 0.8:
            a, b = b, a
        return (a, b)

    return Cell.make(x=iv(p_bound), y=iv(p_bound), d=iv(p_bound * 0.75))


def random_region(rng: random.Random, max_cells: int = 3, span: int = 5) -> Region:
    return Region(random_cell(rng, span) for _ in range(rng.randint(0, max_cells)))


@check("regions", cases=1000, seed=DEFAULT_SEED)
def check_region_algebra(cases: int = 1000, seed: int = DEFAULT_SEED):
    """Random region identities against windowed enumeration.

    Every random constant lies in [-5, 5], so tight bounds lie in [-10, 10]
    and a nonempty region meets [-10, 10]^2.  The operand window [-15, 15]^2
    holds all product factors needed to witness output points in [-3, 3]^2.
    """
    rng = random.Random(f"{seed}:regions")
    view = Box.square(10)
    xs, ys = view.grid()
    op_box = Box.square(15)
    oxs, oys = op_box.grid()
    near = Box.square(3)
    for case in range(cases):
        a, b = random_region(rng), random_region(rng)
        g = (rng.randint(-6, 6), rng.randint(-6, 6))
        tag = f"case {case}: A={a} B={b} g={_e(g)}"
        ma, mb = a.mask(xs, ys), b.mask(xs, ys)
        _require(((a | b).mask(xs, ys) == (ma | mb)).all(), f"union {tag}")
        _require(((a & b).mask(xs, ys) == (ma & mb)).all(), f"intersection {tag}")
        _require(((~a).mask(xs, ys) == ~ma).all(), f"complement {tag}")
        _require(((a - b).mask(xs, ys) == (ma & ~mb)).all(), f"difference {tag}")
        _require((~(a | b)) == (~a & ~b), f"de Morgan {tag}")
        _require(~~a == a, f"double complement {tag}")
        _require(a.is_subset(b) == (a & ~b).is_empty(), f"subset {tag}")
        _require(a.is_empty() == (not ma.any()), f"emptiness {tag}")
        px, py = _branch_multiply(xs, ys, g[0], g[1])
        _require((a.preimage_right(g).mask(xs, ys) == a.mask(px, py)).all(), f"preimage_right {tag}")
        px, py = _branch_multiply(g[0], g[1], xs, ys)
        _require((a.preimage_left(g).mask(xs, ys) == a.mask(px, py)).all(), f"preimage_left {tag}")
        _require(a.translate_right(g).is_subset(b) == a.is_subset(b.preimage_right(g)),
                 f"right adjunction {tag}")
        _require(a.translate_left(g).is_subset(b) == a.is_subset(b.preimage_left(g)),
                 f"left adjunction {tag}")
        if case % 4 == 0:
            _check_images(a, b, g, op_box, oxs, oys, near, tag)
    return {"details": {"cases": cases}}


def _check_images(a, b, g, op_box, oxs, oys, near, tag):
    ina = a.mask(oxs, oys)
    inb = b.mask(oxs, oys)
    ax, ay = oxs[ina], oys[ina]
    bx, by = oxs[inb], oys[inb]
    for label, image, (px, py) in (
        ("translate_right", a.translate_right(g), _branch_multiply(ax, ay, g[0], g[1])),
        ("translate_left", a.translate_left(g), _branch_multiply(g[0], g[1], ax, ay)),
    ):
        _require(image.mask(px, py).all(), f"{label} soundness {tag}")
        got = {(int(x), int(y)) for x, y in zip(px, py)}
        for p in near.points():
            _require(image.member(p) == (p in got), f"{label} exactness {tag} at {_e(p)}")
    prod = a.product(b)
    if len(ax) * len(bx) <= 400_000:
        px, py = _branch_multiply(ax[:, None], ay[:, None], bx[None, :], by[None, :])
        _require(prod.mask(px.ravel(), py.ravel()).all(), f"product soundness {tag}")
        got = set(zip(px.ravel().tolist(), py.ravel().tolist()))
        for p in near.points():
            _require(prod.member(p) == (p in got), f"product exactness {tag} at {_e(p)}")
    finite = [Element(int(x), int(y)) for x, y in zip(ax[:6], ay[:6])]
    left = Region.points(finite).product(b)
    union = Region.empty()
    for p in finite:
        union = union | b.translate_left(p)
    _require(left == union, f"finite product {tag}")


# --- suite runner ---------------------------------------------------------------


@dataclass
class SuiteConfig:
    seed: int = DEFAULT_SEED
    jobs: int = 1
    mutate: bool = False
    params: dict[str, dict[str, Any]] = field(default_factory=dict)
    only: list[str] | None = None


def _run_job(args) -> CheckReport:
    check_id, params, seed, mutate = args
    try:
        return run_check(check_id, params, seed=seed, mutate=mutate)
    except ResourceCapError as exc:
        return CheckReport(check_id, dict(params), FAIL, f"resource cap: {exc}")


def run_all(config: SuiteConfig | None = None) -> list[CheckReport]:
    config = config or SuiteConfig()
    ids = config.only or list(CHECKS)
    jobs = [(cid, config.params.get(cid, {}), config.seed, config.mutate) for cid in ids]
    if config.jobs <= 1:
        reports = [_run_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            reports = list(pool.map(_run_job, jobs))
    order = {cid: k for k, cid in enumerate(CHECKS)}
    return sorted(reports, key=lambda r: order[r.check_id])


def summarize(reports: list[CheckReport]) -> dict[str, int]:
    out = {PASS: 0, FAIL: 0, UNRESOLVED: 0}
    for r in reports:
        out[r.verdict] += 1
    return out


def report_document(reports: list[CheckReport], seed: int, timing: bool = True) -> dict:
    return {"schema": 1, "seed": seed, "reports": [r.to_json(timing) for r in reports]}
