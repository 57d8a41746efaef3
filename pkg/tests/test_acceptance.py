"""Acceptance suite: every criterion at its stated tolerance.

Each test prints one PASS/FAIL line (run pytest -s to see them inline).
Two criteria are implemented faithfully but fail against computation:

* 4b: the published large-length interval for the square negative band is
  exact in the -kappa scale only up to a shift of (4l-2) e^(-2l); at l=10
  that is 38 e^(-20), outside the stated allowance of 10 e^(-20).
* 5c: the published threshold inequality for the first positive hexagonal
  band is reversed; the computed band starts at zero iff l >= 2/sqrt(3).

See the failure messages for the computed numbers.
"""
import math

import numpy as np
import pytest

from qglattice.lattice import (
    SECULAR_CALIBRATION,
    BlochPoint,
    LatticeModel,
    band_structure,
    brillouin_membership_oracle,
    is_member,
    secular_determinant,
    secular_determinant_factored,
    spectral_infimum,
)
from qglattice.numerics import DEFAULT_TOL
from qglattice.star import bound_states
from qglattice.vertex import cyclic_coupling, energy_limit, s_matrix, s_matrix_closed_form
from qglattice.verify import verify_hexagonal, verify_inconsistencies

from test_secular import factored_bracket_roots, random_point

SQRT3 = math.sqrt(3.0)


def report(criterion: str, ok: bool, detail: str = "") -> None:
    print(f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'}"
          + (f"  ({detail})" if detail else ""))


# ---------------------------------------------------------------------------
# 1. scattering-matrix golden values

def test_criterion_1_smatrix_golden(rng):
    ok = True
    for n in range(3, 9):
        c = cyclic_coupling(n)
        ok &= np.array_equal(s_matrix(c, 1.0).s, c.u)

    golden = np.array([
        [2.0 / 3.0, 2.0 / 3.0, -1.0 / 3.0],
        [-1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0],
        [2.0 / 3.0, -1.0 / 3.0, 2.0 / 3.0],
    ])
    ok &= bool(np.max(np.abs(s_matrix(cyclic_coupling(3), 3.0).s - golden)) < 1e-12)

    worst = 0.0
    for n in range(3, 9):
        c = cyclic_coupling(n)
        for k in rng.uniform(1e-6, 100.0, size=100):
            diff = np.max(np.abs(s_matrix_closed_form(n, float(k)).s - s_matrix(c, float(k)).s))
            worst = max(worst, float(diff))
    ok &= worst < 1e-10
    report("1 (s-matrix golden values)", ok, f"closed-vs-inverse worst {worst:.2e}")
    assert ok


# ---------------------------------------------------------------------------
# 2. energy limits

def test_criterion_2_energy_limits():
    ok = True
    details = []
    for n in (3, 5, 7):
        d = float(np.max(np.abs(s_matrix(cyclic_coupling(n), 1e6).s - np.eye(n))))
        ok &= d < 1e-5
        details.append(f"n={n} high {d:.1e}")
    d4 = float(np.max(np.abs(s_matrix(cyclic_coupling(4), 1e6).s - energy_limit(4, "high"))))
    ok &= d4 < 1e-5
    details.append(f"n=4 high {d4:.1e}")
    for n in range(3, 9):
        ones = np.ones(n)
        d = float(np.max(np.abs(s_matrix(cyclic_coupling(n), 1e-6).s @ ones - ones)))
        ok &= d < 1e-6
    report("2 (energy limits)", ok, "; ".join(details))
    assert ok


# ---------------------------------------------------------------------------
# 3. star spectra

def test_criterion_3_star_spectra():
    ok = True
    ok &= bound_states(3).energies == pytest.approx((-3.0,), abs=1e-10)
    ok &= bound_states(4).energies == pytest.approx((-1.0,), abs=1e-10)
    ok &= sorted(bound_states(6).energies) == pytest.approx([-3.0, -1.0 / 3.0], abs=1e-10)
    for n in range(3, 21):
        expected = (n - 1) // 2 if n % 2 == 1 else n // 2 - 1
        ok &= len(bound_states(n).kappas) == expected
    report("3 (star spectra)", ok)
    assert ok


# ---------------------------------------------------------------------------
# 4. square lattice

def test_criterion_4a_energy_minus_one_member():
    ok = all(is_member(LatticeModel("square", l), -1.0) for l in (0.25, 1.0, 2.0, 5.0, 10.0))
    report("4a (square: E=-1 in spectrum)", ok)
    assert ok


def test_criterion_4b_negative_band_interval_l10():
    """Band containment in [-1-2e^-10, -1+2e^-10] +- 10 e^-20, -kappa scale.

    Known to fail: both edges sit (4l-2) e^(-2l) = 38 e^(-20) above the
    published values (verified against a 40-digit solve of the edge
    equations), so the upper edge exceeds the allowance by 28 e^(-20).
    """
    bands = band_structure(LatticeModel("square", 10.0), (-1.5, -0.5))
    ac = [s for s in bands.segments if s.kind == "ac"]
    assert len(ac) == 1
    lo, hi = -ac[0].momentum_lo, -ac[0].momentum_hi
    eps = 10.0 * math.exp(-20.0)
    paper_lo = -1.0 - 2.0 * math.exp(-10.0)
    paper_hi = -1.0 + 2.0 * math.exp(-10.0)
    ok = (lo >= paper_lo - eps) and (hi <= paper_hi + eps)
    detail = (f"computed [{lo:.17g}, {hi:.17g}] vs [{paper_lo:.17g}, {paper_hi:.17g}] "
              f"+- {eps:.3g}; upper-edge excess {(hi - paper_hi):.3g}")
    report("4b (square: l=10 negative band interval)", ok, detail)
    assert ok, f"band shifted by ~38e-20 > 10e-20 allowance: {detail}"


def test_criterion_4c_upper_edge_regimes():
    bands3 = band_structure(LatticeModel("square", 3.0), (-3.0, 0.0))
    upper3 = max(s.e_hi for s in bands3.segments if s.kind == "ac")
    bands15 = band_structure(LatticeModel("square", 1.5), (-3.0, 0.0))
    upper15 = max(s.e_hi for s in bands15.segments if s.kind == "ac")
    ok = upper3 < 0.0 and abs(upper15) <= 1e-9
    report("4c (square: negative-band upper edge)", ok,
           f"l=3: {upper3:.6f}; l=1.5: {upper15:.2e}")
    assert ok


def test_criterion_4d_infimum_small_length():
    inf = spectral_infimum(LatticeModel("square", 0.01))
    ok = abs(inf - (-200.0)) <= 20.0
    report("4d (square: inf sigma at l=0.01)", ok, f"{inf:.4f}")
    assert ok


def test_criterion_4e_gap_asymptotics():
    l, m = 2.0, 50
    km = math.pi * m / l
    half = math.pi / (2.0 * l)
    bands = band_structure(LatticeModel("square", l), ((km - half) ** 2, (km + half) ** 2))
    ac = [s for s in bands.segments if s.kind == "ac" and not s.degenerate]
    lo = max(s.momentum_hi for s in ac if s.momentum_hi <= km)
    hi = min(s.momentum_lo for s in ac if s.momentum_lo >= km)
    e_width = hi * hi - lo * lo
    p_width = hi - lo
    ok = (abs(e_width - 4.0) <= 0.05 * 4.0
          and abs(p_width - 4.0 / (math.pi * m)) <= 0.05 * 4.0 / (math.pi * m))
    report("4e (square: l=2, m=50 gap widths)", ok,
           f"energy {e_width:.6f} vs 4.0; momentum {p_width:.6f} vs {4.0/(math.pi*m):.6f}")
    assert ok


def test_criterion_4f_flat_bands_detected():
    for l in (0.7, 2.0):
        e_max = (10.0 * math.pi / l) ** 2
        bands = band_structure(LatticeModel("square", l), (-1.0, e_max + 1.0))
        flats = sorted(s.e_lo for s in bands.segments if s.kind == "flat")
        expected = [(math.pi * m / l) ** 2 for m in range(11)]
        assert flats == pytest.approx(expected)
    report("4f (square: flat bands detected)", True)


# ---------------------------------------------------------------------------
# 5. hexagonal lattice

def test_criterion_5a_infimum_below_minus_three():
    vals = {l: spectral_infimum(LatticeModel("hexagonal", l)) for l in (0.5, 1.0, 2.0, 5.0)}
    ok = all(v < -3.0 for v in vals.values())
    report("5a (hex: inf sigma < -3)", ok, str({k: round(v, 4) for k, v in vals.items()}))
    assert ok


def test_criterion_5b_spectrum_on_both_sides_of_minus_three():
    ok = True
    for l in (2.0, 5.0, 10.0):
        model = LatticeModel("hexagonal", l)
        inf = spectral_infimum(model)
        segs = [s for s in band_structure(model, (inf - 1.0, 0.0)).segments if s.kind == "ac"]
        ok &= any(s.e_lo < -3.0 for s in segs) and any(s.e_hi > -3.0 for s in segs)
    report("5b (hex: spectrum meets both sides of -3)", ok)
    assert ok


def _first_positive_band_start(l: float) -> float:
    bands = band_structure(LatticeModel("hexagonal", l), (1e-12, 4.0))
    ac = [s for s in bands.segments if s.kind == "ac" and not s.degenerate]
    return min(s.e_lo for s in ac)


def test_criterion_5c_first_positive_band_threshold():
    """Published: starts at zero iff l <= 2/sqrt(3), probed at l=1.0 and 1.3.

    Known to fail: the computed spectra (cross-checked by the Brillouin
    oracle) start at zero iff l >= 2/sqrt(3); the published inequality has
    the direction reversed.
    """
    start_10 = _first_positive_band_start(1.0)
    start_13 = _first_positive_band_start(1.3)
    claim_10 = start_10 <= 1e-9          # published: 1.0 < 2/sqrt(3) starts at zero
    claim_13 = start_13 > 1e-9           # published: 1.3 > 2/sqrt(3) is separated
    ok = claim_10 and claim_13
    detail = f"computed starts: l=1.0 -> {start_10:.6f}, l=1.3 -> {start_13:.2e}"
    report("5c (hex: first positive band threshold)", ok, detail)
    assert ok, f"published threshold direction is reversed: {detail}"


def test_criterion_5d_degenerate_point_bands():
    ok = True
    for l in (math.pi / 3.0, 2.0 * math.pi / 3.0):
        bands = band_structure(LatticeModel("hexagonal", l), (0.5, 1.5))
        degs = [s for s in bands.segments if s.degenerate]
        ok &= len(degs) == 1 and degs[0].e_lo == 1.0 and degs[0].e_hi == 1.0
    report("5d (hex: degenerate point bands at E=1)", ok)
    assert ok


def test_criterion_5e_pair_widths():
    # evaluated under the published parameter range, whose inner edge the
    # asymptotic constant 4(sqrt(3)-1)/l presumes
    l, m = 2.0, 50
    km = math.pi * m / l
    half = math.pi / (2.0 * l)
    bands = band_structure(LatticeModel("hexagonal", l),
                           ((km - half) ** 2, (km + half) ** 2), range_mode="paper")
    ac = sorted((s for s in bands.segments if s.kind == "ac" and not s.degenerate),
                key=lambda s: s.e_lo)
    target = 4.0 * (SQRT3 - 1.0) / l
    ok = len(ac) == 2
    widths = [s.e_hi - s.e_lo for s in ac]
    ok = ok and all(abs(w - target) <= 0.10 * target for w in widths)
    report("5e (hex: l=2 pair widths)", ok,
           f"widths {[round(w, 5) for w in widths]} vs {target:.5f}")
    assert ok


def test_criterion_5f_exponentially_narrow_negative_bands():
    l = 10.0
    pred = 8.0 * math.exp(-SQRT3 * l)
    ok = True
    details = []
    for mode in ("derived", "paper"):
        bands = band_structure(LatticeModel("hexagonal", l), (-3.1, -2.9), range_mode=mode)
        ac = [s for s in bands.segments if s.kind == "ac"]
        widths = [s.e_hi - s.e_lo for s in ac]
        ok &= bool(widths) and all(pred / 5.0 <= w <= 5.0 * pred for w in widths)
        details.append(f"{mode}: {[f'{w:.3e}' for w in widths]}")
    report("5f (hex: l=10 narrow negative bands)", ok,
           f"target {pred:.3e}; " + "; ".join(details))
    assert ok


# ---------------------------------------------------------------------------
# 6. oracle equivalence

def test_criterion_6_oracle_equivalence(rng):
    disagreements = []
    for kind in ("square", "hexagonal"):
        for l in (0.25, 1.5, 3.0):
            model = LatticeModel(kind, l)
            inf = spectral_infimum(model)
            window = (inf - 2.0, 30.0)
            edges = []
            for s in band_structure(model, window).segments:
                edges.extend((s.e_lo, s.e_hi))
            for e in rng.uniform(window[0], window[1], size=500):
                e = float(e)
                if any(abs(e - edge) < DEFAULT_TOL.degenerate_width for edge in edges):
                    continue
                a = is_member(model, e, "derived")
                b = brillouin_membership_oracle(model, e, 512)
                if a != b:
                    disagreements.append((kind, l, e, a, b))
    ok = not disagreements
    report("6 (oracle equivalence, 500 energies x 6 configs)", ok,
           f"{len(disagreements)} disagreements")
    assert ok, disagreements[:5]


# ---------------------------------------------------------------------------
# 7. determinant factorization

def test_criterion_7_determinant_factorization(rng):
    ok = True
    for kind in ("square", "hexagonal"):
        cal = SECULAR_CALIBRATION[kind]
        checked = 0
        while checked < 100:
            model = LatticeModel(kind, float(rng.uniform(0.4, 3.0)))
            point = random_point(rng)
            for k in factored_bracket_roots(model, point, rng):
                assembled = secular_determinant(model, k, point)
                scale = max(1.0, abs(secular_determinant(model, k + 0.01, point)),
                            abs(secular_determinant(model, k - 0.01, point)))
                ok &= abs(assembled) < 1e-8 * scale
                # and the two forms agree identically up to the calibration
                factored = secular_determinant_factored(model, k + 0.37, point)
                assembled2 = secular_determinant(model, k + 0.37, point)
                ok &= abs(assembled2 - cal * factored) <= 1e-9 * max(1.0, abs(factored))
                checked += 1
    report("7 (secular determinant factorization)", ok)
    assert ok


# ---------------------------------------------------------------------------
# 8. inconsistency report

def test_criterion_8_inconsistency_report():
    records = verify_inconsistencies()
    ok = len(records) == 3 and all(r.status == "informational" for r in records)

    star = next(r for r in records if "star" in r.claim_id)
    ok &= abs(star.computed_value - (-3.0)) < 1e-9

    dmin = next(r for r in records if "parameter" in r.claim_id)
    ok &= abs(dmin.computed_value - (-1.5)) < 1e-9

    lengths = next(r for r in records if "degenerate" in r.claim_id)
    ok &= len(lengths.computed_value) == 2
    ok &= abs(lengths.computed_value[0] - math.pi / 2.0) < 1e-6
    ok &= abs(lengths.computed_value[1] - 3.0 * math.pi / 2.0) < 1e-6

    # the E = -3 membership split is reported (not asserted) in the
    # hexagonal claim records
    hex_records = verify_hexagonal((2.0,))
    derived = [r for r in hex_records if "member-at-minus-three,range=derived" in r.claim_id]
    paper = [r for r in hex_records if "member-at-minus-three,range=paper" in r.claim_id]
    ok &= bool(derived) and bool(paper)
    ok &= all(r.status == "informational" for r in derived + paper)
    ok &= {r.computed_value for r in derived} == {1.0}
    ok &= {r.computed_value for r in paper} == {0.0}
    report("8 (inconsistency report)", ok)
    assert ok
