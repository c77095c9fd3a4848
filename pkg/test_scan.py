"""
Smoke tests for parameter scans.

Verifies: the closed-form EP, reality-boundary bisection, Jordan
certificates, physical-domain reports and metric positivity intervals.
"""

import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent))

from src.errors import DegenerateSpectrum, NoSignChange, NotDegenerate, SeedNotPositive
from src.linalg.dense import eig_symmetric
from src.metric.recurrent import metric_recurrent
from src.metric.spectral import metric_spectral
from src.model.builder import build, build_preset, free_lattice
from src.model.models import HamiltonianSpec
from src.scan.exceptional import certify_interior_ep, jordan_chain, s_ep_closed_form
from src.scan.models import BOUNDARY_INTERIOR, BOUNDARY_REALITY
from src.scan.positivity import metric_positivity_interval, sparse_first_row
from src.scan.sweep import domain_report, locate_reality_boundary, sweep_spectrum, track_branches
from src.spectrum.models import REALITY_COMPLEX

S_EP = 0.5242106130
HAMI5 = HamiltonianSpec(preset="hami5", r=0.5)


def test_closed_form():
    s = s_ep_closed_form()
    assert abs(s - S_EP) <= 1e-9
    f = (5 + np.sqrt(33)) ** (1 / 3)
    assert abs(f**3 - (5 + np.sqrt(33))) <= 1e-12
    print(f"  ✓ s_EP = {s:.10f}")


def test_locate_reality_boundary():
    right = locate_reality_boundary(HAMI5, "s", (0.4, 0.7))
    left = locate_reality_boundary(HAMI5, "s", (-0.7, -0.4))
    assert abs(right - S_EP) <= 1e-6
    assert abs(left + S_EP) <= 1e-6
    try:
        locate_reality_boundary(HAMI5, "s", (0.0, 0.1))
        assert False, "NoSignChange expected"
    except NoSignChange:
        pass
    print("  ✓ ±s_EP within 1e-6, NoSignChange on a real bracket")


def test_certify_interior_ep():
    cert = certify_interior_ep(build_preset("hami5", r=0.5, s=0.5), -1.0, param_value=0.5)
    assert cert.geometric_multiplicity == 1
    assert cert.jordan_block_size == 2
    assert cert.certified
    assert abs(cert.degenerate_eigenvalue + 1.0) <= 1e-6
    assert np.allclose(cert.null_vector, [0, 0, 0, 1, 1], atol=1e-8)

    mirror = certify_interior_ep(build_preset("hami5", r=0.5, s=-0.5), 1.0)
    assert mirror.geometric_multiplicity == 1 and mirror.jordan_block_size == 2

    try:
        certify_interior_ep(free_lattice(2), 1.0)
        assert False, "NotDegenerate expected"
    except NotDegenerate:
        pass
    print("  ✓ 2×2 Jordan blocks at s = ±1/2, null vector ∝ (0,0,0,1,1)")


def test_jordan_chain():
    h = build_preset("hami5", r=0.5, s=0.5)
    chain = jordan_chain(h, -1.0)
    shifted = h - chain.eigenvalue.real * np.eye(5)
    assert chain.residual <= 1e-8
    assert np.linalg.norm(shifted @ chain.chain_vector - chain.null_vector) <= 1e-8

    known = np.array([0.0, -0.5, -1.0, 0.0, 0.5])
    a = h + np.eye(5)
    assert np.allclose(a @ known, [0, 0, 0, 1, 1])
    assert np.linalg.norm(a @ (chain.chain_vector - known)) <= 1e-7
    print("  ✓ (H + 1)·g = (0,0,0,1,1)")


def test_sweep_flags():
    sweep = sweep_spectrum(HAMI5, "s", -0.8, 0.8, 161)
    assert sweep.energies.shape == (161, 5)
    for s, flag in zip(sweep.grid, sweep.reality):
        if abs(s) < 0.524:
            assert flag != REALITY_COMPLEX, (s, flag)
        elif abs(s) > 0.525:
            assert flag == REALITY_COMPLEX, (s, flag)
    assert len(sweep.rows()) == 161
    assert sweep.header()[0] == "s" and sweep.header()[-1] == "reality"

    try:
        sweep_spectrum(HAMI5, "s", 0.1, 0.1, 10)
        assert False, "ValueError expected"
    except ValueError:
        pass
    print("  ✓ complex exactly outside |s| < s_EP, header / rows")


def test_sweep_hami7_z0_levels():
    sweep = sweep_spectrum(HamiltonianSpec(preset="hami7", q=1 / 3, r=0.5), "s", -1.0, 1.0, 41)
    for values in sweep.energies:
        for target in (-np.sqrt(2), 0.0, np.sqrt(2)):
            assert np.min(np.abs(values - target)) <= 1e-7
    print("  ✓ hami7 z=0 levels fixed across the sweep")


def test_track_branches():
    sweep = sweep_spectrum(HAMI5, "s", -0.3, 0.3, 31)
    tracked = track_branches(sweep)
    assert tracked.shape == sweep.energies.shape
    for row, original in zip(tracked, sweep.energies):
        assert np.allclose(np.sort_complex(row), np.sort_complex(original))
    jumps = np.abs(np.diff(tracked, axis=0))
    assert np.max(jumps) <= 0.2
    print("  ✓ branches are permutations with small steps")


def test_hami5_domains():
    report = domain_report(HAMI5, "s", -0.8, 0.8, 161)
    expected = [(-S_EP, -0.5), (-0.5, 0.5), (0.5, S_EP)]
    assert len(report.intervals) == 3, report.intervals
    for (a, b), (ea, eb) in zip(report.intervals, expected):
        assert abs(a - ea) <= 1e-6 and abs(b - eb) <= 1e-6
    assert report.gaps == []
    assert len(report.certificates) == 2
    kinds = sorted(b.kind for b in report.boundaries)
    assert kinds == sorted([BOUNDARY_REALITY] * 2 + [BOUNDARY_INTERIOR] * 2)

    for a, b in report.intervals:
        cand = metric_spectral(build(HAMI5.with_param("s", 0.5 * (a + b))), 2)
        assert cand.positive_definite
    try:
        metric_spectral(build_preset("hami5", r=0.5, s=0.5), 2)
        assert False, "DegenerateSpectrum expected"
    except DegenerateSpectrum:
        pass
    data = report.to_dict()
    assert data["param"] == "s" and len(data["intervals"]) == 3
    print("  ✓ (−s_EP, −1/2) ∪ (−1/2, 1/2) ∪ (1/2, s_EP), metric at each midpoint")


def test_hami27_domains():
    three = domain_report(HamiltonianSpec(preset="hami27", q=-1 / 15, r=0.5), "s", -1.2, 1.2, 481)
    assert len(three.intervals) == 3, three.intervals

    four = domain_report(HamiltonianSpec(preset="hami27", q=1 / 100, r=0.5), "s", -1.2, 1.2, 481)
    assert len(four.intervals) == 4, four.intervals
    assert len(four.gaps) == 1
    gap_lo, gap_hi = four.gaps[0]
    assert gap_lo < gap_hi
    inside_gap = HamiltonianSpec(preset="hami27", q=1 / 100, r=0.5)
    sweep = sweep_spectrum(inside_gap, "s", gap_lo, gap_hi, 3)
    assert sweep.reality[1] == REALITY_COMPLEX
    print("  ✓ hami27: 3 intervals at q = −1/15, 4 with one gap at q = 1/100")


def test_hami7_domains():
    template = HamiltonianSpec(preset="hami7", q=1 / 3, r=0.5)
    report = domain_report(template, "s", -1.2, 1.2, 481)
    assert len(report.intervals) == 4, report.intervals
    for a, b in report.intervals:
        assert a < b
        sweep = sweep_spectrum(template, "s", a + 0.25 * (b - a), b - 0.25 * (b - a), 3)
        assert all(flag != REALITY_COMPLEX for flag in sweep.reality)
    print("  ✓ hami7(1/3, 1/2): four physical subdomains")


def test_positivity_interval():
    h = build_preset("dim5", r=Fraction(1, 2), s=Fraction(0), exact=True)
    base, direction = sparse_first_row()
    interval = metric_positivity_interval(h, base, direction, -1.0, 2.0, 301, seed=0.0)
    assert interval.lo < 0.0 < interval.hi
    assert -1.0 < interval.lo and interval.hi < 2.0
    assert interval.bounded_below and interval.bounded_above
    assert -0.62 < interval.lo and interval.hi < 1.62

    theta0 = np.array(interval.eigencurves[100])
    assert abs(interval.grid[100]) <= 1e-12
    assert np.max(np.abs(theta0 - [0.1704659382, 0.4862291155, 1.0, 1.374374593, 2.468930353])) <= 1e-8

    for xi in (interval.lo, interval.hi):
        row = [b + xi * d for b, d in zip(base, direction)]
        theta = metric_recurrent(build_preset("dim5", r=0.5, s=0.0), row).theta
        assert abs(eig_symmetric(theta).eigenvalues.min()) <= 1e-6

    jumps = np.abs(np.diff(interval.eigencurves, axis=0))
    assert np.max(jumps) <= 0.1
    assert len(interval.rows()) == 301 and interval.header()[0] == "xi"

    try:
        metric_positivity_interval(h, base, direction, -1.0, 2.0, 301, seed=1.9)
        assert False, "SeedNotPositive expected"
    except SeedNotPositive:
        pass

    free = metric_positivity_interval(free_lattice(2), [1, 0, 0, 0, 0], [0] * 5, -1.0, 1.0, 21)
    assert (free.lo, free.hi) == (-1.0, 1.0)
    assert not free.bounded_below and not free.bounded_above
    print(f"  ✓ sparse Θ positive on ({interval.lo:.6f}, {interval.hi:.6f}), SeedNotPositive, unbounded case")


def main():
    print("\n=== PTSpectra scan Tests ===\n")

    tests = [
        ("Closed Form", test_closed_form),
        ("Reality Boundary", test_locate_reality_boundary),
        ("EP Certificate", test_certify_interior_ep),
        ("Jordan Chain", test_jordan_chain),
        ("Sweep Flags", test_sweep_flags),
        ("hami7 Sweep", test_sweep_hami7_z0_levels),
        ("Track Branches", test_track_branches),
        ("hami5 Domains", test_hami5_domains),
        ("hami27 Domains", test_hami27_domains),
        ("hami7 Domains", test_hami7_domains),
        ("Positivity Interval", test_positivity_interval),
    ]

    passed = 0
    failed = 0
    for name, fn in tests:
        try:
            print(f"[{name}]")
            fn()
            passed += 1
        except Exception as e:
            print(f"  ✗ FAILED: {e}")
            import traceback
            traceback.print_exc()
            failed += 1
        print()

    print(f"{'=' * 40}")
    print(f"Results: {passed} passed, {failed} failed")
    return failed


if __name__ == "__main__":
    sys.exit(main())
