"""
Smoke tests for lattice Hamiltonian construction.

Verifies: preset matrices, PT symmetry, parity, the partitioned basis and
HamiltonianSpec validation.
"""

import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
from pydantic import ValidationError

sys.path.insert(0, str(Path(__file__).parent))

from src.errors import DimensionMismatch, NonRealCouplings, UnknownPreset
from src.linalg.dense import eig_general
from src.model.basis import partition_unitary, transform_basis
from src.model.builder import (
    build,
    build_general,
    build_ma,
    build_preset,
    check_pt_symmetry,
    free_lattice,
    parity_matrix,
)
from src.model.models import HamiltonianSpec
from src.spectrum.chebyshev import chebyshev_eig


def test_parity_matrix():
    assert np.array_equal(parity_matrix(1), [[1.0]])
    assert np.array_equal(parity_matrix(2), [[0.0, 1.0], [1.0, 0.0]])
    p3 = parity_matrix(3, exact=True)
    assert p3[0, 2] == Fraction(1) and p3[1, 1] == Fraction(1) and p3[2, 0] == Fraction(1)
    assert p3[0, 0] == 0
    print("  ✓ 𝒫 for n = 1, 2, 3")


def test_hami5_layout():
    r, s = 0.3, 0.2
    expected = np.array([
        [0, -1, r, 0, 0],
        [-1, 0, -1 + s, 0, 0],
        [-r, -1 - s, 0, -1 + s, r],
        [0, 0, -1 - s, 0, -1],
        [0, 0, -r, -1, 0],
    ])
    assert np.array_equal(build_preset("hami5", r=r, s=s), expected)

    h = build_preset("hami5", r=Fraction(1, 2), s=Fraction(1, 2), exact=True)
    assert h[2, 1] == Fraction(-3, 2)
    assert h[1, 2] == Fraction(-1, 2)
    print("  ✓ hami5 full layout, exact (3,2) = −3/2 and (2,3) = −1/2")


def test_dim5_and_hami27_layout():
    r, s = 0.5, 0.1
    expected = np.array([
        [0, -1, r, 0, 0],
        [-1, 0, -1 + s, 0, 0],
        [0, -1, 0, -1 + s, r],
        [0, 0, -1, 0, -1],
        [0, 0, 0, -1, 0],
    ])
    assert np.array_equal(build_preset("dim5", r=r, s=s), expected)

    h = build_preset("hami27", q=0.1, r=0.2, s=0.3)
    assert h.shape == (7, 7)
    assert np.allclose(h[3], [0, 0, -1, 0, -0.7, 0.2, 0.1])
    assert np.allclose(h[:3, 3], [0.1, 0.2, -0.7])
    assert np.allclose(h[4:, 3], [-1, 0, 0])

    h7 = build_preset("hami7", q=0.1, r=0.2, s=0.3)
    assert np.allclose(h7[3], [-0.1, -0.2, -1.3, 0, -0.7, 0.2, 0.1])
    print("  ✓ dim5 full layout, hami27 / hami7 middle row and column")


def test_presets_match_explicit_families():
    for name, params in (("hami5", {"r": 0.4, "s": -0.2}),
                         ("hami7", {"q": 0.3, "r": 0.5, "s": 0.1}),
                         ("hami27", {"q": -1 / 15, "r": 0.5, "s": 0.2}),
                         ("dim5", {"r": 0.5, "s": 0.0})):
        spec = HamiltonianSpec(preset=name, **params)
        expanded = spec.expand()
        assert expanded.preset in ("general", "ma")
        assert np.array_equal(build(spec), build(expanded)), name
    print("  ✓ preset == expanded general / ma construction")


def test_small_lattices():
    h = free_lattice(1)
    assert np.array_equal(h, [[0, -1, 0], [-1, 0, -1], [0, -1, 0]])

    h = build_ma(HamiltonianSpec(preset="ma", M=1, w=[-1]))
    assert np.array_equal(h, [[0, -1, 0], [-1, 0, -1], [0, -1, 0]])

    h = build_general(HamiltonianSpec(M=1, u=0.25, w=[0], v=[0]))
    assert np.count_nonzero(h) == 1 and h[1, 1] == 0.25

    h = free_lattice(3)
    expected = -(np.eye(7, k=1) + np.eye(7, k=-1))
    assert np.array_equal(h, expected)
    print("  ✓ M = 1 free lattice, ma with w = (−1), decoupled center, M = 3 chain")


def test_exact_decimal_parameters():
    h = build_preset("hami5", r=0.1, s=0.3, exact=True)
    assert h[0, 2] == Fraction(1, 10)
    assert h[1, 2] == Fraction(-7, 10)
    assert h[3, 2] == Fraction(-13, 10)
    assert h[2, 0] == Fraction(-1, 10)

    explicit = build(HamiltonianSpec(M=2, w=[0.1, -0.7], v=[-1.3, -0.1]), exact=True)
    assert all(a == b for a, b in zip(explicit.flat, h.flat))
    print("  ✓ decimal parameters stay decimal rationals (1/10, −7/10, −13/10)")


def test_pt_symmetry():
    for name in ("hami5", "hami7", "hami27", "dim5"):
        assert check_pt_symmetry(build_preset(name, q=0.2, r=0.5, s=0.3)), name

    rng = np.random.default_rng(1)
    for M in range(1, 6):
        w = rng.normal(size=M) + 1j * rng.normal(size=M)
        v = rng.normal(size=M) + 1j * rng.normal(size=M)
        h = build_general(HamiltonianSpec(M=M, u=rng.normal(), w=list(w), v=list(v)))
        assert check_pt_symmetry(h)
        assert np.allclose(parity_matrix(2 * M + 1) @ h, h.conj().T @ parity_matrix(2 * M + 1))

    assert check_pt_symmetry(np.eye(5))
    broken = build_preset("hami5", r=0.5, s=0.0)
    broken[0, 1] = -1.01
    assert not check_pt_symmetry(broken)
    print("  ✓ presets, random general models, identity; perturbed entry rejected")


def test_trace_is_u():
    spec = HamiltonianSpec(M=3, u=0.7, w=[0.1, 0.2j, -1], v=[-1, 0.3, 0.4])
    assert np.trace(build(spec)) == 0.7
    exact = build(HamiltonianSpec(M=2, u=0.5, w=[0.5, -1], v=[-1, 0]), exact=True)
    assert np.trace(exact) == Fraction(1, 2)
    print("  ✓ tr H = u (float and exact)")


def test_errors():
    try:
        build(HamiltonianSpec(M=2, w=[0.5], v=[-1, 0]))
        assert False, "DimensionMismatch expected"
    except DimensionMismatch as e:
        assert e.name == "DimensionMismatch"
    try:
        build_preset("hami9", r=0.5)
        assert False, "UnknownPreset expected"
    except UnknownPreset:
        pass
    try:
        build_ma(HamiltonianSpec(preset="ma", M=2, w=[0.5j, -1]))
        assert False, "NonRealCouplings expected"
    except NonRealCouplings:
        pass
    try:
        transform_basis(np.eye(4), 2)
        assert False, "DimensionMismatch expected"
    except DimensionMismatch:
        pass
    print("  ✓ DimensionMismatch, UnknownPreset, NonRealCouplings")


def test_partition_unitary():
    for M in (1, 2, 3, 5):
        u = partition_unitary(M)
        assert np.max(np.abs(u @ u.T - np.eye(2 * M + 1))) <= 1e-12
        d, u_d = chebyshev_eig(M)
        assert np.max(np.abs(u_d @ u_d.T - np.eye(M))) <= 1e-12
    print("  ✓ 𝒰 and U_D orthogonal for M ∈ {1, 2, 3, 5}")


def test_transform_basis():
    h = build_preset("hami5", r=0.5, s=0.3)
    part = transform_basis(h, 2)
    m = part.matrix
    assert np.max(np.abs(m[:2, :2] - np.diag(part.d))) <= 1e-12
    assert np.max(np.abs(m[3:, 3:] - np.diag(part.d))) <= 1e-12
    assert np.max(np.abs(m[:2, 3:])) <= 1e-12 and np.max(np.abs(m[3:, :2])) <= 1e-12
    assert np.allclose(m[2, :2], np.conj(part.beta), atol=1e-12)
    assert np.allclose(m[2, 3:], np.conj(part.alpha), atol=1e-12)
    assert part.u == 0.0

    before = eig_general(h).eigenvalues
    after = eig_general(m).eigenvalues
    assert np.max(np.abs(before - after)) <= 1e-9

    free = transform_basis(free_lattice(3), 3)
    d, _ = chebyshev_eig(3)
    assert np.allclose(free.d, d)
    assert np.allclose(np.diag(free.matrix)[:3], d, atol=1e-12)
    print("  ✓ corner blocks diagonal, middle row (β†, u, α†), spectrum preserved")


def test_spec_validation():
    spec = HamiltonianSpec.model_validate({"preset": "general", "M": 1, "w": [[0.5, 0.1]], "v": ["1-2j"]})
    assert spec.w[0] == complex(0.5, 0.1)
    assert spec.v[0] == complex(1, -2)
    assert spec.to_json_dict()["w"] == [[0.5, 0.1]]
    assert spec.dimension == 3
    assert HamiltonianSpec(preset="hami27").dimension == 7

    try:
        HamiltonianSpec.model_validate({"preset": "hami5", "r": 0.5, "colour": "red"})
        assert False, "extra field must be rejected"
    except ValidationError:
        pass
    try:
        HamiltonianSpec.model_validate({"M": 0})
        assert False, "M = 0 must be rejected"
    except ValidationError:
        pass

    moved = HamiltonianSpec(preset="hami5", r=0.5).with_param("s", 0.25)
    assert moved.s == 0.25 and moved.r == 0.5
    print("  ✓ complex parsing, extra fields rejected, with_param")


def main():
    print("\n=== PTSpectra model Tests ===\n")

    tests = [
        ("Parity", test_parity_matrix),
        ("hami5 Layout", test_hami5_layout),
        ("dim5 / hami27 Layout", test_dim5_and_hami27_layout),
        ("Preset Expansion", test_presets_match_explicit_families),
        ("Small Lattices", test_small_lattices),
        ("Exact Decimals", test_exact_decimal_parameters),
        ("PT Symmetry", test_pt_symmetry),
        ("Trace", test_trace_is_u),
        ("Errors", test_errors),
        ("Partition Unitary", test_partition_unitary),
        ("transform_basis", test_transform_basis),
        ("HamiltonianSpec", test_spec_validation),
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
