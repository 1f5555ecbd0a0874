import math

import numpy as np
import pytest

import pt_horizon as pth


def test_hamiltonian_is_pt_symmetric():
    h = pth.hamiltonian(0.7, 0.3, -0.4)
    assert h.shape == (4, 4)
    assert np.allclose(np.diag(h), [-3, -1, 1, 3])
    parity = np.diag([1.0, -1.0, 1.0, -1.0])
    assert np.array_equal(parity @ h, (parity @ h).T)


def test_discriminants_at_origin():
    assert pth.discriminants(0, 0, 0) == {"W": 64.0, "Q": 9.0, "P": 10.0}
    d = pth.discriminants(0, math.sqrt(5), 0)
    assert d["W"] == pytest.approx(-256)


def test_energies_agree_with_numpy_and_oracle():
    a, b, c = 0.4, 0.5, -0.2
    closed = sorted(pth.energies(a, b, c)["values"], key=lambda z: z.real)
    oracle = sorted(pth.oracle_eigenvalues(a, b, c)["values"], key=lambda z: z.real)
    reference = sorted(np.linalg.eigvals(pth.hamiltonian(a, b, c)), key=lambda z: z.real)
    assert np.allclose(closed, reference, atol=1e-10)
    assert np.allclose(oracle, reference, atol=1e-10)
    assert pth.energies(a, b, c)["classification"] == "real-simple"


def test_membership():
    assert pth.in_domain(0, 0, 0)
    assert pth.in_domain_oracle(0, 0, 0)
    assert not pth.in_domain(0, 2.3, 0)
    assert not pth.in_domain(math.sqrt(8), 0, 0)
    assert pth.in_domain(math.sqrt(8), 0, 0, mode="real")
    with pytest.raises(ValueError):
        pth.in_domain(0, 0, 0, mode="loose")


def test_segments():
    assert pth.segment_connected((0, 0, 0), (0.5, 0.1, 0.2))
    assert not pth.segment_connected((2.9, 0, 0), (-2.9, 0, 0))


def test_slice_counts():
    c0 = pth.slice("c", 0.0, 400)
    assert c0["count"] == 3
    assert c0["inside"].shape == (400, 400)
    labels = c0["labels"]
    assert set(np.unique(labels[labels >= 0])) == {0, 1, 2}
    assert np.array_equal(labels >= 0, c0["inside"] == 1)
    assert pth.slice("b", 0.999, 400)["count"] == 1
    assert pth.slice("b", 0.0, 400, mode="real")["count"] == 1
    with pytest.raises(ValueError):
        pth.slice("d", 0.0, 64)


def test_box_components():
    assert pth.box_components(96) == 3


def test_verify():
    report = pth.verify()
    assert report["failed"] is False
    assert len(report["checks"]) == 8
