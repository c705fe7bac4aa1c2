"""Backend equivalence: the compiled and numpy kernels must agree on the
same expressions near machine precision."""

import numpy as np
import pytest

from ginsum import kernels, verifier


def _backend_modules():
    return sorted(kernels.available_backends().items())


def test_compiled_backend_present_or_fallback():
    names = set(kernels.available_backends())
    assert "numpy" in names
    assert kernels.BACKEND in names


@pytest.mark.parametrize("name,mod", _backend_modules())
def test_scalar_matches_batch(name, mod, rng):
    for _ in range(50):
        p = verifier.sample_params(rng)
        s = verifier.sample_split(rng)
        scalar = mod.t_bounds_scalar(p.h1, p.h2, p.p1, p.p2, s.a1, s.g1, s.a2, s.g2)
        batch = mod.t_bounds_batch(
            p.h1, p.h2, p.p1, p.p2,
            np.array([s.a1]), np.array([s.g1]), np.array([s.a2]), np.array([s.g2]),
        )[0]
        np.testing.assert_allclose(batch, scalar, rtol=1e-13, atol=1e-15)
        assert mod.min_t_scalar(
            p.h1, p.h2, p.p1, p.p2, s.a1, s.g1, s.a2, s.g2
        ) == pytest.approx(min(scalar), abs=1e-15)


def test_backends_agree(rng):
    mods = kernels.available_backends()
    if len(mods) < 2:
        pytest.skip("compiled backend not built")
    n = 4000
    p = verifier.sample_params(rng)
    a1, g1 = _simplex_pairs(rng, n)
    a2, g2 = _simplex_pairs(rng, n)
    results = {
        name: mod.t_bounds_batch(p.h1, p.h2, p.p1, p.p2, a1, g1, a2, g2)
        for name, mod in mods.items()
    }
    np.testing.assert_allclose(results["cython"], results["numpy"], rtol=1e-13, atol=1e-15)

    mins = {
        name: mod.min_t_batch(p.h1, p.h2, p.p1, p.p2, a1, g1, a2, g2)
        for name, mod in mods.items()
    }
    np.testing.assert_allclose(mins["cython"], mins["numpy"], rtol=1e-13, atol=1e-15)


def test_params_batch_agrees_with_scalar(rng):
    n = 500
    h1 = rng.uniform(0, 10, n)
    h2 = rng.uniform(0, 10, n)
    p1 = rng.uniform(0.001, 20, n)
    p2 = rng.uniform(0.001, 20, n)
    d1 = rng.dirichlet((1, 1, 1), n)
    d2 = rng.dirichlet((1, 1, 1), n)
    for name, mod in kernels.available_backends().items():
        batched = mod.t_bounds_batch_params(
            h1, h2, p1, p2, d1[:, 0], d1[:, 2], d2[:, 0], d2[:, 2]
        )
        for i in range(0, n, 97):
            scalar = mod.t_bounds_scalar(
                h1[i], h2[i], p1[i], p2[i], d1[i, 0], d1[i, 2], d2[i, 0], d2[i, 2]
            )
            np.testing.assert_allclose(batched[i], scalar, rtol=1e-13, atol=1e-15)


def test_set_backend_roundtrip():
    original = kernels.BACKEND
    try:
        for name in kernels.available_backends():
            kernels.set_backend(name)
            assert kernels.BACKEND == name
            assert kernels.min_t_scalar(1, 1, 1, 1, 0.2, 0.1, 0.3, 0.2) > 0
        with pytest.raises(ValueError):
            kernels.set_backend("fortran")
    finally:
        kernels.set_backend(original)


def _simplex_pairs(rng, n):
    d = rng.dirichlet((1, 1, 1), n)
    return np.ascontiguousarray(d[:, 0]), np.ascontiguousarray(d[:, 2])
