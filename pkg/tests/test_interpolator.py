import warnings

import numpy as np
import pytest

from sknni import (GeoCoord, Interpolator, KClampedWarning, Observation, ValidationError,
                   build_interpolator, interpolate)
from sknni.functions import available_functions

from conftest import sphere_points


def test_listing_equator_rows(listing_obs):
    interp = Interpolator(listing_obs)
    assert interp.n == 4
    out = interp([[0, 0], [0, -120], [0, 120]], k=4)
    assert out[0, 2] == pytest.approx(12.5, abs=1e-12)
    assert out[1, 2] == pytest.approx(14.684806, abs=1e-5)
    assert out[2, 2] == pytest.approx(10.315192, abs=1e-5)


def test_output_echoes_queries(listing_obs, listing_queries):
    out = Interpolator(listing_obs)(listing_queries, k=4)
    np.testing.assert_array_equal(out[:, :2], listing_queries)


def test_observation_objects_and_functional_api(listing_obs):
    obs = [Observation(GeoCoord(a, b), v) for a, b, v in listing_obs]
    rows = interpolate(build_interpolator(obs), [GeoCoord(0, 0)], k=4, fn="mean")
    assert rows == [(0.0, 0.0, 12.5)]


def test_default_k_clamps_with_warning(listing_obs):
    interp = Interpolator(listing_obs)
    with pytest.warns(KClampedWarning):
        clamped = interp([[0, -120]])
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        explicit = interp([[0, -120]], k=4)
    np.testing.assert_array_equal(clamped, explicit)


def test_single_observation():
    interp = Interpolator([[12.0, 34.0, 5.5]])
    q = np.array([[0, 0], [-80, 170], [12, 34]])
    for fn in available_functions():
        assert interp(q, k=1, fn=fn)[:, 2].tolist() == [5.5, 5.5, 5.5]


@pytest.mark.parametrize("obs", [[[np.nan, 0, 1]], [[0, 200, 1]], [[0, 0, np.inf]], []])
def test_bad_observations(obs):
    with pytest.raises(ValidationError):
        Interpolator(np.array(obs, dtype=float).reshape(-1, 3))


def test_empty_queries(listing_obs):
    with pytest.raises(ValidationError, match="no queries"):
        Interpolator(listing_obs)(np.empty((0, 2)))


def test_bad_query(listing_obs):
    with pytest.raises(ValidationError, match="lat"):
        Interpolator(listing_obs)([[95, 0]], k=1)


def test_k_zero(listing_obs):
    with pytest.raises(ValidationError):
        Interpolator(listing_obs)([[0, 0]], k=0)


def test_boundary_inputs_accepted(listing_obs):
    out = Interpolator(listing_obs)([[90, 180], [-90, -180]], k=4)
    assert out[0, :2].tolist() == [90.0, 180.0]
    assert np.isfinite(out[:, 2]).all()


def test_neighborhood_view_matches_indices():
    rng = np.random.default_rng(0)
    lat, lng = sphere_points(rng, 300)
    obs = np.column_stack([lat, lng, rng.normal(size=300)])
    interp = Interpolator(obs)
    view = interp.neighborhoods(np.column_stack(sphere_points(rng, 20)), 6)
    np.testing.assert_array_equal(view.value, obs[view.indices, 2])
    np.testing.assert_allclose(view.lat, np.radians(obs[view.indices, 0]))


@pytest.fixture
def random_case():
    rng = np.random.default_rng(11)
    lat, lng = sphere_points(rng, 500)
    obs = np.column_stack([lat, lng, rng.normal(0, 10, 500)])
    q = np.column_stack(sphere_points(rng, 80))
    return rng, obs, q


def test_query_order_equivariance(random_case):
    rng, obs, q = random_case
    interp = Interpolator(obs)
    perm = rng.permutation(len(q))
    np.testing.assert_array_equal(interp(q, k=10)[perm], interp(q[perm], k=10))


def test_observation_order_invariance(random_case):
    rng, obs, q = random_case
    perm = rng.permutation(len(obs))
    a = Interpolator(obs)(q, k=10)
    b = Interpolator(obs[perm])(q, k=10)
    np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("fn", ["nddnisd", "nearest", "mean", "median"])
def test_convexity(random_case, fn):
    _, obs, q = random_case
    interp = Interpolator(obs)
    view = interp.neighborhoods(q, 12)
    est = interp.estimate(view, fn)
    assert (est >= view.value.min(axis=1) - 1e-9).all()
    assert (est <= view.value.max(axis=1) + 1e-9).all()


def test_k1_degeneracy(random_case):
    _, obs, q = random_case
    interp = Interpolator(obs)
    outs = [interp(q, k=1, fn=fn) for fn in available_functions()]
    for o in outs[1:]:
        np.testing.assert_array_equal(o, outs[0])


def test_radius_invariance(random_case):
    _, obs, q = random_case
    a = Interpolator(obs, rho=6371.01)(q, k=15)
    b = Interpolator(obs, rho=6371.01e3)(q, k=15)
    np.testing.assert_allclose(a, b, rtol=1e-9)


def test_prefix_views_equal_direct_queries(random_case):
    _, obs, q = random_case
    interp = Interpolator(obs)
    full = interp.neighborhoods(q, 25)
    for k in (1, 5, 17):
        np.testing.assert_array_equal(full.truncate(k).indices, interp.neighborhoods(q, k).indices)


def test_paper_embedding_runs(listing_obs):
    out = Interpolator(listing_obs, mode="paper")([[0, 0]], k=4)
    assert out[0, 2] == pytest.approx(12.5)


def test_custom_callable(listing_obs):
    def maximum(qlat, qlng, lat, lng, value, rho, k):
        return value.max(axis=1)
    assert Interpolator(listing_obs)([[0, 0]], k=4, fn=maximum)[0, 2] == 20
