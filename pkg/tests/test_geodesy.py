import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sknni.errors import ValidationError
from sknni.geodesy import (EARTH_RADIUS_KM, Embedding, GeoCoord, haversine_term, normalize_coord,
                           normalize_coords, orthodromic_distance, orthodromic_distance_rad,
                           to_cartesian)

from conftest import central_angle, sphere_points

R = EARTH_RADIUS_KM
lat_st = st.floats(-90, 90)
lng_st = st.floats(-180, 180)


class TestNormalize:
    def test_identity(self):
        assert normalize_coord(45, 30) == GeoCoord(45.0, 30.0)

    def test_antimeridian_wraps(self):
        assert normalize_coord(0, 180) == GeoCoord(0.0, -180.0)

    def test_north_pole_folds_below_90(self):
        c = normalize_coord(90, 10)
        assert c.lat < 90 and c.lat == math.nextafter(90.0, 0.0)

    @pytest.mark.parametrize("lat,lng,field", [
        (91, 0, "lat"), (-90.5, 0, "lat"), (0, 180.01, "lng"), (0, -181, "lng"),
        (float("nan"), 0, "lat"), (0, float("inf"), "lng"),
    ])
    def test_rejects(self, lat, lng, field):
        with pytest.raises(ValidationError) as exc:
            normalize_coord(lat, lng)
        assert exc.value.field == field
        assert field in str(exc.value)

    def test_array_version_matches_scalar(self):
        lat, lng = normalize_coords([90, 0, -90], [180, -180, 5])
        assert lat[0] == math.nextafter(90.0, 0.0)
        assert lng.tolist() == [-180.0, -180.0, 5.0]

    def test_array_version_names_row(self):
        with pytest.raises(ValidationError, match="row 2"):
            normalize_coords([0, 0, 100], [0, 0, 0])


class TestToCartesian:
    def test_standard_axes(self):
        np.testing.assert_allclose(to_cartesian(0, 0, 1), [1, 0, 0], atol=1e-15)
        np.testing.assert_allclose(to_cartesian(0, 90, 1), [0, 1, 0], atol=1e-15)

    def test_paper_mode(self):
        np.testing.assert_allclose(to_cartesian(30, 0, 1, Embedding.PAPER),
                                   [0.5, 0, math.sqrt(3) / 2], atol=1e-15)

    def test_paper_mode_is_not_injective(self):
        a = to_cartesian(30, 0, 1, "paper")
        b = to_cartesian(-30, -180, 1, "paper")
        np.testing.assert_allclose(a, b, atol=1e-15)

    @settings(max_examples=300)
    @given(lat_st, lng_st)
    def test_standard_on_sphere(self, lat, lng):
        p = to_cartesian(lat, lng, R)
        assert math.isclose(float(np.linalg.norm(p)), R, rel_tol=1e-9)

    def test_rejects_bad_radius(self):
        with pytest.raises(ValidationError):
            to_cartesian(0, 0, 0.0)


class TestOrthodromic:
    def test_zero(self):
        assert orthodromic_distance(GeoCoord(0, 0), GeoCoord(0, 0), R) == 0

    def test_antipodal(self):
        d = orthodromic_distance(GeoCoord(0, 0), GeoCoord(0, -180), R)
        assert math.isclose(d, math.pi * R, rel_tol=1e-15)

    def test_known_pair(self):
        # cos c = sin^2(30) + cos^2(30) cos(120) = -1/8
        expected = math.acos(-0.125) * R
        assert math.isclose(expected / R, 1.696124, rel_tol=1e-6)
        d = orthodromic_distance(GeoCoord(30, 0), GeoCoord(30, 120), R)
        assert math.isclose(d, expected, rel_tol=1e-12)
        assert round(d, 1) == 10806.0

    def test_agrees_with_law_of_cosines(self):
        rng = np.random.default_rng(1)
        lat, lng = sphere_points(rng, 400)
        for a, b in zip(range(0, 400, 2), range(1, 400, 2)):
            d = orthodromic_distance(GeoCoord(lat[a], lng[a]), GeoCoord(lat[b], lng[b]), 1.0)
            # acos loses precision near 0 and pi; sampled pairs stay clear of both
            assert math.isclose(d, central_angle(lat[a], lng[a], lat[b], lng[b]), rel_tol=1e-7)

    @settings(max_examples=500)
    @given(lat_st, lng_st, lat_st, lng_st)
    def test_symmetric_and_bounded(self, la, na, lb, nb):
        a, b = normalize_coord(la, na), normalize_coord(lb, nb)
        d1 = orthodromic_distance(a, b, R)
        assert d1 == orthodromic_distance(b, a, R)
        assert 0 <= d1 <= math.pi * R

    def test_scale_equivariance(self):
        rng = np.random.default_rng(2)
        lat, lng = np.radians(sphere_points(rng, 2000))
        d1 = orthodromic_distance_rad(lat[:1000], lng[:1000], lat[1000:], lng[1000:], R)
        d2 = orthodromic_distance_rad(lat[:1000], lng[:1000], lat[1000:], lng[1000:], 1000 * R)
        np.testing.assert_allclose(d2, 1000 * d1, rtol=1e-12)

    def test_clipping_near_antipodes(self):
        rng = np.random.default_rng(3)
        lat = rng.uniform(-np.pi / 2, np.pi / 2, 10_000)
        lng = rng.uniform(-np.pi, np.pi, 10_000)
        tiny = rng.normal(0, 1e-12, (2, 10_000))
        a = haversine_term(lat, lng, -lat + tiny[0], lng + np.pi + tiny[1])
        assert ((a >= 0) & (a <= 1)).all()
        d = orthodromic_distance_rad(lat, lng, -lat + tiny[0], lng + np.pi + tiny[1], R)
        assert np.isfinite(d).all() and (d <= math.pi * R).all()
