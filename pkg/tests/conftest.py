import math

import numpy as np
import pytest

LISTING_OBS = np.array([[30.0, 120.0, 20.0],
                        [30.0, -120.0, 10.0],
                        [-30.0, -120.0, 20.0],
                        [-30.0, 120.0, 0.0]])
LISTING_QUERIES = np.array([[30.0, 0.0], [0.0, -120.0], [0.0, 0.0], [0.0, 120.0], [-30.0, 0.0]])


@pytest.fixture
def listing_obs():
    return LISTING_OBS.copy()


@pytest.fixture
def listing_queries():
    return LISTING_QUERIES.copy()


def central_angle(lat1, lng1, lat2, lng2):
    """Spherical law of cosines in degrees -> radians; independent of the haversine path."""
    p1, l1, p2, l2 = map(math.radians, (lat1, lng1, lat2, lng2))
    c = math.sin(p1) * math.sin(p2) + math.cos(p1) * math.cos(p2) * math.cos(l2 - l1)
    return math.acos(max(-1.0, min(1.0, c)))


def sphere_points(rng, n, clustered=False):
    """Random (lat, lng) degrees; uniform on the sphere or in a few tight clusters."""
    if clustered:
        centers = rng.uniform([-60, -180], [60, 180], size=(rng.integers(1, 6), 2))
        pick = centers[rng.integers(0, len(centers), n)]
        lat = np.clip(pick[:, 0] + rng.normal(0, 3, n), -89.9, 89.9)
        lng = np.mod(pick[:, 1] + rng.normal(0, 3, n) + 180, 360) - 180
    else:
        lat = np.degrees(np.arcsin(rng.uniform(-1, 1, n)))
        lng = rng.uniform(-180, 180, n)
    return lat, lng


def brute_knn(points, queries, k):
    """Full sort by (squared distance, index); the reference for exact kNN."""
    points = np.asarray(points, dtype=float)
    out = []
    for q in np.atleast_2d(queries):
        d2 = ((points - q) ** 2).sum(axis=1)
        out.append(np.lexsort((np.arange(len(points)), d2))[:k])
    return np.array(out), points


# Filled by test_acceptance.py; printed after the run as one line per criterion.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
