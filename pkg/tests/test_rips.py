import itertools
import math
import random

import numpy as np
import pytest

from hyperbar.engine import compute_barcodes
from hyperbar.filtration import FormatError, ZERO
from hyperbar.rips import PointCloud, parse_points, rips_filtration

SQUARE = PointCloud([[0, 0], [1, 0], [1, 1], [0, 1]])


def random_cloud(rng, n_max=8):
    n = rng.randint(1, n_max)
    return PointCloud([[rng.uniform(0, 3), rng.uniform(0, 3)] for _ in range(n)])


def test_two_points():
    f = rips_filtration(PointCloud([[0.0], [1.0]]), r_max=2)
    assert f.grade((0,)) == ZERO
    assert f.grade((0, 1)).value == 1.0


def test_one_point():
    f = rips_filtration(PointCloud([[3.0, 4.0]]), r_max=1)
    assert list(f.grades) == [(0,)]


def test_edges_at_or_beyond_rmax_are_dropped():
    f = rips_filtration(PointCloud([[0.0], [1.0], [3.0]]), r_max=2)
    assert (0, 1) in f.grades and (1, 2) not in f.grades and (0, 2) not in f.grades


def test_unit_square_barcode():
    bars = compute_barcodes(rips_filtration(SQUARE, r_max=2, max_dim=2), 1)
    dim1 = [b for b in bars if b.dim == 1]
    assert len(dim1) == 1 and dim1[0].kind == "inf"
    assert dim1[0].birth.value == 1.0 and dim1[0].death.value == math.sqrt(2)
    assert not [b for b in bars if b.kind == "hat"]


def test_errors():
    with pytest.raises(ValueError):
        rips_filtration(PointCloud([]), 1)
    with pytest.raises(ValueError):
        rips_filtration(SQUARE, 0)
    with pytest.raises(ValueError):
        PointCloud([[0, 0], [1]])


def test_parse_points():
    cloud = parse_points("# square\n0 0\n1 0\n\n1 1\n0 1\n")
    assert cloud.points.shape == (4, 2)
    with pytest.raises(FormatError) as info:
        parse_points("0 0\n1\n")
    assert info.value.line == 2


def test_random_clouds_are_simplicial_without_hat_bars():
    rng = random.Random(6)
    for _ in range(40):
        f = rips_filtration(random_cloud(rng), r_max=2.5, max_dim=2)
        assert f.is_simplicial
        assert not [b for b in compute_barcodes(f, 1) if b.kind == "hat"]


def test_scaling_scales_bars():
    rng = random.Random(13)
    for _ in range(20):
        cloud = random_cloud(rng)
        c = rng.choice([0.5, 2.0, 3.0])
        a = compute_barcodes(rips_filtration(cloud, 10, 2), 1)
        b = compute_barcodes(rips_filtration(PointCloud(cloud.points * c), 10 * c, 2), 1)
        assert len(a) == len(b)
        for x, y in zip(a, b):
            assert (x.dim, x.kind) == (y.dim, y.kind)
            assert math.isclose(y.birth.value, c * x.birth.value, abs_tol=1e-12)
            if x.death.finite:
                assert math.isclose(y.death.value, c * x.death.value, rel_tol=1e-12)
            else:
                assert not y.death.finite


def test_strict_inequality_matches_half_open_grades():
    rng = random.Random(17)
    for _ in range(20):
        cloud = random_cloud(rng)
        f = rips_filtration(cloud, r_max=5, max_dim=2)
        pts = cloud.points
        values = sorted({g.value for g in f.grades.values()} | {5.0})
        radii = [(a + b) / 2 for a, b in zip(values, values[1:])] + [0.0, 5.0]
        for r in radii:
            for k in (2, 3):
                for s in itertools.combinations(range(len(pts)), k):
                    in_complex = all(np.linalg.norm(pts[i] - pts[j]) < r
                                     for i, j in itertools.combinations(s, 2))
                    graded = s in f.grades and f.grades[s].value < r
                    assert in_complex == graded
