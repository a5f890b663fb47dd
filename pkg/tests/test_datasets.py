import math

import numpy as np
import pytest

from hazemap.datasets import (
    MOONS_OFFSET,
    ROLL_HOLE_H,
    ROLL_HOLE_T,
    TORUS_MAJOR,
    TORUS_MINOR,
    DatasetSpec,
    generate,
    load_csv,
)


class TestSpecValidation:
    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            DatasetSpec(kind="klein_bottle")

    def test_bad_sizes(self):
        with pytest.raises(ValueError):
            DatasetSpec(kind="torus", n=0)
        with pytest.raises(ValueError):
            DatasetSpec(kind="torus", noise=-0.1)

    def test_csv_needs_path(self):
        with pytest.raises(ValueError):
            DatasetSpec(kind="csv")


class TestDeterminism:
    @pytest.mark.parametrize("kind", ["swiss_roll", "swiss_roll_hole", "torus",
                                      "two_moons", "mobius"])
    def test_same_seed_same_cloud(self, kind):
        spec = DatasetSpec(kind=kind, n=500, seed=7, noise=0.02)
        a = generate(spec)
        b = generate(spec)
        assert np.array_equal(a.coords, b.coords)
        assert np.array_equal(a.intrinsic_param, b.intrinsic_param)

    def test_different_seeds_differ(self):
        a = generate(DatasetSpec(kind="torus", n=100, seed=1))
        b = generate(DatasetSpec(kind="torus", n=100, seed=2))
        assert not np.array_equal(a.coords, b.coords)


class TestAnalyticConstraints:
    def test_torus_implicit_equation(self):
        cloud = generate(DatasetSpec(kind="torus", n=4000, seed=3))
        x, y, z = cloud.coords.T
        resid = (np.sqrt(x * x + y * y) - TORUS_MAJOR) ** 2 + z * z
        assert np.abs(resid - TORUS_MINOR**2).max() <= 1e-12

    def test_moons_on_arcs(self):
        cloud = generate(DatasetSpec(kind="two_moons", n=1000, seed=4))
        labels = cloud.intrinsic_param
        outer = cloud.coords[labels == 0]
        inner = cloud.coords[labels == 1]
        assert np.abs(np.linalg.norm(outer, axis=1) - 1.0).max() <= 1e-12
        shifted = np.array(MOONS_OFFSET) - inner
        assert np.abs(np.linalg.norm(shifted, axis=1) - 1.0).max() <= 1e-12
        assert (outer[:, 1] >= -1e-12).all()
        assert (inner[:, 1] <= MOONS_OFFSET[1] + 1e-12).all()

    def test_swiss_roll_on_spiral(self):
        cloud = generate(DatasetSpec(kind="swiss_roll", n=2000, seed=5))
        t = cloud.intrinsic_param
        x, h, z = cloud.coords.T
        assert np.abs(x - t * np.cos(t)).max() <= 1e-12
        assert np.abs(z - t * np.sin(t)).max() <= 1e-12
        assert (h >= 0).all() and (h <= 21).all()

    def test_swiss_roll_hole_avoids_rectangle(self):
        cloud = generate(DatasetSpec(kind="swiss_roll_hole", n=3000, seed=6))
        t = cloud.intrinsic_param
        h = cloud.coords[:, 1]
        inside = ((ROLL_HOLE_T[0] <= t) & (t <= ROLL_HOLE_T[1])
                  & (ROLL_HOLE_H[0] <= h) & (h <= ROLL_HOLE_H[1]))
        assert not inside.any()
        assert cloud.n == 3000

    def test_mobius_on_strip(self):
        cloud = generate(DatasetSpec(kind="mobius", n=1500, seed=7))
        t = cloud.intrinsic_param
        x, y, z = cloud.coords.T
        ring = np.sqrt(x * x + y * y)
        # ring - 1 = (w/2) cos(t/2) and z = (w/2) sin(t/2), so:
        assert np.abs((ring - 1.0) * np.sin(0.5 * t)
                      - z * np.cos(0.5 * t)).max() <= 1e-12
        assert ((ring - 1.0) ** 2 + z * z <= 0.25 + 1e-12).all()
        # the planar angle is the strip parameter itself
        angle = np.mod(np.arctan2(y, x), 2 * math.pi)
        diff = np.abs(angle - np.mod(t, 2 * math.pi))
        assert np.minimum(diff, 2 * math.pi - diff).max() <= 1e-9

    def test_noise_perturbs(self):
        clean = generate(DatasetSpec(kind="torus", n=200, seed=8))
        noisy = generate(DatasetSpec(kind="torus", n=200, seed=8, noise=0.05))
        deltas = np.linalg.norm(noisy.coords - clean.coords, axis=1)
        assert (deltas > 0).all()
        assert deltas.mean() < 0.5


class TestIntrinsicParam:
    def test_roll_parameter_orders_spiral_radius(self):
        cloud = generate(DatasetSpec(kind="swiss_roll", n=2000, seed=9))
        t = cloud.intrinsic_param
        radius = np.sqrt(cloud.coords[:, 0] ** 2 + cloud.coords[:, 2] ** 2)
        assert np.abs(radius - t).max() <= 1e-9


class TestCsv:
    def test_plain_rows(self, tmp_path):
        p = tmp_path / "pts.csv"
        p.write_text("0.5,1.5\n2.5,3.5\n4.5,5.5\n")
        cloud = load_csv(p)
        assert cloud.n == 3 and cloud.dim == 2
        assert cloud.coords[1, 1] == 3.5
        assert cloud.intrinsic_param is None

    def test_param_column(self, tmp_path):
        p = tmp_path / "pts.csv"
        p.write_text("x,y,param\n0,0,7\n1,0,8\n")
        cloud = load_csv(p)
        assert cloud.dim == 2
        assert cloud.intrinsic_param.tolist() == [7.0, 8.0]

    def test_ragged_row_named(self, tmp_path):
        p = tmp_path / "pts.csv"
        p.write_text("0,0\n1\n")
        with pytest.raises(ValueError, match="row 2"):
            load_csv(p)

    def test_non_numeric_named(self, tmp_path):
        p = tmp_path / "pts.csv"
        p.write_text("0,0\n1,zebra\n")
        with pytest.raises(ValueError, match="row 2"):
            load_csv(p)

    def test_empty_file(self, tmp_path):
        p = tmp_path / "pts.csv"
        p.write_text("")
        with pytest.raises(ValueError):
            load_csv(p)

    def test_generate_dispatches_to_csv(self, tmp_path):
        p = tmp_path / "pts.csv"
        p.write_text("0,0\n1,1\n")
        cloud = generate(DatasetSpec(kind="csv", path=str(p)))
        assert cloud.n == 2
