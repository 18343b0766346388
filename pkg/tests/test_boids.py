import json
import math

import numpy as np
import pytest

from sparsega.boids import BoidParams, Flock, frames_to_json, simulate, write_frames


def _distance(flock):
    x, y, _, _ = flock.coordinates()
    return math.hypot(x[1] - x[0], y[1] - y[0])


def test_same_seed_same_frames():
    a = frames_to_json(simulate(Flock.random(30, seed=7), 20))
    b = frames_to_json(simulate(Flock.random(30, seed=7), 20))
    c = frames_to_json(simulate(Flock.random(30, seed=8), 20))
    assert a == b and a != c


def test_lone_boid_moves_straight():
    flock = Flock([100.0], [200.0], [3.0], [-1.0])
    simulate(flock, 5)
    x, y, vx, vy = flock.coordinates()
    assert np.allclose([x[0], y[0], vx[0], vy[0]], [115.0, 195.0, 3.0, -1.0])


def test_cohesion_pulls_pair_together():
    flock = Flock([100.0, 150.0], [100.0, 100.0], [0.0, 0.0], [0.0, 0.0], BoidParams(avoid=0))
    before = _distance(flock)
    flock.step()
    after = _distance(flock)
    # each boid moves centering * 25 = 0.125 toward the other
    assert after < before
    assert after == pytest.approx(before - 0.25)


def test_separation_pushes_close_pair_apart():
    prm = BoidParams(centering=0, matching=0)
    flock = Flock([100.0, 105.0], [100.0, 100.0], [0.0, 0.0], [0.0, 0.0], prm)
    before = _distance(flock)
    flock.step()
    assert _distance(flock) > before


def test_speed_limit_and_bounds():
    prm = BoidParams(max_speed=5.0, width=100.0, height=100.0)
    flock = Flock([99.0], [50.0], [40.0], [0.0], prm)
    flock.step()
    x, y, vx, vy = flock.coordinates()
    assert 0 <= x[0] <= 100 and math.hypot(vx[0], vy[0]) <= 5.0 + 1e-9
    assert vx[0] < 0  # bounced off the right wall


def test_frame_schema():
    frames = simulate(Flock.random(4, seed=1), 3)
    assert [f["step"] for f in frames] == [1, 2, 3]
    for f in frames:
        assert set(f) == {"step", "boids"} and len(f["boids"]) == 4
        for b in f["boids"]:
            assert set(b) == {"x", "y", "vx", "vy"}
            assert all(math.isfinite(v) for v in b.values())


def test_write_json_and_svg(tmp_path):
    prm = BoidParams()
    frames = simulate(Flock.random(5, seed=3, params=prm), 2)
    (path,) = write_frames(frames, tmp_path / "out.json", "json", prm)
    assert json.loads(path.read_text()) == frames
    paths = write_frames(frames, tmp_path / "svg", "svg", prm)
    assert [p.name for p in paths] == ["frame_0001.svg", "frame_0002.svg"]
    text = paths[0].read_text()
    assert text.startswith("<svg") and text.count("<circle") == 5
    with pytest.raises(ValueError):
        write_frames(frames, tmp_path / "x", "png", prm)


def test_bad_input():
    with pytest.raises(ValueError):
        Flock([1.0, 2.0], [1.0], [0.0], [0.0])
    with pytest.raises(ValueError):
        Flock.random(0, seed=0)
