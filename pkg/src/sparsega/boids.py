"""Boids flocking in 2D projective GA, written against multivectors over arrays.

Boid positions are normalized points (grade-2 in G(2,0,1), coefficient 1 on
e12) and velocities are ideal points (zero e12 coefficient), both holding
one array entry per boid. Adding an ideal point to a point translates it.

Rules applied each step, all using the pairwise distances from the join:

1. cohesion: steer towards the mean position of visible neighbours;
2. separation: steer away from boids closer than ``min_distance``;
3. alignment: steer towards the mean velocity of visible neighbours;

followed by speed limiting, the position update, and reflection off the
bounds rectangle.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .algebra import Algebra


@dataclass
class BoidParams:
    visual_range: float = 75.0
    centering: float = 0.005
    min_distance: float = 20.0
    avoid: float = 0.05
    matching: float = 0.05
    min_speed: float = 0.0
    max_speed: float = 15.0
    width: float = 1000.0
    height: float = 1000.0


class Flock:
    def __init__(self, x, y, vx, vy, params: BoidParams | None = None, algebra: Algebra | None = None):
        self.alg = algebra or Algebra(2, 0, 1)
        self.params = params or BoidParams()
        x, y, vx, vy = (np.asarray(v, dtype=float) for v in (x, y, vx, vy))
        if x.ndim != 1 or not (x.shape == y.shape == vx.shape == vy.shape):
            raise ValueError("x, y, vx, vy must be 1-d arrays of equal length")
        if len(x) < 1:
            raise ValueError("need at least one boid")
        self.boids = self.alg.vector(np.array([np.ones_like(x), x, y])).dual()
        self.vels = self.alg.vector(np.array([np.zeros_like(x), vx, vy])).dual()
        self.step_count = 0

    @classmethod
    def random(cls, n: int, seed: int, params: BoidParams | None = None) -> "Flock":
        if n < 1:
            raise ValueError("need at least one boid")
        params = params or BoidParams()
        rng = np.random.default_rng(seed)
        x = rng.uniform(0, params.width, n)
        y = rng.uniform(0, params.height, n)
        vx, vy = rng.uniform(-params.max_speed / 2, params.max_speed / 2, (2, n))
        return cls(x, y, vx, vy, params)

    def __len__(self):
        return len(self.boids)

    def coordinates(self):
        """(x, y, vx, vy) arrays recovered by undualizing."""
        p = self.boids.undual()
        v = self.vels.undual()
        w = p.e0
        return p.e1 / w, p.e2 / w, v.e1, v.e2

    def step(self) -> None:
        prm = self.params
        boids, vels = self.boids, self.vels
        deltas = []
        for i, boid in enumerate(boids):
            distance = (boid & boids).norm().e
            neighbors = distance < prm.visual_range

            # Boids strive to stay together
            pos_avg = boids[neighbors].map(np.mean)
            dv = (pos_avg - boid) * prm.centering

            too_close = (distance < prm.min_distance) & (np.arange(len(distance)) != i)
            if prm.avoid and too_close.any():
                away = boid * int(too_close.sum()) - boids[too_close].map(np.sum)
                dv = dv + away * prm.avoid

            if prm.matching:
                vel_avg = vels[neighbors].map(np.mean)
                dv = dv + (vel_avg - vels[i]) * prm.matching
            deltas.append(dv)

        vels = vels + self.alg.stack(deltas)
        vels = self._limit_speed(vels)
        boids = boids + vels
        self.boids, self.vels = self._reflect(boids, vels)
        self.step_count += 1
        x, y, vx, vy = self.coordinates()
        if not all(np.isfinite(a).all() for a in (x, y, vx, vy)):
            raise FloatingPointError(f"non-finite boid state after step {self.step_count}")

    def _limit_speed(self, vels):
        prm = self.params
        speed = vels.undual().norm().e
        scale = np.ones_like(speed)
        fast = speed > prm.max_speed
        scale[fast] = prm.max_speed / speed[fast]
        slow = (speed < prm.min_speed) & (speed > 0)
        scale[slow] = prm.min_speed / speed[slow]
        return vels * scale

    def _reflect(self, boids, vels):
        p = boids.undual()
        v = vels.undual()
        w = p.e0
        x, y = p.e1 / w, p.e2 / w
        vx, vy = v.e1.copy(), v.e2.copy()
        x, vx = _reflect_axis(x, vx, self.params.width)
        y, vy = _reflect_axis(y, vy, self.params.height)
        ones = np.ones_like(x)
        boids = self.alg.vector(np.array([ones, x, y])).dual()
        vels = self.alg.vector(np.array([np.zeros_like(x), vx, vy])).dual()
        return boids, vels

    def frame(self) -> dict:
        x, y, vx, vy = self.coordinates()
        return {
            "step": self.step_count,
            "boids": [
                {"x": float(a), "y": float(b), "vx": float(c), "vy": float(d)}
                for a, b, c, d in zip(x, y, vx, vy)
            ],
        }


def _reflect_axis(pos, vel, upper):
    pos = pos.copy()
    low = pos < 0
    pos[low] = -pos[low]
    vel[low] = np.abs(vel[low])
    high = pos > upper
    pos[high] = 2 * upper - pos[high]
    vel[high] = -np.abs(vel[high])
    # A boid moving faster than the box is wide could still be outside.
    return np.clip(pos, 0, upper), vel


def simulate(flock: Flock, steps: int) -> list[dict]:
    frames = []
    for _ in range(steps):
        flock.step()
        frames.append(flock.frame())
    return frames


def frames_to_json(frames: list[dict]) -> str:
    return json.dumps(frames, separators=(",", ":"))


def frame_to_svg(frame: dict, params: BoidParams, size: int = 500) -> str:
    sx = size / params.width
    sy = size / params.height
    h = round(params.height * sy)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{h}" '
        f'viewBox="0 0 {size} {h}">',
        f'<rect width="{size}" height="{h}" fill="white" stroke="black"/>',
        f'<text x="4" y="14" font-size="12">step {frame["step"]}</text>',
    ]
    for b in frame["boids"]:
        cx, cy = b["x"] * sx, h - b["y"] * sy
        speed = math.hypot(b["vx"], b["vy"]) or 1.0
        tx, ty = cx + 6 * b["vx"] / speed, cy - 6 * b["vy"] / speed
        parts.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="2.5" fill="steelblue"/>')
        parts.append(
            f'<line x1="{cx:.2f}" y1="{cy:.2f}" x2="{tx:.2f}" y2="{ty:.2f}" stroke="steelblue"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_frames(frames: list[dict], out: str | Path, fmt: str, params: BoidParams) -> list[Path]:
    """JSON: one file holding the frame list. SVG: one standalone file per
    frame, written into ``out`` as a directory."""
    out = Path(out)
    if fmt == "json":
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(frames_to_json(frames))
        return [out]
    if fmt == "svg":
        out.mkdir(parents=True, exist_ok=True)
        paths = []
        for f in frames:
            p = out / f"frame_{f['step']:04d}.svg"
            p.write_text(frame_to_svg(f, params))
            paths.append(p)
        return paths
    raise ValueError(f"unknown format {fmt!r}; use json or svg")


__all__ = ["BoidParams", "Flock", "simulate", "write_frames", "frames_to_json", "frame_to_svg"]
