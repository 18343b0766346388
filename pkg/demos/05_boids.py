"""Flocking boids with positions and velocities as array-valued multivectors.

Run: python3 demos/05_boids.py [out.json]
"""
import sys

import numpy as np

from sparsega.boids import BoidParams, Flock, simulate, write_frames

params = BoidParams(visual_range=100, centering=0.01)
flock = Flock.random(60, seed=1, params=params)

# Positions are points (pseudovectors), e.g. the first boid:
print("boid 0:", flock.boids[0])
print("velocity 0:", flock.vels[0])

frames = simulate(flock, 200)


def nearest(frame):
    """Mean distance from each boid to its nearest neighbour."""
    xy = np.array([[b["x"], b["y"]] for b in frame["boids"]])
    d = np.linalg.norm(xy[:, None] - xy[None], axis=-1)
    np.fill_diagonal(d, np.inf)
    return float(d.min(axis=1).mean())


print(f"nearest-neighbour distance: step 1 {nearest(frames[0]):.1f}, step 200 {nearest(frames[-1]):.1f}")

if len(sys.argv) > 1:
    (path,) = write_frames(frames, sys.argv[1], "json", params)
    print("frames written to", path)
