"""Deadline-aware multi-pipeline XR runtime simulator with QoE telemetry.

Subpackages:
    runtime     typed event streams, simulated/wall clocks, plugin scheduler
    perception  synthetic sensors, VIO proxy, RK4 strapdown integrator
    visual      rendering stand-in, pose prediction, reprojection, holograms
    audio       ambisonic encode/rotate/zoom and binaural rendering
    metrics     motion-to-photon, frame stats, SSIM/FLIP, trajectory error
    harness     session configs, wiring, dataset I/O, command-line interface
"""

__version__ = "0.1.0"
