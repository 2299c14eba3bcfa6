"""What the nonlinear limiter does at a jump in the data.

High-degree polynomials forced through a step overshoot on both sides.
The limiter blends each cell's polynomial with two linear candidates,
weighted by oscillation indicators: smooth cells keep the high-order
polynomial, while the jump cell collapses onto the flatter line.
"""

import numpy as np

from shotr import AxisSeries, reconstruct_axis

times = np.arange(10.0)
values = np.where(times < 4.5, 0.0, 1.0)  # jump between samples 4 and 5
series = AxisSeries(times, values)

unlimited = reconstruct_axis(series, degree=3, limiter="none")
limited = reconstruct_axis(series, degree=3, limiter="cweno")

print("per-cell value range on a unit step (true data stays in [0, 1]):")
print(f"{'cell':>4} {'unlimited min/max':>24} {'limited min/max':>24}")
for i in range(series.times.size - 1):
    pts = np.linspace(times[i], times[i + 1], 200)
    u = unlimited.cells[i].value(pts)
    l = limited.cells[i].value(pts)
    print(f"{i:>4} {u.min():>11.4f} {u.max():>11.4f} {l.min():>11.4f} {l.max():>11.4f}")

overshoot_u = max(abs(unlimited.value(np.linspace(0, 9, 2000))).max() - 1.0, 0.0)
overshoot_l = max(abs(limited.value(np.linspace(0, 9, 2000))).max() - 1.0, 0.0)
print(f"\nworst overshoot beyond the data range: unlimited {overshoot_u:.3f}, "
      f"limited {overshoot_l:.2e}")

# on smooth data the limiter is invisible
smooth = AxisSeries(np.linspace(0, 1, 200), np.linspace(0, 1, 200) ** 3 + 30 * np.linspace(0, 1, 200))
pts = np.linspace(0, 1, 1000)
dev = np.abs(
    reconstruct_axis(smooth, 3, "cweno").value(pts)
    - reconstruct_axis(smooth, 3, "none").value(pts)
).max()
print(f"limited vs unlimited on smooth cubic data: max deviation {dev:.2e}")
