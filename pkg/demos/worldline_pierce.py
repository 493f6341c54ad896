"""Where a worldline crosses a fixed-time slice.

The closed circle in the x1-x4 plane pierces t = t0 at two, one, or zero
points depending on t0, with speed classification flipping from timelike
to spacelike partway up. Straight lines get boosted and re-intersected.
Ends by writing the circle's pierce table as CSV.
"""
import io
import math

from fourvel import (boost_worldline, classify_speed, make_worldline,
                     pierce_points, write_pierce_csv)


def circle_slices():
    w = make_worldline("circle-x1x4", radius=1.0)
    print("unit circle in the x1-x4 plane, pierce points by slice time:")
    for t0 in (0.0, 0.5, math.sin(math.pi / 4) + 1e-3, 0.9, 1.0, 1.5):
        pts = pierce_points(w, t0)
        desc = ", ".join(
            f"x1={p.event.x1:+.4f} {p.classification}"
            + (" (tangent)" if p.tangent else "")
            for p in pts) or "none"
        print(f"  t0 = {t0:6.4f}: {len(pts)} point(s)  {desc}")
    print("  crossover to spacelike at t0 = sin(pi/4) =",
          f"{math.sin(math.pi / 4):.6f}")


def arc_classification():
    w = make_worldline("circle-x1x4", radius=1.0)
    print("\nspeed classification around the circle:")
    for lam in (0.0, math.pi / 6, math.pi / 4, math.pi / 3, math.pi / 2):
        print(f"  lambda = {lam:6.4f}: {classify_speed(w, lam)}")


def boosted_lines():
    w = make_worldline("line", v=(0.3, 0.1, -0.2), lam_range=(-5.0, 5.0))
    print("\nstraight line under x1-boosts, pierce at t0 = 0.7:")
    for v in (0.0, 0.5, 0.9, -0.9):
        pts = pierce_points(boost_worldline(w, v), 0.7)
        p = pts[0]
        u4 = p.u[3] if p.u is not None else None
        print(f"  boost v = {v:+.1f}: x1 = {p.event.x1:+.6f}, "
              f"{p.classification}, u4 = {u4}")


def csv_export():
    w = make_worldline("circle-x1x4", radius=1.0)
    pts = pierce_points(w, 0.5)
    buf = io.StringIO()
    write_pierce_csv(pts, buf)
    print("\nCSV export of the t0 = 0.5 table:")
    print(buf.getvalue().rstrip())


def main():
    circle_slices()
    arc_classification()
    boosted_lines()
    csv_export()


if __name__ == "__main__":
    main()
