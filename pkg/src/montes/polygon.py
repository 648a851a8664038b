"""Newton polygon geometry.

Point clouds live in Z^2: abscissas index phi-adic digits, ordinates are
valuations (always integers in the scale of the working valuation).  Slopes
are exact Fractions.  A "principal" polygon keeps only the sides of strictly
negative slope, ordered by increasing slope, which is how they come off the
lower convex hull.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvariantViolation, NoPoints


@dataclass(frozen=True)
class Side:
    x0: int
    y0: int
    x1: int
    y1: int

    @property
    def slope(self):
        return Fraction(self.y1 - self.y0, self.x1 - self.x0)

    @property
    def h(self):
        """Positive numerator of -slope (meaningful for negative slopes)."""
        return -self.slope.numerator

    @property
    def e(self):
        return self.slope.denominator

    @property
    def width(self):
        return self.x1 - self.x0

    @property
    def height(self):
        return self.y0 - self.y1

    @property
    def steps(self):
        """Number of lattice steps along the side: d = gcd(width, height)."""
        return self.width // self.e


def lower_hull(points):
    """Vertices of the lower convex hull, left to right.

    Collinear interior points are dropped, so consecutive vertices always
    define sides of strictly increasing slope.
    """
    pts = sorted(set(points))
    if not pts:
        raise NoPoints("lower hull of an empty point set")
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (xa, ya), (xb, yb) = hull[-2], hull[-1]
            if (xb - xa) * (p[1] - ya) - (yb - ya) * (p[0] - xa) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def principal_sides(points):
    """Sides of negative slope of the lower hull of the cloud."""
    hull = lower_hull(points)
    sides = []
    for (xa, ya), (xb, yb) in zip(hull, hull[1:]):
        if yb < ya:
            sides.append(Side(xa, ya, xb, yb))
    return sides


def cut_sides(sides, hcut):
    """Keep the sides of slope strictly below -hcut (hcut a non-negative
    int).  They form a prefix of the side list."""
    return [s for s in sides if s.slope < -hcut]


def polygon_index(sides):
    """Lattice points below or on the polygon, strictly above the horizontal
    through its last point, in columns after the first vertex.

    Computed by the closed formula sum (E_i H_i - E_i - H_i + d_i)/2 over the
    sides plus the cross terms sum_{i<j} E_i H_j.
    """
    total = 0
    for i, s in enumerate(sides):
        E, H, d = s.width, s.height, s.steps
        t = E * H - E - H + d
        if t % 2:
            raise InvariantViolation("odd lattice-point count on a side")
        total += t // 2
        for later in sides[i + 1:]:
            total += E * later.height
    return total


def cut_index(sides, hcut, weight=1):
    """weight * (index of the slope < -hcut cut, re-based as a standalone
    polygon, minus the triangle correction hcut*l*(l-1)/2)."""
    cut = cut_sides(sides, hcut)
    ell = sum(s.width for s in cut)
    return weight * (polygon_index(cut) - hcut * ell * (ell - 1) // 2)


def region_index(sides, hcut):
    """Exact count of lattice points (x, y) with x >= 1 lying below or on the
    cut polygon and strictly above the line of slope -hcut through its last
    point.

    Matches cut_index/weight when the polygon starts at abscissa 0.  When it
    starts at abscissa 1 (the expansion modulus divides the polynomial) the
    column x = 1 contributes its full height.
    """
    cut = cut_sides(sides, hcut)
    if not cut:
        return 0
    x0, y0 = cut[0].x0, cut[0].y0
    xt, yt = cut[-1].x1, cut[-1].y1
    if x0 > 1:
        raise InvariantViolation("cut polygon starts past abscissa 1")
    base = polygon_index(cut)
    col = (y0 - yt) if x0 == 1 else 0
    j = xt - max(1, x0)
    return base + col - hcut * j * (j + 1) // 2


def affine_h(points, h):
    """The shear (x, y) -> (x, y - h*x); slopes drop by h."""
    return [(x, y - h * x) for (x, y) in points]
