"""Independent oracles: monomial valuations and exact convex hulls."""

from fractions import Fraction


def hull(points):
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def area(vs):
    n = len(vs)
    return abs(sum(vs[i][0] * vs[(i + 1) % n][1] - vs[(i + 1) % n][0] * vs[i][1] for i in range(n))) / 2


def inside(poly, p):
    """``p`` lies in the closed convex polygon with counterclockwise vertices ``poly``."""
    n = len(poly)
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        if (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]) < 0:
            return False
    return True


def monomials(total):
    for a in range(total + 1):
        for b in range(total + 1 - a):
            yield a, b, total - a - b


def plane_line_valuation(a, b, c):
    """P^2, O = [0:0:1], Y1 = {x = 0}: order along x, then order of y^b on the line."""
    return a, b


def blowup_exceptional_valuation(a, b, c):
    """Bl_O P^2, Y1 = E_O, point = direction {y = 0}: chart x = u, y = u v.
    x^a y^b = u^(a+b) v^b."""
    return a + b, b


def blowup_line_valuation(a, b, c):
    """Bl_O P^2, Y1 = strict transform of {x = 0}, point on E_O: chart y = w, x = u w.
    x^a y^b = u^a w^(a+b)."""
    return a, a + b


def normalized_hull(valuation, degree, k):
    pts = [tuple(Fraction(v, k) for v in valuation(*m)) for m in monomials(degree * k)]
    return hull(pts)
