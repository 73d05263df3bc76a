"""Independent reference computations shared by the test modules."""

from cluster_nz.cluster import value_trajectory
from cluster_nz.jacobian import chain_jacobian
from cluster_nz.ratfun import RatFun

A2_TAU = "(4 + 4*y2 + 3*y1*y2)/(1 + y2 + y1*y2)"
G3_TAU = (
    "(-2*(3*y1^4*y2^2*y3 + 3*y1^4*y2*y3 + 6*y1^3*y2^2*y3 + 3*y1^4*y2 + 4*y1^3*y2*y3 + 3*y1^2*y2^2*y3"
    " + 7*y1^3*y2 + 3*y1^3*y3 + y1^2*y2*y3 - 2*y1^3 + 3*y1^2*y2 - 2*y1^2*y3 - 3*y1^2 - 3*y1*y2 - 2*y2 + 1))"
    "/((y1 + 1)*(y1*y2 + y2 + 1)*(y1^3*y2*y3 + y1^2*y2*y3 + y1^2*y3 + y1^2 + 2*y1 + 1))"
)


def parse_product(text, n):
    """Parse a quotient of products of parenthesised polynomials."""
    num_text, den_text = text.split("/(", 1)
    den_text = "(" + den_text

    def product(s):
        s = s.strip()
        if s.startswith("(") and s.endswith(")") and s.count("(") == s.count(")"):
            inner = s[1:-1]
        else:
            inner = s
        out = RatFun.one(n)
        coef = 1
        if inner.startswith("-2*"):
            coef, inner = -2, inner[3:]
        depth, start = 0, 0
        parts = []
        for i, ch in enumerate(inner):
            if ch == "(":
                if depth == 0:
                    start = i + 1
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0:
                    parts.append(inner[start:i])
        for p in parts or [inner]:
            out = out * RatFun.parse(p, n)
        return out * coef

    return product(num_text) / product(den_text)


def fd_relative_error(g, y, h=1e-5):
    j = chain_jacobian(g, list(y))
    n = g.n

    def mu(point):
        return value_trajectory(g, point)[-1]

    worst = 0.0
    scale = max(abs(x) for r in j for x in r) or 1.0
    for c in range(n):
        step = h * y[c]
        up = list(y)
        dn = list(y)
        up[c] += step
        dn[c] -= step
        fu, fd = mu(up), mu(dn)
        for i in range(n):
            approx = (fu[i] - fd[i]) / (2 * step)
            worst = max(worst, abs(approx - j[i][c]) / scale)
    return worst
