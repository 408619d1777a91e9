import json
from pathlib import Path

import pytest

from polybound import FElem, UPoly, parse_poly

DATA = Path(__file__).parent / "data"

W = FElem.w()

LIN = "x1 - x2"
Q = "(x1*x2 - 1)^2 + x2^2"
Q_PLUS_X1 = "(x1*x2 - 1)^2 + x2^2 + x1"
MOTZKIN = "x1^4*x2^2 + x1^2*x2^4 - 3*x1^2*x2^2 + 1"
QUAD = "x1^2 + x2^2 - 3*x1*x2 + 1"
QUARTIC_FORM = "x1^4 + x2^4 + x1^2*x2^2 - 3*x1^3*x2 - 3*x1*x2^3"
CONVEX_CANDIDATE = "x1^4 + x2^4 + 10*x1^2*x2^2"


def dense(d):
    """Sum of all monomials x1^i x2^j with i + j <= d."""
    return " + ".join(f"x1^{i}*x2^{j}" for i in range(d + 1) for j in range(d + 1 - i))


def P(text, vars=None):
    return parse_poly(text, vars)


def wpoly(*coeffs):
    """Element of Q[w] from ascending coefficients."""
    out = FElem(0)
    for k, c in enumerate(coeffs):
        out = out + FElem(c) * W**k
    return out


def tpoly(*coeffs, var="t"):
    return UPoly(list(coeffs), var)


def signs(s):
    return [{"+": 1, "-": -1, "0": 0}[c] for c in s]


@pytest.fixture(scope="session")
def golden_phi():
    return json.loads((DATA / "golden_phi.json").read_text())
