"""Shared germ fixtures: the worked examples and the unfurling witness.

``symmetric4_unfurled`` is the 4x4 symmetric unfurled kite of size 3;
``symmetric4_germ`` the two-parameter germ containing it.  The witness
returned by ``symmetric4_witness`` clears the off-pattern (2,4) entry by a
single det-1 row/column operation and hands over the kite coordinates as an
explicit substitution; the certifier re-verifies all of it symbolically.
"""

from singcoh.catalog import MatrixKind
from singcoh.poly import parse_polynomial
from singcoh.polymatrix import OpWitness, PolyMatrix

SYM_VARS = ("x11", "x12", "x13", "x22", "x23", "x33", "x44", "y1", "y2")


def _sym(rows, variables):
    entries = [[parse_polynomial(cell, variables) for cell in row] for row in rows]
    return PolyMatrix(entries, kind_tag=MatrixKind.symmetric(len(rows)))


def symmetric4_unfurled():
    """Unfurled kite of size 3 in the 4x4 symmetric matrices."""
    rows = [
        ["x11 + 2*x44*x13", "x12 + 2*x44*x23", "x13 + 2*x44*x33", "0"],
        ["x12 + 2*x44*x23", "x22 - 35*x12*x44", "x23", "(7*x12 - 5)*x44"],
        ["x13 + 2*x44*x33", "x23", "x33", "0"],
        ["0", "(7*x12 - 5)*x44", "0", "x44"],
    ]
    return _sym(rows, SYM_VARS[:7])


def symmetric4_germ():
    """Two-parameter germ specializing to the unfurled kite at y = 0."""
    rows = [
        ["x11 + 2*x44*x13", "x12 + 2*x44*x23", "x13 + 2*x44*x33", "y1"],
        ["x12 + 2*x44*x23", "x22 - 35*x12*x44", "x23 + y1*x11^2", "(7*x12 - 5)*x44"],
        ["x13 + 2*x44*x33", "x23 + y1*x11^2", "x33 + y2*x22^2", "y2"],
        ["y1", "(7*x12 - 5)*x44", "y2", "x44"],
    ]
    return _sym(rows, SYM_VARS)


def symmetric4_witness():
    """Witness unfurling the size-3 kite: one shear plus the coordinate map."""
    variables = SYM_VARS[:7]
    left = PolyMatrix(
        [[parse_polynomial(c, variables) for c in row] for row in [
            ["1", "0", "0", "0"],
            ["0", "1", "0", "5 - 7*x12"],
            ["0", "0", "1", "0"],
            ["0", "0", "0", "1"],
        ]]
    )
    left_inverse = PolyMatrix(
        [[parse_polynomial(c, variables) for c in row] for row in [
            ["1", "0", "0", "0"],
            ["0", "1", "0", "7*x12 - 5"],
            ["0", "0", "1", "0"],
            ["0", "0", "0", "1"],
        ]]
    )
    substitution = {
        "x1_1": "x11 + 2*x44*x13",
        "x1_2": "x12 + 2*x44*x23",
        "x1_3": "x13 + 2*x44*x33",
        "x2_2": "x22 + 35*x12*x44 - 49*x12^2*x44 - 25*x44",
        "x2_3": "x23",
        "x3_3": "x33",
        "x4_4": "x44",
    }
    return OpWitness(
        left,
        left_inverse,
        substitution={k: parse_polynomial(v, variables) for k, v in substitution.items()},
    )


GENERAL_VARS = tuple(
    [f"x{i}{j}" for i in range(1, 5) for j in range(1, 5)] + ["x55", "y1", "y2", "y3", "y4"]
)


def general5_germ():
    """5x5 general germ: kite body plus a perturbation column vanishing at y = 0."""
    g = ["y1*x11", "y2 + y1*x23", "y3*x33^2", "y4*x12 - 7*y3"]
    rows = []
    for i in range(1, 5):
        rows.append([f"x{i}{j}" for j in range(1, 5)] + [g[i - 1]])
    rows.append(["y1", "y2", "y3", "y4", "x55"])
    entries = [[parse_polynomial(cell, GENERAL_VARS) for cell in row] for row in rows]
    return PolyMatrix(entries, kind_tag=MatrixKind.general(5))


RECT_VARS = ("x11", "x12", "x13", "x21", "x22", "x23", "x34", "x45",
             "y1", "y2", "y3", "y4")


def rect45_germ():
    """4x5 rectangular germ (transposed kind) containing a length-2 kite at y = 0."""
    rows = [
        ["x11", "x12", "x13", "y1*x11", "y2*x13^2"],
        ["x21", "x22", "x23", "y4*x22", "y3 + y1*x23"],
        ["y1", "y2*x34", "y3", "x34", "y4"],
        ["y1", "y2", "y3*x45", "y4 - y3*x11", "x45"],
    ]
    entries = [[parse_polynomial(cell, RECT_VARS) for cell in row] for row in rows]
    return PolyMatrix(entries, kind_tag=MatrixKind.rectangular(5, 4))
