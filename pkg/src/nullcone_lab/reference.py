"""Printed values of the two worked examples, used by the ``paper-examples`` suite."""

from __future__ import annotations

SYMPLECTIC_EXAMPLE = {
    "t": 2,
    "n": 4,
    "block_matrix": [[1, 3, 1, 0], [2, 2, 0, 0], [0, 1, 3, 1], [0, 0, 2, 2]],
    "leads": {
        (1, 2): "y[1,1]*y[3,2]",
        (2, 3): "y[1,2]*y[3,3]",
        (3, 4): "y[1,3]*y[3,4]",
        (1, 3): "y[2,1]*y[4,3]",
        (2, 4): "y[2,2]*y[4,4]",
        (1, 4): "y[2,1]*y[4,4]",
    },
    "height": 5,
}

GL_EXAMPLE = {
    "m": 5,
    "t": 3,
    "n": 5,
    "block_matrix_Y": [[12, 11, 10], [9, 14, 13], [6, 8, 15], [3, 5, 7], [1, 2, 4]],
    "block_matrix_Z": [[12, 9, 6, 3, 1], [14, 11, 8, 5, 2], [15, 13, 10, 7, 4]],
    "leads": {
        "c[1,1]": "y[1,1]*z[1,1]",
        "c[1,2]": "y[1,2]*z[2,2]",
        "c[1,3]": "y[1,3]*z[3,3]",
        "c[2,1]": "y[2,2]*z[2,1]",
        "c[2,2]": "y[2,3]*z[3,2]",
        "c[3,1]": "y[3,3]*z[3,1]",
        "det Y[4..5][1..2]": "y[4,1]*y[5,2]",
        "det Y[3..5][1..3]": "y[3,1]*y[4,2]*y[5,3]",
        "det Y[2..4][1..3]": "y[2,1]*y[3,2]*y[4,3]",
        "det Z[1..2][4..5]": "z[1,4]*z[2,5]",
        "det Z[1..3][3..5]": "z[1,3]*z[2,4]*z[3,5]",
        "det Z[1..3][2..4]": "z[1,2]*z[2,3]*z[3,4]",
    },
}
