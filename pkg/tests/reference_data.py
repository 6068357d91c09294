"""Frozen reference values shared by the unit and acceptance tests."""

# Basis triple products, coefficients of (e1, e2) as functions of (a, b, c).
TABLE1 = {
    (1, 1, 1): lambda a, b, c: (a, 0),
    (2, 2, 2): lambda a, b, c: (0, c),
    (1, 1, 2): lambda a, b, c: (0, a),
    (1, 2, 1): lambda a, b, c: (b, -a),
    (2, 1, 1): lambda a, b, c: (0, a),
    (1, 2, 2): lambda a, b, c: (c, 0),
    (2, 1, 2): lambda a, b, c: (-c, b),
    (2, 2, 1): lambda a, b, c: (c, 0),
}

# Five-fold products of basis vectors, computed symbolically with sympy in generic
# (a, b, c) from the closed-form triple product and frozen here.
TABLE2 = {
    (1, 1, 1, 1, 1): lambda a, b, c: (a * a, 0),
    (2, 1, 1, 1, 1): lambda a, b, c: (0, a * a),
    (1, 2, 1, 1, 1): lambda a, b, c: (a * b, -a * a),
    (1, 1, 2, 1, 1): lambda a, b, c: (0, a * a),
    (2, 2, 1, 1, 1): lambda a, b, c: (a * c, 0),
    (2, 1, 2, 1, 1): lambda a, b, c: (-a * c, a * b),
    (2, 1, 1, 2, 1): lambda a, b, c: (a * c, 0),
    (2, 1, 1, 1, 2): lambda a, b, c: (-a * c, a * b),
    (1, 2, 2, 1, 1): lambda a, b, c: (a * c, 0),
    (1, 2, 1, 2, 1): lambda a, b, c: (b * b - a * c, -a * b),
}

# Plausible but wrong values for two rows; the evaluated product differs.
WRONG_ROWS = {
    (1, 1, 1, 1, 1): lambda a, b, c: (c, 0),
    (1, 2, 1, 1, 1): lambda a, b, c: (a * b, -a * c),
}
