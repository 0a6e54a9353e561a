"""The ten printed HPM brackets for A = B = alpha = u = v = 1, transcribed
term by term as {mode: [c0, c1, ...]} with c_k multiplying t**k."""

from fractions import Fraction as F

from couette.algebra import ExpPoly

X_TERMS = [
    ExpPoly({-1: [-1], 0: [1]}),
    ExpPoly({-1: [1], 0: [-1, 1]}),
    ExpPoly({-1: [-5, -2], 0: [5, -3, F(1, 2)]}),
    ExpPoly({-1: [19, 8, 1], 0: [-19, 11, F(-5, 2), F(1, 6)]}),
    ExpPoly({-1: [-81, -36, -6, F(-1, 3)], 0: [81, -45, F(21, 2), F(-7, 6), F(1, 24)]}),
]

Y_TERMS = [
    ExpPoly({-1: [-1], 0: [1]}),
    ExpPoly({-1: [3, 2], 0: [-3, 1]}),
    ExpPoly({-1: [-11, -6, -1], 0: [11, -5, F(1, 2)]}),
    ExpPoly({-1: [45, 24, 5, F(1, 3)], 0: [-45, 21, F(-7, 2), F(1, 6)]}),
    ExpPoly({-1: [-191, -100, -22, F(-7, 3), F(-1, 12)],
             0: [191, -91, F(35, 2), F(-3, 2), F(1, 24)]}),
]
