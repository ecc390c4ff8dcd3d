"""Reference values used by the reproduction suite.

These are previously published benchmark numbers for the potential
families handled by this package: bound-state eigenvalues of the Scarf-II
potential at strength 30, the continuum transition locations of the four
short-range families, and the deep bound-state sequence of the regulated
Coulomb potential at strength 10 (from a large-interval extended-precision
study) together with its Richardson extrapolant tables.
"""

from __future__ import annotations

# Scarf-II (A = 30) bound states; the first two stabilize already at L = 10,
# the third pair is uncovered at L = 100.
SCARF2_BOUND_L10 = (
    2.374999999702702 + 12.272301129148877j,
    5.875000000021835 + 6.817945071620461j,
)
SCARF2_BOUND_THIRD_L100 = 7.374999997301000 + 1.363589013462076j

# A continuum eigenvalue at L = 10 whose eigenfunction drops abruptly at an
# endpoint: close to the real axis's bound states but not one of them.
SCARF2_CONTINUUM_L10 = 7.361943725638523 + 2.501634415578858j

# Continuum complex-to-real transition locations (double precision).
TRANSITION_POINTS = {
    "scarf2": 28.0,  # strength 30
    "rational4": 21.0,  # strength 30
    "rational3": 27.0,  # strength 30
    "step": 9.5,  # strength 3
}

# Regulated Coulomb (A = 10): the nine deepest bound states E_k, k = 1..9,
# ordered by decreasing |Im E| (deepest first).
REG_COULOMB_RE = (
    0.83298288,
    1.38356468,
    1.19465086,
    0.89645517,
    0.66476032,
    0.50352322,
    0.39157331,
    0.31203794,
    0.25397318,
)
REG_COULOMB_IM = (
    3.90859038,
    2.10981263,
    1.06386938,
    0.56168819,
    0.32272930,
    0.20043182,
    0.13250064,
    0.09200917,
    0.06644330,
)
REG_COULOMB_BOUND = tuple(
    complex(re, im) for re, im in zip(REG_COULOMB_RE, REG_COULOMB_IM)
)

# Reference Richardson extrapolant tables for {k^2 Re E_k} and {k^3 Im E_k},
# printed to 6 significant figures.  Column m has 9 - m entries.
REG_COULOMB_RE_INPUT = (
    0.83298, 5.53426, 10.7519, 14.3433, 16.6190, 18.1268, 19.1871, 19.9704, 20.5718,
)
REG_COULOMB_RE_EXTRAPOLANTS = {
    1: (10.2355, 21.1871, 25.1176, 25.7219, 25.6660, 25.5486, 25.4538, 25.3830),
    2: (26.6628, 29.0481, 26.6284, 25.5541, 25.2553, 25.1692, 25.1354),
    3: (29.8431, 25.0154, 24.4798, 24.8568, 25.0258, 25.0676),
    4: (23.8084, 24.2120, 25.1396, 25.1949, 25.1199),
    5: (24.2927, 25.5106, 25.2280, 25.0599),
}
REG_COULOMB_IM_INPUT = (
    3.90859, 16.8785, 28.7245, 35.9480, 40.3412, 43.2933, 45.4477, 47.1087, 48.4372,
)
REG_COULOMB_IM_EXTRAPOLANTS = {
    1: (29.8484, 52.4164, 57.6188, 57.9136, 58.0538, 58.3744, 58.7355, 59.0650),
    2: (63.7004, 62.8211, 58.3560, 58.3342, 59.1758, 59.8188, 60.2180),
    3: (62.5280, 55.3792, 58.3125, 60.2980, 60.8905, 61.0165),
    4: (53.5920, 59.7791, 61.7871, 61.4830, 61.1739),
    5: (61.0166, 62.5903, 61.3005, 60.9267),
}

# Expected bound-pair counts per (family, strength) at L = 10 and L = 100.
BOUND_PAIR_COUNTS = {
    ("scarf2", 30.0): (2, 3),
    ("rational4", 30.0): (1, 2),
    ("step", 3.0): (1, 2),
    ("coulomb_regulated", 10.0): (1, 4),
}
