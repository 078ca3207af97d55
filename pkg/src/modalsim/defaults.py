"""Embedded calibration constants from the published mobility survey.

These are the per-mode statistics of the 650-response survey, transcribed
so the simulator runs without the external dataset. Criterion order is
always ecology, comfort, price, practicality, time, safety; mode order is
car, bike, bus, walk.

The survey sample is not representative of the national population, so
population synthesis reweights it with the national modal shares.
"""

# National modal shares (fraction of the population per usual mode). The
# published percentages (74 / 2 / 16 / 6) sum to 98%, the remainder being
# other modes; we renormalize over the four modeled modes.
_RAW_SHARES = {"car": 0.74, "bike": 0.02, "bus": 0.16, "walk": 0.06}
NATIONAL_SHARES = {m: v / sum(_RAW_SHARES.values()) for m, v in _RAW_SHARES.items()}

# Distance statistics per usual mode, in km: mean, stdev, min, max, median.
DISTANCE_STATS = {
    "car": {"mean": 21.29, "stdev": 23.1, "min": 2.0, "max": 190.0, "median": 15.0},
    "bike": {"mean": 6.43, "stdev": 6.68, "min": 1.0, "max": 50.0, "median": 5.0},
    "bus": {"mean": 11.16, "stdev": 13.59, "min": 1.0, "max": 95.0, "median": 5.55},
    "walk": {"mean": 1.80, "stdev": 1.44, "min": 0.2, "max": 9.0, "median": 1.5},
}

# Probability that a user of each mode lacks access to the car / the bus.
ACCESS_PROB = {
    "car": {"no_car": 0.0, "no_bus": 0.6119},
    "bike": {"no_car": 0.299, "no_bus": 0.1029},
    "bus": {"no_car": 0.5746, "no_bus": 0.0},
    "walk": {"no_car": 0.50, "no_bus": 0.0833},
}

# Mean criteria priorities per usual mode, on the survey's 0-10 scale.
MEAN_PRIORITIES = {
    "car": [5.65, 7.19, 5.63, 8.57, 7.79, 6.72],
    "bike": [8.3, 7.31, 7.08, 8.54, 7.68, 5.37],
    "bus": [6.76, 6.75, 7.44, 7.81, 7.37, 6.46],
    "walk": [7.27, 7.35, 7.58, 8.42, 6.7, 6.67],
}

# Mean evaluation of each mode over the six criteria, 0-10 scale: among the
# whole sample, among the mode's users, and among non-users. Medians are not
# published, so downstream derivations approximate group medians by these
# means (flagged as an approximation in the calibration provenance).
EVALUATIONS = {
    "car": {
        "all": [1.81, 7.69, 2.68, 6.32, 6.76, 7.29],
        "users": [2.52, 8.51, 3.84, 8.32, 8.21, 7.69],
        "non_users": [1.63, 7.47, 2.38, 5.81, 6.38, 7.19],
    },
    "bike": {
        "all": [9.21, 6.03, 7.74, 6.63, 6.6, 4.62],
        "users": [9.56, 7.39, 8.54, 8.23, 7.98, 5.38],
        "non_users": [9.05, 5.4, 7.37, 5.9, 5.96, 4.28],
    },
    "bus": {
        "all": [7.43, 5.83, 6.87, 5.78, 5.57, 7.46],
        "users": [7.77, 6.46, 7.25, 7.2, 6.81, 7.37],
        "non_users": [7.25, 5.49, 6.66, 5.0, 4.91, 7.5],
    },
    "walk": {
        "all": [9.81, 6.7, 9.75, 5.99, 2.98, 6.77],
        "users": [9.74, 8.12, 9.79, 8.01, 4.96, 7.12],
        "non_users": [9.83, 6.49, 9.74, 5.69, 2.69, 6.72],
    },
}

# Default per-mode caps (km) for discarding aberrant survey distances;
# chosen to bracket the published min/max ranges.
DISTANCE_CAPS = {"car": 195.0, "bike": 55.0, "bus": 100.0, "walk": 10.0}
