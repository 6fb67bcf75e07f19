"""Published benchmark values for the three Knudsen-layer problems.

Each table maps the accommodation coefficient to the printed values, in
the column order given by the matching ``*_COLUMNS`` tuple.
"""

import math

KRAMERS_REFERENCE = {"bgk": 1.01619, "shakhov": 1.01837}

# Pr * eta_t; the first two columns are high-accuracy kinetic solutions
THERMAL_SLIP_COLUMNS = (
    ("reference", "bgk", None),
    ("reference", "shakhov", None),
    ("moments", "bgk", 12),
    ("moments", "shakhov", 12),
    ("moments", "bgk", 84),
    ("moments", "shakhov", 84),
)
THERMAL_SLIP = {
    0.1: (0.264178, 0.266064, 0.263578, 0.265470, 0.264101, 0.265989),
    0.2: (0.278151, 0.281655, 0.277030, 0.280570, 0.278009, 0.281521),
    0.3: (0.291924, 0.296794, 0.290360, 0.295311, 0.291728, 0.296615),
    0.4: (0.305502, 0.311501, 0.303568, 0.309703, 0.305263, 0.311287),
    0.5: (0.318891, 0.325791, 0.316657, 0.323758, 0.318619, 0.325554),
    0.6: (0.332095, 0.339683, 0.329630, 0.337485, 0.331799, 0.339431),
    0.7: (0.345120, 0.353193, 0.342487, 0.350894, 0.344808, 0.352935),
    0.8: (0.357969, 0.366335, 0.355231, 0.363994, 0.357650, 0.366077),
    0.9: (0.370648, 0.379125, 0.367863, 0.376794, 0.370328, 0.378873),
    1.0: (0.383161, 0.391575, 0.380287, 0.389303, 0.382847, 0.391335),
}

# zeta for the BGK model; first column is a high-accuracy kinetic solution
TEMPERATURE_JUMP_ORDERS = (3, 5, 7, 9, 11, 13)
TEMPERATURE_JUMP = {
    0.1: (21.4501, 21.0856, 21.3565, 21.3957, 21.4119, 21.4208, 21.4263),
    0.3: (6.63051, 6.31159, 6.55416, 6.58698, 6.60028, 6.60742, 6.61185),
    0.5: (3.62913, 3.35382, 3.56804, 3.59507, 3.60574, 3.61139, 3.61487),
    0.6: (2.86762, 2.61342, 2.81345, 2.83779, 2.84726, 2.85224, 2.85529),
    0.7: (2.31753, 2.08401, 2.26984, 2.29162, 2.29997, 2.30432, 2.30698),
    0.9: (1.57036, 1.37681, 1.53420, 1.55126, 1.55758, 1.56081, 1.56276),
    1.0: (1.30272, 1.12868, 1.27183, 1.28673, 1.29213, 1.29488, 1.29652),
}


def thermal_slip_entries():
    """``(model, order, chi, value)`` for every moment-method entry."""
    out = []
    for chi, row in THERMAL_SLIP.items():
        for (source, model, order), value in zip(THERMAL_SLIP_COLUMNS, row):
            if source == "moments":
                out.append((model, order, chi, value))
    return out


def temperature_jump_entries():
    """``(order, chi, value)`` for every moment-method entry."""
    return [
        (order, chi, value)
        for chi, row in TEMPERATURE_JUMP.items()
        for order, value in zip(TEMPERATURE_JUMP_ORDERS, row[1:])
    ]


def printed_half_ulp(value: float) -> float:
    """Half a unit in the last printed place (tables use six significant digits)."""
    return 0.5 * 10.0 ** (math.floor(math.log10(abs(value))) - 5)
