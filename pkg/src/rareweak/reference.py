"""Benchmark KS/HC/CB thresholds for 15 RW settings, as printed to 4 decimals.

``None`` marks an infinite class boundary. Two ``epsilon = 0`` HC entries are
not reproduced by a numerically stable maximizer; see ``KNOWN_DISCREPANCIES``.
"""

# (tau, epsilon, z_ks, z_hc, z_cb)
REFERENCE_THRESHOLDS = (
    (2.0, 0.0, 1.0, 3.3514, None),
    (2.0, 0.001, 1.0, 3.0707, 4.4534),
    (2.0, 0.01, 1.0, 2.5203, 3.2976),
    (2.0, 0.1, 1.0, 1.7574, 2.0986),
    (2.0, 0.5, 1.0, 1.0000, 1.0),
    (4.0, 0.0, 2.0, 3.3514, None),
    (4.0, 0.001, 2.0, 3.6377, 3.7267),
    (4.0, 0.01, 2.0, 3.0965, 3.1488),
    (4.0, 0.1, 2.0, 2.5268, 2.5493),
    (4.0, 0.5, 2.0, 2.0000, 2.0),
    (6.0, 0.0, 3.0, 8.1607, None),
    (6.0, 0.001, 3.0, 4.1454, 4.1511),
    (6.0, 0.01, 3.0, 3.7631, 3.7659),
    (6.0, 0.1, 3.0, 3.3652, 3.3662),
    (6.0, 0.5, 3.0, 3.0000, 3.0),
)

# (tau, epsilon) -> explanation of why the printed HC value is not reproduced
KNOWN_DISCREPANCIES = {
    (4.0, 0.0): "reference value repeats the tau=2 entry; stable maximizer gives 7.6394",
    (6.0, 0.0): (
        "reference value is where 1 - Phi(z) underflows in double precision; "
        "stable maximizer gives 11.7547"
    ),
}
