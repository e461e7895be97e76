"""Independent verification and brute-force empirical checks."""
