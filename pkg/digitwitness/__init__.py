"""digit-witness: constructive witnesses for prescribed digit-sum ratios."""

__version__ = "0.1.0"
