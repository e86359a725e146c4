"""mirrorwell - exact spectra of the mirror symmetric double and single wells.

The double well min[(x+d)^2, (x-d)^2] and its dual single well
max[(x+d)^2, (x-d)^2] are solved through confluent hypergeometric
connection conditions, cross-checked against a finite-difference oracle.
"""

__version__ = "1.0.0"
