"""Archimedean equidistribution: roots, sampling, bumps, discrepancy, cubes."""
