"""Exact determinantal calculus for one-dependent 0/1 processes.

Carries in column addition, permutation descents in several flavors,
group-extension carries and the connectivity process, all with exact
rational pattern probabilities, correlation kernels and brute-force
oracles to test them against.
"""

__version__ = "0.1.0"
