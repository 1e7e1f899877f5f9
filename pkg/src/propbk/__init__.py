"""Hypergraph two-coloring laboratory for property B_k.

Submodules: :mod:`hypergraph` (representation, generators, .hg format),
:mod:`ordering` (numerations, first-k/last-k sets, bad pairs, dense edges),
:mod:`exact` (exhaustive deciders and minimal-counterexample search),
:mod:`randomized` (colorers and local-lemma checks), :mod:`analytics`
(closed forms, bound evaluators, audits), :mod:`montecarlo` (seeded
estimators) and :mod:`cli`.
"""

__version__ = "0.1.0"
