"""noethercheck: mechanical verification of constructive rationality proofs
for invariant fields of p-group actions on rational function fields."""

__version__ = "0.1.0"
