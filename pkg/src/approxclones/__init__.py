"""Approximate clones in ordinal elections.

Alpha-deletion and beta-swap clone measures, irresolute voting rules under
parallel-universe tie-breaking, and independence-axiom audits.
"""

from .axioms import (AxiomVerdict, Outcomes, Witness, check_independence_of_losers, check_isda,
                     check_smith_criterion, check_strong_independence, check_weak_independence, is_simple)
from .clones import CloneReport, CloneScore, alpha_deletion, beta_swap, clone_report, perfect_clones
from .core import (DomainError, MarginMatrix, Profile, ResourceError, condorcet_winner, margin_matrix,
                   position, remove_candidate, smith_set)
from .ingest import IngestError, RawElection, attach_parties, parse_election, serialize_profile
from .kernels import BACKEND
from .rules import (BeatpathMatrix, Rule, beatpath, borda, copeland, evaluate, irv, plurality, ranked_pairs,
                    schulze)
from .samplers import CultureSpec, sample

__version__ = "0.1.0"
