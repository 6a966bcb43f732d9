"""Minimax and its axioms on small elections: profiles, margins, methods, checkers, search."""

__version__ = "0.1.0"

from .profile import Ballot, DomainError, Profile, ballot_space, canonical_form  # noqa: E402
from .methods import METHODS, get_method  # noqa: E402

__all__ = ["Ballot", "DomainError", "Profile", "ballot_space", "canonical_form", "METHODS", "get_method", "__version__"]
