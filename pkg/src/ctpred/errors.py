"""Exception hierarchy shared by all ctpred modules."""


class CtpError(Exception):
    """Base class for all ctpred errors."""


class InvalidGraph(CtpError):
    """A Graph violates one of its structural invariants."""


class MalformedPath(CtpError):
    """A path references unknown edges or does not form an s-t chain."""


class InvalidInstance(CtpError):
    """An instance violates a budget or consistency invariant."""


class EpsilonRangeError(CtpError):
    """epsilon outside the validated range for the chosen strategy family."""


class WrongStrategyError(CtpError):
    """Strategy applied to an instance it does not support."""


class ContractViolation(CtpError):
    """A strategy broke the engine contract (e.g. walked a known-blocked edge)."""


class ModeError(CtpError):
    """Deterministic-mode aggregation requested for a randomized strategy."""


class UnsupportedStrategy(CtpError):
    """Exact expectation needs a strategy exposing discrete decision distributions."""


class ZeroOptError(CtpError):
    """Competitive ratio undefined because the offline optimum costs zero."""


class SeedRequired(CtpError):
    """A randomized strategy was run without a seed."""


class InfeasibleBudget(CtpError):
    """Adversary budget leaves no guaranteed-free candidate."""


class SizeError(CtpError):
    """Instance family too large for exact game solving."""


class UnknownTag(CtpError):
    """Unrecognized theorem/family tag."""


class FamilyError(CtpError):
    """Malformed or empty instance family."""


class LPInfeasible(CtpError):
    """Linear program has no feasible point."""


class LPUnbounded(CtpError):
    """Linear program objective is unbounded."""
