"""Exception types raised across the package."""


class EntanglerForgeError(Exception):
    """Base class for all package errors."""


class NotUnitary(EntanglerForgeError, ValueError):
    """Input matrix fails the unitarity check."""


class NotEntangling(EntanglerForgeError, ValueError):
    """Gate cannot create entanglement (Omega is numerically zero)."""


class AlreadyMaximal(EntanglerForgeError, ValueError):
    """Input state is already maximally entangled."""


class OutOfRegime(EntanglerForgeError, ValueError):
    """A gate violates the assumptions under which a bound holds."""


class DegenerateCore(EntanglerForgeError, ValueError):
    """Interaction core has a single distinct squared eigenphase."""


class TargetOutOfRange(EntanglerForgeError, ValueError):
    """Requested concurrence lies outside the reachable band."""


class ConcurrenceMismatch(EntanglerForgeError, ValueError):
    """Two states with different concurrence cannot be locally connected."""


class BadBudget(EntanglerForgeError, ValueError):
    """Oracle budget is malformed."""


class BudgetExhausted(EntanglerForgeError, RuntimeError):
    """Run-count search exceeded its cap."""
