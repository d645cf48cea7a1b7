class GapShearError(Exception):
    """Base class for every error raised by the library"""


class ParameterError(GapShearError, ValueError):
    """An argument lies outside the documented domain of an operation"""


class ContractError(GapShearError):
    """A caller obligation or an internal invariant was violated"""


class UnluckyRunError(GapShearError):
    """The restart budget of a randomized procedure ran out"""


class CorpusError(GapShearError):
    """Corpus generation could not satisfy the requested constraints"""
