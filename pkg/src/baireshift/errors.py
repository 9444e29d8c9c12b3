class BaireError(ValueError):
    """Base class for every domain error raised by this package."""


class AlphabetMismatch(BaireError):
    pass


class InvalidSymbol(BaireError):
    pass
