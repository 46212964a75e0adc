"""Exception hierarchy. Everything derives from ``TextureError`` (a ValueError)."""


class TextureError(ValueError):
    pass


class NotHermitian(TextureError):
    pass


class NotPSD(TextureError):
    pass


class TraceNotOne(TextureError):
    pass


class NotNormalized(TextureError):
    pass


class InvalidDim(TextureError):
    pass


class InvalidAlpha(TextureError):
    pass


class InvalidRank(TextureError):
    pass


class InvalidFunction(TextureError):
    pass


class EnsembleTooSmall(TextureError):
    pass


class NotFree(TextureError):
    pass


class FreeCompletionUndefined(TextureError):
    pass


class InvalidRecipe(TextureError):
    pass


class DimUnsupported(TextureError):
    pass


class TargetIsFreeState(TextureError):
    pass


class UnknownMeasure(TextureError):
    pass
