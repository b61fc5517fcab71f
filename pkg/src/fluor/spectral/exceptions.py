class SpectralError(ValueError):
    pass


class GridMismatchError(SpectralError):
    """Raised when two operands are sampled on different wavelength grids"""


class DisjointGridsError(SpectralError):
    pass


class OffGridError(SpectralError):
    """Raised when a wavelength is required to be a grid sample and is not"""
