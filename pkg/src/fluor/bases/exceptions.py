class BasisError(ValueError):
    pass


class DegenerateBasisError(BasisError):
    pass


class DataFileError(BasisError):
    """A tabulated data file is missing or unreadable"""
    pass
