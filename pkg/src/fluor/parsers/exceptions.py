class ParsingError(Exception):
    pass
