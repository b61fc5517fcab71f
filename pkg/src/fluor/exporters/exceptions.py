class ExportError(Exception):
    pass
