class TransportError(ValueError):
    pass


class SceneError(TransportError):
    pass
