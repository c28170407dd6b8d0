class UserInputError(Exception): ...
class ConfigError(Exception): ...
class SchemaError(Exception): ...

class RingError(Exception): ...
class NotUnitError(RingError): ...


class ExtensionRequired(RingError):
    """The residue field is too small; ``minimal_degree`` is the smallest residue degree that works."""

    def __init__(self, message: str, minimal_degree: int | None = None):
        super().__init__(message)
        self.minimal_degree = minimal_degree


class SeriesError(Exception): ...
class PrecisionError(Exception): ...
class CongruenceError(Exception): ...
class CatalogError(Exception): ...
class FiberTableMismatch(CatalogError): ...
class SurfaceError(Exception): ...
class ManifestError(Exception): ...
class FixtureMismatch(Exception): ...
