"""
Custom exceptions for cat0-collapse.
"""


class Cat0Error(Exception):
    """Base exception for all cat0-collapse errors."""

    def __init__(self, message: str, error_code: str = None, details: dict = None):
        super().__init__(message)
        self.message = message
        self.error_code = error_code or "CAT0_ERROR"
        self.details = details or {}

    def __str__(self):
        if self.details:
            return f"[{self.error_code}] {self.message} - Details: {self.details}"
        return f"[{self.error_code}] {self.message}"


class ConfigurationError(Cat0Error):
    """Raised when configuration is invalid."""

    def __init__(self, message: str, config_key: str = None):
        details = {}
        if config_key:
            details['config_key'] = config_key
        super().__init__(message, "CONFIG_ERROR", details)
        self.config_key = config_key


class MalformedInputError(Cat0Error):
    """Raised when simplices, labels or documents are structurally wrong."""

    def __init__(self, message: str, item=None, field: str = None):
        details = {}
        if item is not None:
            details['item'] = item
        if field:
            details['field'] = field
        super().__init__(message, "MALFORMED_INPUT", details)
        self.item = item


class DocumentSyntaxError(MalformedInputError):
    """Raised when a complex document cannot be parsed at all."""

    def __init__(self, message: str, line: int = None, column: int = None):
        super().__init__(message)
        self.error_code = "DOCUMENT_SYNTAX"
        if line is not None:
            self.details['line'] = line
        if column is not None:
            self.details['column'] = column
        self.line = line
        self.column = column


class PreconditionError(Cat0Error):
    """Raised when an operation is called outside its precondition."""

    def __init__(self, message: str, operation: str = None, subject=None):
        details = {}
        if operation:
            details['operation'] = operation
        if subject is not None:
            details['subject'] = subject
        super().__init__(message, "PRECONDITION", details)
        self.operation = operation


class InvalidMetricError(Cat0Error):
    """Raised when edge lengths cannot be realized as Euclidean simplices."""

    def __init__(self, message: str, simplex=None, determinant: float = None, lengths=None):
        details = {}
        if simplex is not None:
            details['simplex'] = simplex
        if determinant is not None:
            details['determinant'] = determinant
        if lengths is not None:
            details['lengths'] = lengths
        super().__init__(message, "INVALID_METRIC", details)
        self.simplex = simplex
        self.determinant = determinant


class DegenerateSimplexError(Cat0Error):
    """Raised when a realization is requested for flat (degenerate) lengths."""

    def __init__(self, message: str, lengths=None):
        details = {}
        if lengths is not None:
            details['lengths'] = lengths
        super().__init__(message, "DEGENERATE_SIMPLEX", details)


class DegenerateInputError(Cat0Error):
    """Raised when points coincide or are collinear where a construction needs them apart."""

    def __init__(self, message: str, operation: str = None):
        details = {}
        if operation:
            details['operation'] = operation
        super().__init__(message, "DEGENERATE_INPUT", details)


class FanError(Cat0Error):
    """Raised when consecutive fan triangles do not share exactly one edge."""

    def __init__(self, message: str, position: int = None, triangles=None):
        details = {}
        if position is not None:
            details['position'] = position
        if triangles is not None:
            details['triangles'] = triangles
        super().__init__(message, "FAN_ERROR", details)
        self.position = position


class DomainError(Cat0Error):
    """Raised when a path evaluator is asked for a parameter outside its domain."""

    def __init__(self, message: str, parameter: float = None):
        details = {}
        if parameter is not None:
            details['parameter'] = parameter
        super().__init__(message, "DOMAIN_ERROR", details)
        self.parameter = parameter


class NoInteriorCrossingError(Cat0Error):
    """Raised when a balance point would have to sit on an edge endpoint."""

    def __init__(self, message: str, edge=None):
        details = {}
        if edge is not None:
            details['edge'] = edge
        super().__init__(message, "NO_INTERIOR_CROSSING", details)
        self.edge = edge


class CrossingError(Cat0Error):
    """Raised for geodesics that meet the collapsed simplex other than through two faces."""

    def __init__(self, message: str, kind: str = None):
        details = {}
        if kind:
            details['kind'] = kind
        super().__init__(message, "UNSUPPORTED_CROSSING", details)
        self.kind = kind


class GeodesicError(Cat0Error):
    """Raised when a neighborhood geodesic cannot be computed."""

    def __init__(self, message: str, source=None, target=None):
        details = {}
        if source is not None:
            details['source'] = source
        if target is not None:
            details['target'] = target
        super().__init__(message, "GEODESIC_ERROR", details)
