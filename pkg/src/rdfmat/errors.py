"""Exception hierarchy shared by every stage of the pipeline."""


class RdfmatError(Exception):
    """Base class for all errors raised by rdfmat."""


class MappingSyntaxError(RdfmatError):
    def __init__(self, line, col, message):
        self.line = line
        self.col = col
        self.message = message
        super().__init__(f"line {line}, col {col}: {message}")


class MappingSemanticError(RdfmatError):
    pass


class DuplicateIdError(MappingSemanticError):
    def __init__(self, map_id):
        self.map_id = map_id
        super().__init__(f"duplicate triples map {map_id}")


class SourceError(RdfmatError):
    pass


class RaggedRowError(SourceError):
    def __init__(self, line, expected, got):
        self.line = line
        self.expected = expected
        self.got = got
        super().__init__(f"line {line}: expected {expected} cells, got {got}")


class SourceEncodingError(SourceError):
    pass


class HeaderError(SourceError):
    pass


class EmbeddedDelimiterError(SourceError):
    pass


class InvalidFractionError(RdfmatError, ValueError):
    pass


class UnboundColumnError(RdfmatError):
    def __init__(self, columns, map_id=None):
        self.columns = list(columns)
        self.map_id = map_id
        where = f" in {map_id}" if map_id else ""
        super().__init__(f"unbound column(s){where}: {', '.join(self.columns)}")


class MissingSourceError(RdfmatError):
    def __init__(self, source_name):
        self.source_name = source_name
        super().__init__(f"no source table named {source_name!r}")


class UnknownPlaceholderError(RdfmatError, KeyError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"template placeholder {name!r} has no value slot")

    def __str__(self):
        return self.args[0]


class ConfigError(RdfmatError):
    pass
