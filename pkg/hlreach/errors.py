"""Exception hierarchy shared by the library and the CLI."""


class HLReachError(Exception):
    """Base class for every error raised by hlreach"""


class ArgumentError(HLReachError, ValueError):
    """Out-of-range id, invalid threshold or infeasible configuration"""


class UnknownVertexError(ArgumentError):
    """A vertex token given at the CLI is not present in the index"""

    def __init__(self, token: int):
        super().__init__(f"unknown vertex id {token}")
        self.token = token


class HypergraphParseError(HLReachError, ValueError):
    """Malformed hypergraph text input"""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class InvalidWalkError(HLReachError, ValueError):
    """Two consecutive hyperedges of a walk share no vertex"""


class IndexFormatError(HLReachError, ValueError):
    """Bad magic, version, checksum or truncated index file"""


class IndexIntegrityError(HLReachError):
    """Label index and dual index are not transposes of each other"""
