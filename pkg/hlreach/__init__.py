# hlreach package initialization
from hlreach.models import DualIndex, HLIndex, Hypergraph, HyperedgeOrder, IndexFlavor, Label, QueryResult

__version__ = "1.0.0"

__all__ = [
    "DualIndex",
    "HLIndex",
    "Hypergraph",
    "HyperedgeOrder",
    "IndexFlavor",
    "Label",
    "QueryResult",
]
