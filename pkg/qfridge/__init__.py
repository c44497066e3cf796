"""Three-qubit autonomous refrigerator coupled to common thermal reservoirs."""

__version__ = "0.1.0"
