"""List decoding of lifted Gabidulin codes through balls in the Grassmannian."""

__version__ = "0.1.0"
