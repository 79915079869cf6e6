"""chromastate: closed forms for qudit graph states of colorable graphs."""

__version__ = "0.1.0"
