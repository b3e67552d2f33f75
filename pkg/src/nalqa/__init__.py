"""Question answering over a cyberlaw knowledge base built by natural language understanding."""

__version__ = "0.1.0"
