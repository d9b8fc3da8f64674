"""Surface model of the perfect derived category of a gentle algebra."""

__version__ = "0.1.0"
