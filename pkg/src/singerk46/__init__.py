"""Singer difference sets, norm equation systems and K_{4,6} in projective norm graphs."""

__version__ = "0.1.0"
