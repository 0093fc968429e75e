"""DegSDP: exact solver for degenerate semidefinite programs via symbolic homotopy."""
__version__ = "0.3.0"
