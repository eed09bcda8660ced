"""Flag-transitive 2-(v,k,2) designs of affine type: construction and verification."""

__version__ = "0.1.0"
