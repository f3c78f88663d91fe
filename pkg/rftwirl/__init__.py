"""Private shared reference frames: Schur-Weyl twirls and private communication schemes."""

__version__ = "0.1.0"
