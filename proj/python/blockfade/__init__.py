"""Pedestrian blockage fading toolkit for mmWave links."""

try:
    from ._blockfade import *  # noqa: F401,F403  (installed package layout)
    from ._blockfade import __version__  # noqa: F401
except ImportError:  # in-tree builds put the extension on sys.path directly
    from _blockfade import *  # noqa: F401,F403
    from _blockfade import __version__  # noqa: F401
