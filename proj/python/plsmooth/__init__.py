"""PL smoothing toolkit bindings."""

try:
    from ._core import *  # noqa: F401,F403
    from . import _core  # noqa: F401
except ImportError:  # test builds put _core on PYTHONPATH instead of in the package
    from _core import *  # noqa: F401,F403
    import _core  # noqa: F401
