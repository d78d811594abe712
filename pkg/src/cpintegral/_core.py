"""Kernel selection: compiled extension if present, numpy fallback otherwise."""

try:
    from . import _kernels as kernels

    HAVE_COMPILED = True
except ImportError:  # pragma: no cover - depends on build environment
    from . import _kernels_py as kernels

    HAVE_COMPILED = False

__all__ = ["kernels", "HAVE_COMPILED"]
