"""Hot brute-force kernels: the compiled extension when built, else pure Python."""

from __future__ import annotations

from types import ModuleType

from . import _kernels_py

try:
    from . import _ckernels  # type: ignore[attr-defined]
except ImportError:  # extension not built
    _ckernels = None

BACKENDS: dict[str, ModuleType] = {"python": _kernels_py}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

_active: ModuleType = _ckernels if _ckernels is not None else _kernels_py


def backend() -> str:
    return "cython" if _active is _ckernels and _ckernels is not None else "python"


def use_backend(name: str) -> None:
    """Switch the kernel implementation process-wide ("python" or "cython")."""
    global _active
    if name not in BACKENDS:
        raise ValueError(f"kernel backend {name!r} unavailable; have {sorted(BACKENDS)}")
    _active = BACKENDS[name]


def layer_signatures(lower: list[int], upper: list[int]) -> dict:
    return _active.layer_signatures(lower, upper)


def crossing_free(pos: list[int], us: list[int], vs: list[int], gids: list[int]) -> bool:
    return _active.crossing_free(pos, us, vs, gids)
