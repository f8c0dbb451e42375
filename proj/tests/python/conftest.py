"""Wire the freshly built extension into an importable `trajplan` package.

The build tree exports two env vars (set by CTest):
  TRAJPLAN_CORE_DIR  directory containing the compiled _core module
  TRAJPLAN_PY_DIR    the source `python/` directory with the pure-Python shim
"""

import importlib.util
import os
import sys


def _load_core():
    core_dir = os.environ.get("TRAJPLAN_CORE_DIR")
    if not core_dir:
        return  # fall back to an installed trajplan, if any
    candidates = [
        f for f in os.listdir(core_dir)
        if f.startswith("_core") and (f.endswith(".so") or f.endswith(".pyd"))
    ]
    if not candidates:
        raise RuntimeError(f"no _core extension found in {core_dir}")
    spec = importlib.util.spec_from_file_location(
        "trajplan._core", os.path.join(core_dir, candidates[0]))
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    sys.modules["trajplan._core"] = module


_load_core()
py_dir = os.environ.get("TRAJPLAN_PY_DIR")
if py_dir and py_dir not in sys.path:
    sys.path.insert(0, py_dir)
