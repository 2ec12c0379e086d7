import pathlib
import sys


def _locate_build_package():
    """Find the built extension when PYTHONPATH was not set by ctest."""
    root = pathlib.Path(__file__).resolve().parents[2]
    for build in sorted(root.glob("build*")):
        pkg = build / "python" / "charsum"
        if list(pkg.glob("_core*.so")):
            sys.path.insert(0, str(pkg.parent))
            return


try:
    import charsum  # noqa: F401
except ImportError:
    _locate_build_package()
