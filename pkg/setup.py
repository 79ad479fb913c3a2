"""Build script: optionally compiles the scalar kernel as a C extension.

The package is fully functional without the extension; `uqsl2._kernel`
falls back to the pure Python implementation at import time.
"""

from setuptools import Extension, setup


def get_extensions():
    """Extension modules, or an empty list if Cython is unavailable."""
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("WARNING: Cython not available. Using pure Python kernel.")
        return []
    extensions = [
        Extension(
            "uqsl2._kernel._ckernel",
            sources=["src/uqsl2/_kernel/_ckernel.pyx"],
        )
    ]
    return cythonize(
        extensions,
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
        },
    )


setup(ext_modules=get_extensions())
