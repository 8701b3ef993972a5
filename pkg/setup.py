"""Build the optional compiled search kernel.

The package works without it; ``paritysynth._kernel`` falls back to the
pure-Python implementation when the extension is missing.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover - build without Cython
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "paritysynth._bfs",
                ["src/paritysynth/_bfs.pyx"],
                language="c++",
                extra_compile_args=["-O3", "-std=c++17"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3", "binding": True, "embedsignature": True},
    )

setup(ext_modules=ext_modules)
