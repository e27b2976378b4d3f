"""Build script: compiles the optional Cython enumeration kernel.

The package is fully functional without the extension; `cluster_workbench.kernel`
falls back to the pure-Python implementation when the import fails.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/cluster_workbench/_canon_cy.pyx",
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-env dependent
    print(f"cython unavailable ({exc}); building pure-python only")

setup(ext_modules=ext_modules)
