from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("liegauge._kernel._termops_cy", ["src/liegauge/_kernel/_termops_cy.pyx"])],
        language_level="3",
    )
except ImportError:
    # the pure-Python kernel is selected at import time when the
    # compiled twin is unavailable
    ext_modules = []

setup(ext_modules=ext_modules)
