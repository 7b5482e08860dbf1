# -*- coding: utf-8 -*-

"""sopcast

Weather-adaptive, multi-scale forecasting of state-of-polarization (SOP)
change in aerial optical fibers using wavelet decomposition and per-band
neural networks.
"""

from setuptools import setup

VERSION = "0.4.0"

classifiers = [
    "Development Status :: 3 - Alpha",
    "License :: OSI Approved :: Apache Software License",
    "Operating System :: POSIX",
    "Operating System :: POSIX :: Linux",
    "Operating System :: MacOS :: MacOS X",
    "Operating System :: Microsoft :: Windows",
    "Programming Language :: Python :: 3",
    "Programming Language :: Python :: Implementation :: CPython",
    "Topic :: Scientific/Engineering",
    "Topic :: Scientific/Engineering :: Visualization",
    "Topic :: Utilities",
]

setup(
    name="sopcast",
    version=VERSION,
    license="Apache License, Version 2.0",
    description="SOP change forecasting for aerial optical fibers",
    long_description=__doc__,
    include_package_data=True,
    platforms="any",
    classifiers=classifiers,
    python_requires=">=3.8",
    install_requires=[
        "numpy>=1.20",
        "scipy",
        "pandas",
        "matplotlib",
        "PyYAML",
        "pytz",
        "Jinja2",
        "PyWavelets",
    ],
    packages=[
        'sopcast',
        'sopcast.config',
        'sopcast.utils',
        'sopcast.io',
        'sopcast.data',
        'sopcast.wavelet',
        'sopcast.model',
        'sopcast.post',
        'sopcast.run',
        'sopcast.scripts',
    ],
    package_data={
        'sopcast': ['templates/*.txt'],
        'sopcast.config': ['default_config.yaml'],
    },
    entry_points="""
        [console_scripts]
        sopcast=sopcast.scripts.sopcast:main
    """,
)
