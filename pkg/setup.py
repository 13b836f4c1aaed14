#!/usr/bin/env python

# Copyright (c) The AtomTwin Project.
# See LICENSE.txt for details.

# import ordering is important
import setupinfo
from setuptools import setup, find_packages


version = (0, 1, 0)

name = "AtomTwin"
description = "Digital twin of a neutral atom quantum computer"
long_description = setupinfo.read('README.md')
url = "https://github.com/atomtwin/atomtwin"
author = "The AtomTwin Project"
author_email = "dev@atomtwin.invalid"
license = "MIT License"

classifiers = """
Intended Audience :: Science/Research
License :: OSI Approved :: MIT License
Natural Language :: English
Operating System :: OS Independent
Programming Language :: Python
Programming Language :: Python :: 3
Programming Language :: Python :: 3.8
Programming Language :: Python :: 3.9
Programming Language :: Python :: 3.10
Programming Language :: Python :: 3.11
Topic :: Scientific/Engineering :: Physics
"""

keywords = """
quantum computing neutral atoms rydberg blockade cesium trap array simulator
compiler ghz qpe qaoa maxcut noise model digital twin
"""


def setup_package():
    setupinfo.set_version(version)

    setupinfo.write_version_py()

    setup(
        name=name,
        version=setupinfo.get_version(),
        description=description,
        long_description=long_description,
        long_description_content_type='text/markdown',
        url=url,
        author=author,
        author_email=author_email,
        keywords=keywords.strip(),
        license=license,
        packages=find_packages(exclude=['examples', 'examples.*']),
        install_requires=setupinfo.get_install_requirements(),
        test_suite="atomtwin.tests.get_suite",
        zip_safe=False,
        python_requires='>=3.8',
        entry_points={
            'console_scripts': ['atomtwin = atomtwin.cli:main'],
        },
        classifiers=(
            [_f for _f in classifiers.strip().split('\n') if _f] +
            setupinfo.get_trove_classifiers()
        ),
        **setupinfo.extra_setup_args())


if __name__ == '__main__':
    setup_package()
