# Copyright (c) The AtomTwin Project.
# See LICENSE.txt for details.

"""
Meta data and helper functions for setup
"""

import os.path


_version = None


def set_version(version):
    global _version

    _version = version


def get_version():
    v = ''
    prev = None

    for x in _version:
        if prev is not None:
            if isinstance(x, int):
                v += '.'

        prev = x
        v += str(x)

    return v.strip('.')


def get_package_data():
    return {
        'atomtwin': ['default.cfg'],
    }


def extra_setup_args():
    """
    Extra kwargs to supply in the call to C{setup}.

    Metadata lives in setup.py itself.
    """
    return {
        'package_data': get_package_data(),
    }


def get_install_requirements():
    """
    Returns the runtime dependencies, as listed in requirements.txt.
    """
    ret = []

    for line in read('requirements.txt').splitlines():
        line = line.split('#', 1)[0].strip()

        if line:
            ret.append(line)

    return ret


def write_version_py(filename='atomtwin/_version.py'):
    """
    Writes the version module the package imports at runtime.
    """
    if os.path.exists(filename):
        os.remove(filename)

    content = """\
# THIS FILE IS GENERATED BY ATOMTWIN SETUP.PY
from atomtwin.versions import Version

version = Version(*%(version)r)
"""

    with open(filename, 'wt') as a:
        a.write(content % {'version': _version})


def read(fname):
    with open(os.path.join(os.path.dirname(__file__), fname)) as f:
        return f.read()


def get_trove_classifiers():
    """
    Return a list of trove classifiers that are setup dependent.
    """
    version = get_version()

    if 'dev' in version:
        status = 'Development Status :: 2 - Pre-Alpha'
    elif 'beta' in version:
        status = 'Development Status :: 4 - Beta'
    else:
        status = 'Development Status :: 3 - Alpha'

    return [status]
