# coding=utf-8
"""
The product version, taken from the installed distribution when there is
one and from PACKAGE_VERSION otherwise

"""

import re

PACKAGE_VERSION = '1.0.0'
RELEASE_VERSION_REGEX = r'^[0-9]+(\.[0-9]+)*(\.dev[0-9]+)?$'


def is_release_version(version_string):
    """True for versions like 1.0.0 or 1.1.dev2"""
    return bool(re.match(RELEASE_VERSION_REGEX, version_string))


def installed_version():
    """Version of the installed vortexsphere distribution, or None"""
    try:
        import pkg_resources
        version_string = pkg_resources.get_distribution(
            "vortexsphere").version
    except Exception:  # pylint: disable=broad-except
        return None
    return version_string if is_release_version(version_string) else None


def get_version():
    """The product version; never raises"""
    return installed_version() or PACKAGE_VERSION


def get_version_string():
    """The product name and version shown by --version"""
    return "VortexSphere version " + get_version()
