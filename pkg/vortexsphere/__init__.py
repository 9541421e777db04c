# coding=utf-8
"""

.. module:: vortexsphere
   :synopsis: Relative equilibria, periodic branches and choreographies of
              point vortex rings on the sphere.

"""

from vortexsphere.utils.versioning import get_version

__version__ = get_version()
