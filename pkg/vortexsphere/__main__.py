#!/usr/bin/python
#  coding=utf-8
"""

.. module:: vortexsphere
   :synopsis: VortexSphere.

"""

import sys

if __name__ == "__main__" and not __package__:
    # Allow "python vortexsphere" without the -m switch (PEP 366)
    from os import path
    __package__ = "vortexsphere"  # pylint: disable=redefined-builtin
    sys.path.append(path.dirname(path.dirname(path.abspath(__file__))))


if __name__ == '__main__':
    from vortexsphere.applications.vortex_commands import main
    sys.exit(main(sys.argv[1:]))
