#!/usr/bin/python
#  -*- coding: utf-8 -*-
import sys

from vortexsphere.applications.vortex_commands import main

if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
