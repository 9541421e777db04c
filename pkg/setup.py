# coding=utf-8
"""
Setup for VortexSphere

"""

from setuptools import setup, find_packages

from vortexsphere.utils.versioning import get_version


version_string = get_version()

# Get the summary
description = 'Relative equilibria, periodic branches and choreographies ' \
              'of point vortex rings on the sphere'

# Get the long description
with open('README.rst') as f:
    long_description = f.read()


setup(
    name='VortexSphere',

    version=version_string,

    description=description,
    long_description=long_description,

    license='BSD license',

    classifiers=[
        'Development Status :: 3 - Alpha',

        'Intended Audience :: Science/Research',

        'License :: OSI Approved :: BSD License',

        'Programming Language :: Python',
        'Programming Language :: Python :: 2',
        'Programming Language :: Python :: 3',

        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Scientific/Engineering :: Physics',
    ],

    keywords='point vortices sphere continuation choreography',

    packages=find_packages(
        exclude=[
            'pip',
            'docs',
            'tests',
        ]
    ),

    install_requires=[
        'six>=1.10',
        'numpy>=1.11',
        'scipy>=1.0',
    ],

    entry_points={
        'console_scripts': [
            'vortexsphere=vortexsphere.applications.vortex_commands:main',
        ],
    },
)
