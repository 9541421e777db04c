# coding=utf-8
"""
Reading and writing branch files and choreography reports

"""

from vortexsphere.periodic.continuation import Branch
from vortexsphere.utils.json_reader import write_json, read_json

BRANCH_APPNAME = "VortexSphere branch"
CHOREOGRAPHY_APPNAME = "VortexSphere choreography"
FILE_VERSION = "1.0"


def write_branch_file(filename, branch):
    """Saves a continued branch in JSON format"""
    data = {"appname": BRANCH_APPNAME, "version": FILE_VERSION}
    data.update(branch.to_dict())
    write_json(filename, data)


def load_branch_data(filename):
    """Loads the dictionary stored in a branch file"""
    data = read_json(filename)
    if data.get("appname") != BRANCH_APPNAME:
        raise ValueError('Not a VortexSphere branch file: ' + filename)
    if data.get("version") != FILE_VERSION:
        raise ValueError('Cannot read this file version: ' +
                         str(data.get("version")))
    return data


def read_branch_file(filename):
    """Loads a Branch from a branch file"""
    return Branch.from_dict(load_branch_data(filename))


def write_choreography_report(filename, branch_filename, certs):
    """Saves the certificates of a choreography scan in JSON format"""
    write_json(filename, {"appname": CHOREOGRAPHY_APPNAME,
                          "version": FILE_VERSION,
                          "branch_file": branch_filename,
                          "certs": [cert.to_dict() for cert in certs]})


def read_choreography_report(filename):
    """Loads the dictionary stored in a choreography report"""
    data = read_json(filename)
    if data.get("appname") != CHOREOGRAPHY_APPNAME:
        raise ValueError('Not a VortexSphere choreography report: ' +
                         filename)
    if data.get("version") != FILE_VERSION:
        raise ValueError('Cannot read this file version: ' +
                         str(data.get("version")))
    return data
