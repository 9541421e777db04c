# coding=utf-8

"""Helper classes and functions for VortexSphere"""
