# coding=utf-8

"""Direct integration of the vortex equations"""
