# coding=utf-8

"""The polygonal relative equilibrium and its spectrum"""
