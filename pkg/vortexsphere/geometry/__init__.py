# coding=utf-8

"""Stereographic chart of the sphere"""
