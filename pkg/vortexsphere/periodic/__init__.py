# coding=utf-8

"""Relative periodic solutions and choreographies"""
