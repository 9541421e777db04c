# coding=utf-8

"""User-callable applications"""
