#!/usr/bin/env python
# coding=utf-8
"""
Utility for reading and writing data to JSON and CSV files

"""

import csv
import json
import os


def create_file_handle(filename, mode):
    """Open a file with this path and access mode, creating its folder if
    required"""
    folder = os.path.dirname(filename)
    if folder and not os.path.exists(folder):
        os.makedirs(folder)
    return open(filename, mode)


def write_json(filename, data):
    """Writes data to a file in JSON format"""
    with create_file_handle(filename, 'w') as data_file:
        json.dump(data, data_file, ensure_ascii=False, indent=1)


def read_json(filename):
    """Reads data from a file in JSON format"""
    with open(filename) as data_file:
        return json.load(data_file)


def write_csv(filename, header, rows):
    """Writes a header row followed by the data rows; floats are written
    with 17 significant digits"""
    with create_file_handle(filename, 'w') as data_file:
        writer = csv.writer(data_file)
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(value) for value in row])


def read_csv(filename):
    """Reads a CSV file written by write_csv. Returns the header and the
    rows as lists of floats"""
    with open(filename) as data_file:
        reader = csv.reader(data_file)
        header = next(reader)
        return header, [[float(value) for value in row] for row in reader
                        if row]


def format_value(value):
    """Text form of a report value; floats use 17 significant digits"""
    if isinstance(value, float) or hasattr(value, 'dtype'):
        return '{:.17g}'.format(float(value))
    return str(value)
