import json
import os
from os.path import normpath

from tdlccert.utils import parse_cycles


def assert_paths_equal(a, b):
    assert normpath(str(a)) == normpath(str(b))

def assert_str_equalish(exp, act):
    exp = str(exp).strip()
    act = str(act).strip()
    assert exp == act

def assert_divisibility_chain(factors):
    for a, b in zip(factors, factors[1:]):
        assert a > 0 and b % a == 0

def P(text, degree=0):
    '''A permutation from 1-based cycle notation'''
    return parse_cycles(text, degree)

def write_file(path, text):
    dirname = os.path.dirname(str(path))
    if dirname:
        os.makedirs(dirname, exist_ok=True)
    with open(str(path), 'w') as f:
        f.write(text)

def read_json(path):
    with open(str(path), 'r') as f:
        return json.load(f)

def read_text(path):
    with open(str(path), 'r') as f:
        return f.read()
