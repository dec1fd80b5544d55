from fractions import Fraction as F

import pytest

from lcadirent import parse_rule

RULES = {
    "m4": "2x[-1]+2x[0]+3x[1] % 4",
    "m9_inv": "4x[-1]+3x[0]+3x[1] % 9",
    "m5": "3x[-4]+2x[-3]+3x[2]+4x[3] % 5",
    "m9": "3x[-5]+2x[-4]+5x[5]+7x[6] % 9",
    "m30": "2x[-3]+3x[-2]+5x[-1]+30x[0]+3x[1]+2x[2]+5x[3] % 30",
    "m11": "2x[0]+4x[1]+3x[2]+1x[3]+6x[4]+7x[5] % 11",
    "m19": "6x[-3]+3x[-2]+5x[-1]+2x[0] % 19",
    "m23": "12x[-2]+3x[-1]+5x[0]+4x[1]+1x[2]+21x[3] % 23",
}

T4 = [
    [F(1, 2), F(1, 2), 0, 0],
    [F(1, 8), 0, F(1, 8), F(3, 4)],
    [0, F(1, 16), F(1, 16), F(7, 8)],
    [0, 0, 1, 0],
]

_T9 = """1/3 0 1/3 0 0 0 1/6 1/6 0
1/18 1/18 0 1/3 0 1/3 1/9 1/9 0
0 0 0 1/2 0 0 1/4 1/4 0
1/4 0 1/4 0 1/4 0 0 1/8 1/8
1/7 1/7 1/7 0 1/7 0 1/7 1/7 1/7
0 1/6 1/6 1/12 1/12 1/12 1/12 1/6 1/6
1/5 1/5 0 0 1/5 1/10 1/10 1/10 1/10
1/18 1/18 0 1/9 2/9 1/3 1/9 1/18 1/18
1/5 1/5 1/10 1/10 0 1/10 1/10 1/10 1/10"""

T9 = [[F(x) for x in line.split()] for line in _T9.splitlines()]

PI9_PRINTED = [0.1441, 0.0836, 0.1066, 0.1269, 0.0949, 0.1155, 0.1175, 0.1354, 0.0755]
H9_PRINTED = [1.3297, 1.5418, 1.0397, 1.5595, 1.9459, 2.0228, 1.8866, 1.8309, 1.7951]


@pytest.fixture
def rules():
    return {k: parse_rule(v) for k, v in RULES.items()}


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
