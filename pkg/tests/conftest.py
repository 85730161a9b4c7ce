"""
conftest.py

Shared fixtures.

Created on 17 Oct 2026

@author: teampref contributors
"""

import random
from io import StringIO

import pytest

from teampref.app import TeamPref
from teampref.prefmodel import w_circ_star, w_pq, w_sub


@pytest.fixture
def rng():
    return random.Random(20261017)


@pytest.fixture
def pq_model():
    return w_pq()


@pytest.fixture
def circ_model():
    return w_circ_star()


@pytest.fixture
def sub_p():
    return w_sub(("p",))


@pytest.fixture
def cli(tmp_path):
    """
    Run the CLI in-process; returns (exit code, stdout, stderr).
    """

    def run(*argv):
        out, err = StringIO(), StringIO()
        configfile = str(tmp_path / "missing.json")
        app = TeamPref(configfile=configfile, stdout=out, stderr=err)
        code = app.run(list(argv))
        return code, out.getvalue(), err.getvalue()

    return run
