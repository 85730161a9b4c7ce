"""
test_scenarios.py

Every reproduction scenario passes.

Created on 17 Oct 2026

@author: teampref contributors
"""

import pytest

from teampref.scenarios import SCENARIOS, Transcript, run_scenario


@pytest.mark.parametrize("name", sorted(SCENARIOS))
def test_scenario_passes(name):
    transcript = run_scenario(name)
    assert transcript.passed, "\n".join(transcript.lines)
    assert transcript.lines


def test_transcript_records_failures():
    transcript = Transcript("demo")
    assert transcript.check("fine", True)
    assert not transcript.check("broken", 0)
    assert not transcript.passed
    assert transcript.lines == ["ok   fine", "FAIL broken"]


def test_unknown_scenario():
    with pytest.raises(KeyError):
        run_scenario("nope")
