import subprocess

import pytest

# Seven arguments: a chain into a 2-cycle, then a chain into a 3-cycle.
# Grounded semantics settles only the first two arguments; credulous
# complete acceptance is exactly {1, 3, 4, 6}.
SEVEN_TEXT = "p af 7\n1 2\n2 3\n3 4\n4 3\n4 5\n5 6\n6 7\n7 5\n"
SEVEN_DC_CO = "1 YES\n2 NO\n3 YES\n4 YES\n5 NO\n6 YES\n7 NO\n"

# Six arguments with two self-attackers and one unattacked argument.
SIX_TEXT = "p af 6\n1 1\n1 2\n2 5\n2 4\n3 3\n3 4\n5 2\n5 4\n6 5\n"

SIX_APX_TEXT = (
    "arg(a).\narg(b).\narg(c).\narg(d).\narg(e).\narg(f).\n"
    "att(a,a).\natt(a,b).\natt(b,e).\natt(b,d).\natt(c,c).\n"
    "att(c,d).\natt(e,b).\natt(e,d).\natt(f,e).\n")


def engine(*args):
    """Run the inference engine's utility CLI; returns CompletedProcess."""
    return subprocess.run(["afkit", *map(str, args)],
                          capture_output=True, text=True)


@pytest.fixture
def seven_file(tmp_path):
    path = tmp_path / "seven.af"
    path.write_text(SEVEN_TEXT, encoding="utf-8")
    return path


@pytest.fixture
def six_file(tmp_path):
    path = tmp_path / "six.af"
    path.write_text(SIX_TEXT, encoding="utf-8")
    return path


@pytest.fixture
def six_apx_file(tmp_path):
    path = tmp_path / "six.apx"
    path.write_text(SIX_APX_TEXT, encoding="utf-8")
    return path
