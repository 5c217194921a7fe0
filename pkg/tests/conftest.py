import pytest

from helpers import ACCEPTANCE_RESULTS
from idont.compiler import compile_primer, load_primer, load_template
from idont._resources import data_dir
from idont.script import load_lexicon, load_profile


@pytest.fixture(scope="session")
def te():
    return load_profile("te")


@pytest.fixture(scope="session")
def hi():
    return load_profile("hi")


@pytest.fixture(scope="session")
def te_lexicon(te):
    return load_lexicon("te", te)


@pytest.fixture(scope="session")
def hi_lexicon(hi):
    return load_lexicon("hi", hi)


@pytest.fixture(scope="session")
def template():
    return load_template()


@pytest.fixture(scope="session")
def primer_dir():
    return data_dir("primers")


@pytest.fixture(scope="session")
def telugu_spec(primer_dir):
    return load_primer(primer_dir / "telugu.json")


@pytest.fixture(scope="session")
def hindi_spec(primer_dir):
    return load_primer(primer_dir / "hindi.json")


@pytest.fixture(scope="session")
def telugu_design(telugu_spec, te_lexicon, te, template):
    return compile_primer(telugu_spec, te_lexicon, te, template)


@pytest.fixture(scope="session")
def hindi_design(hindi_spec, hi_lexicon, hi, template):
    return compile_primer(hindi_spec, hi_lexicon, hi, template)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(
            f"criterion {criterion}: {'PASS' if passed else 'FAIL'} - {detail}")
