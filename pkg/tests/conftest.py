import sys

import pytest

from toric_seshadri.corpus import weighted_p1123, standard_corpus
from toric_seshadri.fan import gen_hirzebruch, gen_projective_space, star_subdivision


@pytest.fixture
def p2():
    return gen_projective_space(2)


@pytest.fixture
def p1123():
    return weighted_p1123()


@pytest.fixture
def bl_p2():
    return star_subdivision(gen_projective_space(2), (1, 1))


@pytest.fixture(params=range(6), ids=lambda r: "r%d" % r)
def hirzebruch(request):
    return gen_hirzebruch(request.param)


@pytest.fixture(scope="session")
def corpus():
    return standard_corpus()


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(module.RESULTS):
        terminalreporter.write_line(line)
