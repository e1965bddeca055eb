import pytest

from catalanregions.classifier import classify_all
from catalanregions.rootposet import RootPoset
from catalanregions.rootsystem import build, parse_spec


@pytest.fixture(scope="session")
def h3_poset():
    return RootPoset(build(parse_spec("H3")))


@pytest.fixture(scope="session")
def h4_poset():
    return RootPoset(build(parse_spec("H4")))


@pytest.fixture(scope="session")
def h3_report(h3_poset):
    return classify_all(h3_poset)


@pytest.fixture(scope="session")
def h4_report(h4_poset):
    return classify_all(h4_poset)
