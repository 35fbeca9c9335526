import pytest

from coxshadows import datum_from_tag, reduced_word


@pytest.fixture(scope="session")
def a2aff():
    return datum_from_tag("A2~")


@pytest.fixture(scope="session")
def b2aff():
    return datum_from_tag("B2~")


@pytest.fixture(scope="session")
def a2fin():
    return datum_from_tag("A2")


def word_name(x) -> str:
    return "".join(map(str, reduced_word(x))) or "e"


def names(elements) -> set:
    return {word_name(x) for x in elements}
