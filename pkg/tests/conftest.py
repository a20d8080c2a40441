import pytest

from fuzzylex import Lexicon, TermKind

WORD_GOALS = ["EraseWithMenu", "EraseWithKey", "CutWithMenu", "Copy"]

# Rating streams whose running averages land the nuclei on the published
# worked-example values (0.3, 0.6), (0.2, 0.7), (0.4, 0.5).
EXAMPLE2_STREAMS = {
    "Character": [0.6, 0.0],
    "Word": [0.2, 1.0, 0.9],
    "ChainOfChars": [0.5, 0.3],
}


@pytest.fixture
def word_lexicon() -> Lexicon:
    """The introduction scenario: object 'Word' and four applicable goals."""
    lex = Lexicon()
    lex.add_term(TermKind.OBJECT, "Word")
    for goal in WORD_GOALS:
        lex.add_term(TermKind.GOAL, goal)
        lex.set_applicable(goal, "Word")
    return lex


def build_example2_vocabulary() -> Lexicon:
    lex = Lexicon()
    lex.add_term(TermKind.GOAL, "Select")
    for name in EXAMPLE2_STREAMS:
        lex.add_term(TermKind.OBJECT, name)
        lex.set_applicable("Select", name)
    return lex


@pytest.fixture
def example2_lexicon() -> Lexicon:
    """Three candidate objects, all applicable to the goal 'Select'."""
    return build_example2_vocabulary()


@pytest.fixture
def example2_learned(example2_lexicon: Lexicon) -> Lexicon:
    for name, stream in EXAMPLE2_STREAMS.items():
        for theta in stream:
            example2_lexicon.record_rating("Substantive", TermKind.OBJECT, name, theta)
    return example2_lexicon
