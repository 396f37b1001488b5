import json

import numpy as np
import pytest

from slangbench.corpus import SlangUsage
from slangbench.embedding import normalize
from slangbench.lexicon import ingest_dump


class StaticEmbedder:
    """Test provider returning fixed vectors per exact text."""

    def __init__(self, mapping, unit=False):
        self.mapping = {k: np.asarray(v, dtype=float) for k, v in mapping.items()}
        self.unit = unit
        self.backend_id = "static"

    def embed(self, texts):
        out = []
        for t in texts:
            vec = self.mapping[t]
            out.append(normalize(vec) if self.unit else vec.copy())
        return out


def make_usage(term, definition="some meaning", contexts=None, **kw):
    if contexts is None:
        contexts = (f"I saw a {term} yesterday.",)
    return SlangUsage(term=term, definition=definition, contexts=tuple(contexts), **kw)


def lexicon_from(words):
    """Build a lexicon from {word: [(gloss, tags), ...]} or {word: gloss}."""
    lines = []
    for word, senses in words.items():
        if isinstance(senses, str):
            senses = [(senses, [])]
        lines.append(json.dumps({
            "word": word,
            "senses": [{"glosses": [g], "tags": list(tags)} for g, tags in senses],
        }))
    return ingest_dump(lines)


@pytest.fixture
def small_lexicon():
    return lexicon_from({
        "foot": "the lower extremity of the leg",
        "ball": "a round object used in games",
        "football": "a game played with a ball and the feet",
        "twirl": "to spin or rotate quickly",
        "pluck": "to pull or pick something",
        "cuckoo": [("a bird with a two-note call", []),
                   ("crazy or silly", ["slang"])],
        "zucchini": "a long green squash",
        "zip": "to close with a fastener",
        "day": "a period of twenty-four hours",
        "one": "the number after zero",
        "spin": "to rotate rapidly",
        "the": "definite article",
        "bottle": "a container for liquids",
        "zing": "a quality of liveliness or zest",
        "couch": "a long seat for several people",
        "potato": "a starchy root vegetable",
    })
