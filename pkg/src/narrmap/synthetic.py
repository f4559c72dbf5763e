"""Synthetic manuscripts with planted voice changes, for demos and tests.

Most chapters draw words from one narrative vocabulary; a chosen few are
written mostly in a reportage vocabulary (the inserted-newspaper-article
pattern), so the set of outlying chapters is known by construction.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

NARRATIVE_WORDS = (
    "the and she he was her his to of a in it that had said at on with for as "
    "boat harbour lamp wall sea water wind rain morning night light dark steps "
    "looked walked turned came went stood sat thought remembered knew felt heard "
    "father mother house door window road hill village coat hand face eyes voice "
    "quiet slowly long cold grey green old small still again back down"
).split()

REPORTAGE_WORDS = (
    "officials confirmed spokesperson statement department announced residents "
    "according reported investigation council authorities percent million "
    "tuesday wednesday regional national agency inspection closure advised "
    "pending incident emergency services said police public update response "
    "estimated recovered transferred hospital registered vessel damage"
).split()


def _zipf_weights(n: int) -> np.ndarray:
    w = 1.0 / np.arange(1, n + 1)
    return w / w.sum()


def divergent_manuscript(n_segments: int = 30, outliers: Sequence[int] = (6, 17, 25),
                         words_per_segment: int = 160, outlier_share: float = 0.8,
                         seed: int = 69) -> str:
    """Markdown text with ``n_segments`` chapters; ``outliers`` (0-based) switch voice.

    In an outlying chapter each word comes from the reportage vocabulary with
    probability ``outlier_share``, otherwise from the narrative vocabulary.
    """
    rng = np.random.default_rng(seed)
    core_w = _zipf_weights(len(NARRATIVE_WORDS))
    news_w = _zipf_weights(len(REPORTAGE_WORDS))
    chapters = []
    planted = set(outliers)
    for k in range(n_segments):
        words = []
        for _ in range(words_per_segment):
            if k in planted and rng.random() < outlier_share:
                words.append(REPORTAGE_WORDS[rng.choice(len(REPORTAGE_WORDS), p=news_w)])
            else:
                words.append(NARRATIVE_WORDS[rng.choice(len(NARRATIVE_WORDS), p=core_w)])
        sentences = [" ".join(words[i : i + 12]) for i in range(0, len(words), 12)]
        body = " ".join(s[0].upper() + s[1:] + "." for s in sentences)
        chapters.append(f"# Chapter {k + 1}\n\n{body}\n")
    return "\n".join(chapters)


def draft_pair(seed: int = 44) -> tuple[str, str]:
    """Two drafts of a 12-chapter manuscript.

    In the first, chapter 9 is a skeletal outline in a different register and
    chapters 3-4 lean on a minor character's vocabulary; in the second those
    chapters have been rewritten towards the common voice.
    """
    rng = np.random.default_rng(seed)
    core_w = _zipf_weights(len(NARRATIVE_WORDS))
    news_w = _zipf_weights(len(REPORTAGE_WORDS))

    def chapter(n_words, share):
        out = []
        for _ in range(n_words):
            if rng.random() < share:
                out.append(REPORTAGE_WORDS[rng.choice(len(REPORTAGE_WORDS), p=news_w)])
            else:
                out.append(NARRATIVE_WORDS[rng.choice(len(NARRATIVE_WORDS), p=core_w)])
        return " ".join(out) + "."

    first, second = [], []
    for k in range(12):
        if k == 8:
            a, b = chapter(25, 0.9), chapter(150, 0.1)
        elif k in (2, 3):
            a, b = chapter(150, 0.45), chapter(150, 0.15)
        else:
            a = b = chapter(150, 0.0)
        first.append(f"# Chapter {k + 1}\n\n{a}\n")
        second.append(f"# Chapter {k + 1}\n\n{b}\n")
    return "\n".join(first), "\n".join(second)
