"""Porter stemmer used to merge morphological variants of suffix words.

Implements the classic 1980 suffix-stripping algorithm (steps 1a-5b over
the consonant/vowel measure m) so that e.g. "encodings" and "encodes"
reduce to the same stem. Input is lowercased before stemming; words
shorter than three characters are returned unchanged, as is conventional.
"""

from __future__ import annotations

_VOWELS = "aeiou"


class _Word:
    def __init__(self, word: str):
        self.b = word

    def _is_cons(self, i: int) -> bool:
        ch = self.b[i]
        if ch in _VOWELS:
            return False
        if ch == "y":
            return True if i == 0 else not self._is_cons(i - 1)
        return True

    def measure(self, upto: int | None = None) -> int:
        """Number of vowel-consonant sequences in b[:upto]."""
        stem = self.b if upto is None else self.b[:upto]
        if not stem:
            return 0
        flags = [_Word(stem)._is_cons(i) for i in range(len(stem))]
        m = 0
        prev = flags[0]
        for cons in flags[1:]:
            if prev and not cons:
                pass
            elif not prev and cons:
                m += 1
            prev = cons
        return m

    def has_vowel(self, upto: int) -> bool:
        return any(not self._is_cons(i) for i in range(upto))

    def ends_double_consonant(self) -> bool:
        return (
            len(self.b) >= 2
            and self.b[-1] == self.b[-2]
            and self._is_cons(len(self.b) - 1)
        )

    def ends_cvc(self) -> bool:
        # consonant-vowel-consonant where the final consonant is not w, x, y
        if len(self.b) < 3:
            return False
        i = len(self.b) - 1
        return (
            self._is_cons(i)
            and not self._is_cons(i - 1)
            and self._is_cons(i - 2)
            and self.b[i] not in "wxy"
        )


def _m(word: str) -> int:
    return _Word(word).measure()


def _replace_suffix(word: str, suffix: str, replacement: str) -> str:
    return word[: len(word) - len(suffix)] + replacement


def _step1a(word: str) -> str:
    if word.endswith("sses"):
        return _replace_suffix(word, "sses", "ss")
    if word.endswith("ies"):
        return _replace_suffix(word, "ies", "i")
    if word.endswith("ss"):
        return word
    if word.endswith("s"):
        return word[:-1]
    return word


def _step1b(word: str) -> str:
    if word.endswith("eed"):
        stem = word[:-3]
        if _m(stem + "ee") > 0:
            return stem + "ee"
        return word
    for suffix in ("ed", "ing"):
        if word.endswith(suffix):
            stem = word[: len(word) - len(suffix)]
            if _Word(stem).has_vowel(len(stem)):
                return _step1b_cleanup(stem)
            return word
    return word


def _step1b_cleanup(stem: str) -> str:
    if stem.endswith(("at", "bl", "iz")):
        return stem + "e"
    w = _Word(stem)
    if w.ends_double_consonant() and not stem.endswith(("l", "s", "z")):
        return stem[:-1]
    if _m(stem) == 1 and w.ends_cvc():
        return stem + "e"
    return stem


def _step1c(word: str) -> str:
    if word.endswith("y") and _Word(word).has_vowel(len(word) - 1):
        return word[:-1] + "i"
    return word


_STEP2 = (
    ("ational", "ate"), ("tional", "tion"), ("enci", "ence"), ("anci", "ance"),
    ("izer", "ize"), ("bli", "ble"), ("alli", "al"), ("entli", "ent"),
    ("eli", "e"), ("ousli", "ous"), ("ization", "ize"), ("ation", "ate"),
    ("ator", "ate"), ("alism", "al"), ("iveness", "ive"), ("fulness", "ful"),
    ("ousness", "ous"), ("aliti", "al"), ("iviti", "ive"), ("biliti", "ble"),
    ("logi", "log"),
)

_STEP3 = (
    ("icate", "ic"), ("ative", ""), ("alize", "al"), ("iciti", "ic"),
    ("ical", "ic"), ("ful", ""), ("ness", ""),
)

_STEP4 = (
    "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement",
    "ment", "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
)


def _apply_rules(word: str, rules, min_measure: int) -> str:
    for suffix, replacement in rules:
        if word.endswith(suffix):
            stem = word[: len(word) - len(suffix)]
            if _m(stem) > min_measure - 1:
                return stem + replacement
            return word
    return word


def _step4(word: str) -> str:
    for suffix in _STEP4:
        if word.endswith(suffix):
            stem = word[: len(word) - len(suffix)]
            if suffix == "ion" and not stem.endswith(("s", "t")):
                return word
            if _m(stem) > 1:
                return stem
            return word
    return word


def _step5a(word: str) -> str:
    if word.endswith("e"):
        stem = word[:-1]
        m = _m(stem)
        if m > 1 or (m == 1 and not _Word(stem).ends_cvc()):
            return stem
    return word


def _step5b(word: str) -> str:
    if word.endswith("ll") and _m(word) > 1:
        return word[:-1]
    return word


def stem(word: str) -> str:
    """Return the Porter stem of the lowercased word."""
    word = word.lower()
    if len(word) <= 2:
        return word
    word = _step1a(word)
    word = _step1b(word)
    word = _step1c(word)
    word = _apply_rules(word, _STEP2, 1)
    word = _apply_rules(word, _STEP3, 1)
    word = _step4(word)
    word = _step5a(word)
    word = _step5b(word)
    return word
