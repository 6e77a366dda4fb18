"""
ITA2 letters-shift codebook.

LETTERS is indexed by the 5-bit code value with the first transmitted bit in
the least significant position; codes are written in transmission order, so
'A' (value 3) is 11000. Non-letter positions (NULL, CR, LF, SPACE, FIGS,
LTRS) are None: only the 26 letters are in the codebook. The full table is
in docs/ita2_letters.md.
"""
from ..utils.errors import UnsupportedCharacterError, UnknownCodeError

LETTERS = [
    None, 'E', None, 'A', None, 'S', 'I', 'U', None, 'D', 'R', 'J', 'N', 'F', 'C', 'K',
    'T', 'Z', 'L', 'W', 'H', 'Y', 'P', 'Q', 'O', 'B', 'G', None, 'M', 'X', 'V', None]
assert len(LETTERS) == 32


def _bits_of(value: int) -> tuple[int, ...]:
    return tuple((value >> i) & 1 for i in range(5))


class Ita2Codebook:
    def __init__(self):
        self.to_code = {ch: _bits_of(v) for v, ch in enumerate(LETTERS) if ch is not None}
        self.to_letter = {code: ch for ch, code in self.to_code.items()}

    def __len__(self):
        return len(self.to_code)

    def encode(self, letter: str) -> tuple[int, ...]:
        try:
            return self.to_code[letter.upper()]
        except (KeyError, AttributeError):
            raise UnsupportedCharacterError(f"{letter!r} is not an ITA2 letter") from None

    def decode(self, code) -> str:
        key = tuple(int(b) for b in code)
        try:
            return self.to_letter[key]
        except KeyError:
            raise UnknownCodeError(f"{''.join(map(str, key))} is not a letter code") from None

    def encode_text(self, text: str) -> list[tuple[int, ...]]:
        return [self.encode(ch) for ch in text]


CODEBOOK = Ita2Codebook()
