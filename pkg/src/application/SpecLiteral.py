from src.application.CustomError import SpecParseError
from src.application.PauliRootGroups import GroupSpec
from src.application.QMat import GATE_ALIASES, Axis, GateLetter

SPEC_ALIASES: dict[str, str] = {
    'clifford': '4:3:13',
    'clifford+t': '8:3:13',
    'x': '2:1:11',
    'y': '2:2:22',
    'z': '2:3:33',
    's': '4:3:33',
    't': '8:3:33',
    'h': '1:1:13',
}

_DIGITS = frozenset('0123456789')
_AXES = frozenset('123')
_DAGGERS = frozenset("'†")
_SEPARATORS = frozenset(' \t·*')


class _Scanner:
    """Left-to-right reader that reports the 0-based position of the first offending character."""

    def __init__(self, text: str) -> None:
        self.text = text
        self.position = 0

    def peek(self) -> str:
        return self.text[self.position] if self.position < len(self.text) else ''

    def at_end(self) -> bool:
        return self.position >= len(self.text)

    def fail(self, message: str):
        raise SpecParseError(f'{message} in {self.text!r}', self.position)

    def integer(self) -> int:
        start = self.position
        while self.peek() in _DIGITS:
            self.position += 1
        if start == self.position:
            self.fail('Expected a positive integer')
        value = int(self.text[start:self.position])
        if value < 1:
            self.position = start
            self.fail('Degree must be positive')
        return value

    def axis(self) -> Axis:
        ch = self.peek()
        if ch not in _AXES:
            self.fail(f'Expected an axis 1, 2 or 3, found {ch or "end of input"!r}')
        self.position += 1
        return Axis(int(ch))

    def literal(self, expected: str) -> None:
        if self.peek() != expected:
            self.fail(f'Expected {expected!r}')
        self.position += 1

    def dagger(self) -> bool:
        if self.peek() in _DAGGERS:
            self.position += 1
            return True
        return False


def parse_spec(text: str) -> GroupSpec:
    """
    Parses "k:a:bc" (bc an unordered axis pair, bb for the cyclic case) or one of SPEC_ALIASES.

    Raises:
        SpecParseError: With the position of the first character that does not fit the grammar.
    """
    alias = SPEC_ALIASES.get(text.strip().lower())
    if alias is not None:
        scanner = _Scanner(alias)
    else:
        # surrounding blanks are skipped; positions still index into text
        scanner = _Scanner(text.rstrip())
        scanner.position = len(text) - len(text.lstrip())
    k = scanner.integer()
    scanner.literal(':')
    a = scanner.axis()
    scanner.literal(':')
    b = scanner.axis()
    c = scanner.axis()
    if not scanner.at_end():
        scanner.fail('Unexpected trailing input')
    return GroupSpec(k, a, b, c)


def parse_gate_word(text: str) -> list[GateLetter]:
    """
    Parses a product of gates such as "H T S'" or "V8_3 R13†"; the empty word is the identity.

    Tokens are X, Y, Z, S, T, H, V<k>_<a> and R<a><b>, each optionally followed by ' or †.
    """
    scanner = _Scanner(text)
    letters: list[GateLetter] = []
    while True:
        while scanner.peek() in _SEPARATORS:
            scanner.position += 1
        if scanner.at_end():
            return letters
        ch = scanner.peek()
        if ch == 'V':
            scanner.position += 1
            k = scanner.integer()
            scanner.literal('_')
            gate = GateLetter('V', k, scanner.axis())
        elif ch == 'R':
            scanner.position += 1
            gate = GateLetter('R', 1, scanner.axis(), scanner.axis())
        elif ch in GATE_ALIASES:
            scanner.position += 1
            gate = GATE_ALIASES[ch]
        else:
            scanner.fail(f'Unknown gate {ch!r}')
        if scanner.dagger():
            gate = GateLetter(gate.kind, gate.k, gate.a, gate.b, dagger=not gate.dagger)
        letters.append(gate)
