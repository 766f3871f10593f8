"""Small tokenizer shared by the text grammars (orbifolds, presentations,
Seifert invariants, lens spaces, phase maps)."""

import re

_TOKEN = re.compile(
    r"\s*(?:(?P<int>[+\-−]?\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>\S))"
)


class ParseError(ValueError):
    """Raised on malformed input text; ``offset`` is a byte offset into the input."""

    def __init__(self, message, text, offset, expected=()):
        self.text = text
        self.offset = offset
        self.expected = tuple(expected)
        detail = f"{message} at offset {offset}"
        if self.expected:
            detail += " (expected " + " or ".join(self.expected) + ")"
        super().__init__(detail)


class Tokens:
    """Cursor over a token stream. Tokens are (kind, value, byte_offset)."""

    def __init__(self, text):
        self.text = text
        self.items = []
        pos = 0
        raw = text.encode("utf-8")
        while True:
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == m.start() or not m.group(0).strip():
                break
            kind = m.lastgroup
            value = m.group(kind)
            start = m.start(kind)
            boff = len(text[:start].encode("utf-8"))
            if kind == "int":
                value = int(value.replace("−", "-"))
            self.items.append((kind, value, boff))
            pos = m.end()
        self.end_offset = len(raw)
        self.i = 0

    def peek(self):
        if self.i < len(self.items):
            return self.items[self.i]
        return ("eof", None, self.end_offset)

    def next(self):
        tok = self.peek()
        if tok[0] != "eof":
            self.i += 1
        return tok

    def fail(self, message, expected=()):
        raise ParseError(message, self.text, self.peek()[2], expected)

    def at(self, value):
        kind, v, _ = self.peek()
        return kind in ("punct", "name") and v == value

    def expect(self, value):
        if not self.at(value):
            self.fail(f"unexpected {self._describe()}", [repr(value)])
        return self.next()

    def accept(self, value):
        if self.at(value):
            self.next()
            return True
        return False

    def integer(self):
        kind, v, _ = self.peek()
        if kind != "int":
            # allow a detached sign, e.g. "- 1"
            if kind == "punct" and v in "-+−":
                self.next()
                kind2, v2, _ = self.peek()
                if kind2 == "int" and v2 >= 0:
                    self.next()
                    return -v2 if v in "-−" else v2
            self.fail(f"unexpected {self._describe()}", ["integer"])
        self.next()
        return v

    def name(self):
        kind, v, _ = self.peek()
        if kind != "name":
            self.fail(f"unexpected {self._describe()}", ["identifier"])
        self.next()
        return v

    def finish(self):
        if self.peek()[0] != "eof":
            self.fail(f"trailing {self._describe()}", ["end of input"])

    def _describe(self):
        kind, v, _ = self.peek()
        if kind == "eof":
            return "end of input"
        return f"{v!r}"
