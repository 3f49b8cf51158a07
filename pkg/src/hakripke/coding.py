"""Pairing, sequence codes and Gödel numbering.

Two sequence codings live here. ``encode_seq`` is the prime-power code
``∏ p_i^(a_i + 1)``; it is the decoding target of the ``dec`` symbol used
for quantifier-block contraction. Its codes grow exponentially with the
entries, so nested structures (formulas, programs, traces, proofs) are
instead coded with ``pack``, an injective code whose bit length is linear
in the total bit length of the entries.
"""
from __future__ import annotations

import re
from functools import lru_cache

from .syntax.ast import (
    And, App, Bot, Eq, Exists, Forall, Formula, Implies, Not, Or, Param, Pred,
    Top, Var, numeral, substitute,
)


class CodeError(ValueError):
    """An integer that is not a valid code of the requested kind."""


# ------------------------------------------------------------------ pairing

def pair(x: int, y: int) -> int:
    """j(x, y) = 2^x (2y + 1) - 1."""
    if x < 0 or y < 0:
        raise ValueError("pair is defined on natural numbers")
    return (1 << x) * (2 * y + 1) - 1


def unpair(n: int) -> tuple:
    if n < 0:
        raise ValueError("unpair is defined on natural numbers")
    m = n + 1
    x = (m & -m).bit_length() - 1
    return x, (m >> x) >> 1


def j1(n: int) -> int:
    return unpair(n)[0]


def j2(n: int) -> int:
    return unpair(n)[1]


# ------------------------------------------------------ prime-power sequences

_PRIMES = [2]


def nth_prime(i: int) -> int:
    while len(_PRIMES) <= i:
        c = _PRIMES[-1] + 1
        while any(c % p == 0 for p in _PRIMES if p * p <= c):
            c += 1
        _PRIMES.append(c)
    return _PRIMES[i]


def encode_seq(elems) -> int:
    n = 1
    for i, a in enumerate(elems):
        if a < 0:
            raise ValueError("sequence entries must be natural numbers")
        n *= nth_prime(i) ** (a + 1)
    return n


def _exponent(n: int, p: int) -> int:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def decode_at(n: int, i: int) -> int:
    """(n)_i: exponent of the i-th prime minus one; 0 when absent."""
    if n <= 0:
        return 0
    e = _exponent(n, nth_prime(i))
    return e - 1 if e > 0 else 0


def decode_seq(n: int) -> list:
    """Exact inverse of encode_seq; raises CodeError on other integers."""
    if n < 1:
        raise CodeError(f"{n} is not a sequence code")
    out = []
    i = 0
    while n > 1:
        p = nth_prime(i)
        e = _exponent(n, p)
        if e == 0:
            raise CodeError("sequence code has a gap or a foreign prime factor")
        out.append(e - 1)
        n //= p ** e
        i += 1
    return out


# ------------------------------------------------------------ packed codes

# Entries are LEB128: 7-bit groups, least significant first, high bit set on
# every byte but the last. Large entries are converted with a logarithmic
# number of whole-integer mask-and-shift steps (moving the upper half of
# every block of groups at once) instead of a per-byte loop.

_SMALL = 1 << 448


@lru_cache(maxsize=4096)
def _half_mask(j: int, slots: int) -> int:
    """In each 2^(j+4)-bit slot, the bits [7·2^j, 14·2^j)."""
    size = 1 << (j + 4)
    pat = ((1 << (7 << j)) - 1) << (7 << j)
    return int.from_bytes(pat.to_bytes(size // 8, "little") * slots, "little")


def _levels(groups: int) -> int:
    return max(groups - 1, 0).bit_length()


def _spread(n: int, groups: int) -> int:
    top = _levels(groups)
    for j in range(top - 1, -1, -1):
        m = _half_mask(j, 1 << (top - 1 - j))
        n = (n & ~m) | ((n & m) << (1 << j))
    return n


def _compress(n: int, groups: int) -> int:
    top = _levels(groups)
    for j in range(top):
        m = _half_mask(j, 1 << (top - 1 - j)) << (1 << j)
        n = (n & ~m) | ((n & m) >> (1 << j))
    return n


def _varint(n: int, out: bytearray):
    if n < _SMALL:
        while True:
            b = n & 0x7F
            n >>= 7
            if n:
                out.append(b | 0x80)
            else:
                out.append(b)
                return
    groups = -(-n.bit_length() // 7)
    data = bytearray(_spread(n, groups).to_bytes(groups, "little"))
    data[:-1] = data[:-1].translate(_SET_HIGH)
    out += data


_SET_HIGH = bytes(b | 0x80 for b in range(256))
_CLEAR_HIGH = bytes(b & 0x7F for b in range(256))
_ENTRY = re.compile(rb"[\x80-\xff]*[\x00-\x7f]")


def _entry_value(seg: bytes) -> int:
    if len(seg) <= 64:
        value = 0
        for k, b in enumerate(seg):
            value |= (b & 0x7F) << (7 * k)
        return value
    return _compress(int.from_bytes(seg.translate(_CLEAR_HIGH), "little"), len(seg))


def pack(elems) -> int:
    """Injective linear-size code of a finite sequence of naturals."""
    buf = bytearray(b"\x01")
    for a in elems:
        if a < 0:
            raise ValueError("sequence entries must be natural numbers")
        _varint(a, buf)
    return int.from_bytes(buf, "big")


def unpack(n: int) -> list:
    if n < 1:
        raise CodeError(f"{n} is not a packed code")
    data = n.to_bytes((n.bit_length() + 7) // 8, "big")
    if data[0] != 1:
        raise CodeError("packed code lacks its leading marker")
    out = []
    pos = 1
    for m in _ENTRY.finditer(data, 1):
        if m.start() != pos:
            break
        seg = m.group()
        if seg[-1] == 0 and len(seg) > 1:
            raise CodeError("non-canonical entry in packed code")
        out.append(_entry_value(seg))
        pos = m.end()
    if pos != len(data):
        raise CodeError("truncated entry in packed code")
    return out


# ---------------------------------------------------------- Gödel numbering

TAGS = {
    "var": 1, "app": 2, "param": 3,
    "true": 10, "false": 11, "eq": 12, "pred": 13, "and": 14, "or": 15,
    "implies": 16, "not": 17, "forall": 18, "exists": 19,
    "INC": 20, "DECJZ": 21, "HALT": 22,
}
_TAG_LAYOUT = {
    "var": "name", "app": "name, n, arg_1 .. arg_n", "param": "value",
    "true": "-", "false": "-", "eq": "term, term", "pred": "name, n, arg_1 .. arg_n",
    "and": "formula, formula", "or": "formula, formula", "implies": "formula, formula",
    "not": "formula", "forall": "name, formula", "exists": "name, formula",
    "INC": "register", "DECJZ": "register, target", "HALT": "-",
}
_BINARY_TAGS = {And: "and", Or: "or", Implies: "implies"}
_TAG_NAMES = {v: k for k, v in TAGS.items()}


def name_code(name: str) -> int:
    return int.from_bytes(name.encode("utf-8"), "big")


def name_decode(n: int) -> str:
    if n <= 0:
        raise CodeError("empty symbol name")
    raw = n.to_bytes((n.bit_length() + 7) // 8, "big")
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CodeError(f"symbol name is not valid UTF-8: {exc}") from None


def tokens(obj) -> list:
    """Prefix (Polish) token sequence of a term, formula or instruction."""
    out = []
    _emit(obj, out)
    return out


def _emit(x, out):
    if isinstance(x, Var):
        out += [TAGS["var"], name_code(x.name)]
    elif isinstance(x, App):
        out += [TAGS["app"], name_code(x.fn), len(x.args)]
        for a in x.args:
            _emit(a, out)
    elif isinstance(x, Param):
        if not isinstance(x.value, int) or isinstance(x.value, bool) or x.value < 0:
            raise ValueError(f"only natural-number parameters are codable, got {x.value!r}")
        out += [TAGS["param"], x.value]
    elif isinstance(x, Top):
        out.append(TAGS["true"])
    elif isinstance(x, Bot):
        out.append(TAGS["false"])
    elif isinstance(x, Eq):
        out.append(TAGS["eq"])
        _emit(x.left, out)
        _emit(x.right, out)
    elif isinstance(x, Pred):
        out += [TAGS["pred"], name_code(x.name), len(x.args)]
        for a in x.args:
            _emit(a, out)
    elif type(x) in _BINARY_TAGS:
        out.append(TAGS[_BINARY_TAGS[type(x)]])
        _emit(x.left, out)
        _emit(x.right, out)
    elif isinstance(x, Not):
        out.append(TAGS["not"])
        _emit(x.body, out)
    elif isinstance(x, (Forall, Exists)):
        out += [TAGS["forall" if isinstance(x, Forall) else "exists"], name_code(x.var)]
        _emit(x.body, out)
    elif hasattr(x, "godel_tokens"):
        out += x.godel_tokens()
    else:
        raise TypeError(f"cannot Gödel-number {x!r}")


@lru_cache(maxsize=1 << 16)
def godel_number(obj) -> int:
    return pack(tokens(obj))


class _Reader:
    def __init__(self, toks):
        self.toks = toks
        self.i = 0

    def next(self, what):
        if self.i >= len(self.toks):
            raise CodeError(f"code ends early: expected {what} at token {self.i}")
        v = self.toks[self.i]
        self.i += 1
        return v

    def term(self):
        at = self.i
        tag = self.next("a term tag")
        if tag == TAGS["var"]:
            return Var(name_decode(self.next("a variable name")))
        if tag == TAGS["app"]:
            name = name_decode(self.next("a function name"))
            n = self.next("an argument count")
            return App(name, tuple(self.term() for _ in range(n)))
        if tag == TAGS["param"]:
            return Param(self.next("a parameter value"))
        raise CodeError(f"token {at}: tag {tag} is not a term tag")

    def formula(self):
        at = self.i
        tag = self.next("a formula tag")
        name = _TAG_NAMES.get(tag)
        if name == "true":
            return Top()
        if name == "false":
            return Bot()
        if name == "eq":
            return Eq(self.term(), self.term())
        if name == "pred":
            pname = name_decode(self.next("a predicate name"))
            n = self.next("an argument count")
            return Pred(pname, tuple(self.term() for _ in range(n)))
        if name in ("and", "or", "implies"):
            cls = {"and": And, "or": Or, "implies": Implies}[name]
            return cls(self.formula(), self.formula())
        if name == "not":
            return Not(self.formula())
        if name in ("forall", "exists"):
            var = name_decode(self.next("a bound variable"))
            body = self.formula()
            return Forall(var, body) if name == "forall" else Exists(var, body)
        raise CodeError(f"token {at}: tag {tag} is not a formula tag")


@lru_cache(maxsize=1 << 16)
def godel_decode(n: int):
    """Decode a formula (or term) code; raises CodeError with a diagnostic."""
    toks = unpack(n)
    if not toks:
        raise CodeError("empty code")
    r = _Reader(toks)
    obj = r.term() if toks[0] in (TAGS["var"], TAGS["app"], TAGS["param"]) else r.formula()
    if r.i != len(toks):
        raise CodeError(f"{len(toks) - r.i} trailing tokens after a complete object")
    return obj


def decode_formula(n: int) -> Formula:
    obj = godel_decode(n)
    if not isinstance(obj, Formula):
        raise CodeError("code denotes a term, not a formula")
    return obj


def numeral_subst_code(formula_code: int, c: int, var: str) -> int:
    """⌜φ(ċ)⌝ from ⌜φ(x)⌝: substitute the numeral for c."""
    f = decode_formula(formula_code)
    if var not in f.free_vars:
        raise ValueError(f"variable {var!r} is not free in the coded formula")
    return godel_number(substitute(f, var, numeral(c)))


def dump_tags() -> str:
    lines = ["tag  kind     payload"]
    for name, tag in sorted(TAGS.items(), key=lambda kv: kv[1]):
        lines.append(f"{tag:>3}  {name:<8} {_TAG_LAYOUT[name]}")
    lines.append("names are UTF-8 bytes read as a big-endian integer;")
    lines.append("a code is the packed prefix token sequence: 0x01 then LEB128 varints, big-endian integer.")
    return "\n".join(lines)
