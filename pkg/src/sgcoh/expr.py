"""Parsing and printing of chain elements in the CLI expression grammar.

Grammar: a path is either `e(<vertex>)` or arrow names joined by `*` in
written order; a pair is `(<path>|<path>)`; a term is an optional rational
coefficient (`3`, `-1/2`) followed by a pair; terms are joined by `+` or
`-`. An expression whose pairs all share one second-word length parses as
a high-block element of that arity; two adjacent lengths split into the
low and high blocks. A leading `low` keyword forces the single-length
reading into the low block instead.
"""

import re
from fractions import Fraction

from .errors import UsageError
from .gerst import PropElement
from .quiver import ParallelPair, Path, format_path

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_COEFF = re.compile(r"(\d+(?:/\d+)?)")


def _parse_path(text, quiver, context):
    body = text.strip()
    if not body:
        raise UsageError("empty path in %s" % context)
    trivial = re.match(r"e\(\s*([A-Za-z0-9_]+)\s*\)\Z", body)
    if trivial:
        vertex = trivial.group(1)
        if vertex not in quiver.vertex_index:
            raise UsageError("unknown vertex %r in %s" % (vertex, context))
        return Path(quiver, (), vertex)
    names = [piece.strip() for piece in body.split("*")]
    indices = []
    for name in names:
        if not _IDENT.match(name):
            raise UsageError("bad arrow name %r in %s" % (name, context))
        if name not in quiver.arrow_index:
            raise UsageError("unknown arrow %r in %s" % (name, context))
        indices.append(quiver.arrow_index[name])
    for k in range(len(indices) - 1):
        left = quiver.arrows[indices[k]]
        right = quiver.arrows[indices[k + 1]]
        if left.source != right.target:
            raise UsageError(
                "arrows %s*%s do not compose in %s"
                % (left.name, right.name, context)
            )
    return Path(quiver, tuple(indices))


def _scan_pair(text, start):
    """Return (pair body, end index) for the '(' at start, nesting-aware."""
    depth = 0
    for j in range(start, len(text)):
        if text[j] == "(":
            depth += 1
        elif text[j] == ")":
            depth -= 1
            if depth == 0:
                return text[start + 1 : j], j + 1
    raise UsageError("unbalanced parenthesis in element expression")


def _split_pair(body, context):
    depth = 0
    for j, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "|" and depth == 0:
            return body[:j], body[j + 1 :]
    raise UsageError("pair %r needs a | separator" % context)


def parse_expression(text, quiver, field):
    """Parse an expression into a PropElement over the given quiver."""
    s = text.strip()
    if not s:
        raise UsageError("empty element expression")
    if s == "0":
        raise UsageError("the zero expression carries no arity; spell out a pair")
    force_low = False
    if s.startswith("low") and (len(s) == 3 or s[3] in " \t("):
        force_low = True
        s = s[3:].lstrip()
    terms = []
    i = 0
    first_term = True
    while i < len(s):
        while i < len(s) and s[i].isspace():
            i += 1
        if i >= len(s):
            break
        sign = 1
        if s[i] in "+-":
            sign = -1 if s[i] == "-" else 1
            i += 1
            while i < len(s) and s[i].isspace():
                i += 1
        elif not first_term:
            raise UsageError(
                "expected + or - between terms near %r" % s[i : i + 12]
            )
        coeff = Fraction(1)
        m = _COEFF.match(s, i)
        if m:
            coeff = Fraction(m.group(1))
            i = m.end()
            while i < len(s) and s[i].isspace():
                i += 1
        if i >= len(s) or s[i] != "(":
            raise UsageError(
                "expected a (path|path) pair near %r" % s[i : i + 12]
            )
        body, i = _scan_pair(s, i)
        context = "(%s)" % body
        left, right = _split_pair(body, context)
        gamma = _parse_path(left, quiver, context)
        beta = _parse_path(right, quiver, context)
        if gamma.source != beta.source or gamma.target != beta.target:
            raise UsageError("paths in %s are not parallel" % context)
        terms.append((field.scalar(sign * coeff), gamma, beta))
        first_term = False
    if not terms:
        raise UsageError("empty element expression")
    m_len = len(terms[0][1])
    for _, gamma, _ in terms:
        if len(gamma) != m_len:
            raise UsageError("first-path lengths differ across terms")
    lengths = sorted(set(len(beta) for _, _, beta in terms))
    if len(lengths) == 1:
        if force_low:
            arity_out = lengths[0] + 1
        else:
            arity_out = lengths[0]
    elif len(lengths) == 2 and lengths[1] == lengths[0] + 1:
        if force_low:
            raise UsageError("a low element cannot mix second-word lengths")
        arity_out = lengths[1]
    else:
        raise UsageError(
            "second-word lengths %s do not fit one arity"
            % ", ".join(str(n) for n in lengths)
        )
    low = {}
    high = {}
    for coeff, gamma, beta in terms:
        block = high if len(beta) == arity_out else low
        key = ParallelPair(gamma, beta)
        if key in block:
            block[key] = block[key] + coeff
        else:
            block[key] = coeff
    return PropElement(quiver, m_len, arity_out, low, high)


def _coeff_text(coeff):
    if isinstance(coeff, Fraction):
        return str(coeff)
    value = getattr(coeff, "v", None)
    if value is not None:
        return str(value)
    return str(coeff)


def _is_negative(coeff):
    return isinstance(coeff, Fraction) and coeff < 0


def format_pair(pair):
    return "(%s|%s)" % (format_path(pair.first), format_path(pair.second))


def format_element(element):
    """Print an element in the expression grammar, canonically ordered."""
    quiver = element.quiver
    pieces = []
    for block, p_len in ((element.low, element.p - 1), (element.high, element.p)):
        ordered = sorted(
            block.items(),
            key=lambda item: quiver.pair_position(element.m, p_len, item[0]),
        )
        pieces.extend(ordered)
    if not pieces:
        return "0"
    prefix = "low " if element.low and not element.high else ""
    out = []
    for idx, (pair, coeff) in enumerate(pieces):
        negative = _is_negative(coeff)
        magnitude = -coeff if negative else coeff
        body = format_pair(pair)
        text = _coeff_text(magnitude)
        term = body if text == "1" else "%s %s" % (text, body)
        if idx == 0:
            out.append("-" + term if negative else term)
        else:
            out.append((" - " if negative else " + ") + term)
    return prefix + "".join(out)
