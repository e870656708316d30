"""Formal noncommutative polynomials in letters x1..xm over an exact field.

A word is a tuple of 1-based letter indices; the empty tuple is the empty
word (the identity).  NcPoly keeps a zero-free map from words to coefficients,
so equality is structural.  NcExpr is a factored companion form, a sum of
scalar * product-of-NcPoly terms, used where full expansion would blow up; it
evaluates exactly and carries a certified degree upper bound.
"""

from __future__ import annotations

from .errors import FieldMismatchError
from .fields import Field, FieldElement
from .matrices import Mat, mat_from_np
from . import kernels

import numpy as np

Word = tuple

EMPTY_WORD: Word = ()


def word_text(w: Word) -> str:
    return ".".join("x%d" % k for k in w) if w else "1"


def word_from_text(text: str) -> Word:
    text = text.strip()
    if text == "1":
        return EMPTY_WORD
    parts = text.split(".")
    out = []
    for part in parts:
        part = part.strip()
        if not part.startswith("x"):
            raise ValueError("bad word %r" % text)
        out.append(int(part[1:]))
    return tuple(out)


def is_multilinear(w: Word) -> bool:
    return len(set(w)) == len(w)


def eval_word(w: Word, mats) -> Mat:
    """Substitute letter k -> mats[k-1]; the empty word gives the identity."""
    n = mats[0].n
    field = mats[0].field
    acc = Mat.identity(field, n)
    for k in w:
        acc = acc @ mats[k - 1]
    return acc


def _term_key(w: Word):
    return (len(w), w)


class NcPoly:
    """Nonzero-coefficient map word -> FieldElement, with nominal arity m."""

    __slots__ = ("field", "m", "_terms", "_hash")

    def __init__(self, field: Field, m: int, terms=None):
        clean = {}
        if terms:
            for w, c in terms.items():
                c = field.elem(c)
                if not c.is_zero():
                    clean[tuple(w)] = c
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, val):
        raise AttributeError("NcPoly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(field, m=1):
        return NcPoly(field, m, {})

    @staticmethod
    def one(field, m=1):
        return NcPoly(field, m, {EMPTY_WORD: field.one})

    @staticmethod
    def scalar(field, c, m=1):
        return NcPoly(field, m, {EMPTY_WORD: field.elem(c)})

    @staticmethod
    def letter(field, k, m=None):
        return NcPoly(field, m if m is not None else k, {(k,): field.one})

    @staticmethod
    def word(field, w, m=None):
        w = tuple(w)
        arity = m if m is not None else (max(w) if w else 1)
        return NcPoly(field, arity, {w: field.one})

    # -- structure ---------------------------------------------------------

    def terms(self):
        """(word, coeff) pairs sorted by (length, lexicographic)."""
        return sorted(self._terms.items(), key=lambda kv: _term_key(kv[0]))

    def coeff(self, w: Word) -> FieldElement:
        return self._terms.get(tuple(w), self.field.zero)

    @property
    def formal_degree(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other):
        if other.field is not self.field:
            raise FieldMismatchError("%r vs %r" % (self.field, other.field))

    def __add__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = NcPoly.scalar(self.field, other, self.m)
        self._check(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            s = out.get(w, self.field.zero) + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return NcPoly(self.field, max(self.m, other.m), out)

    def __sub__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = NcPoly.scalar(self.field, other, self.m)
        return self + (-other)

    def __neg__(self):
        return NcPoly(self.field, self.m, {w: -c for w, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            c = self.field.elem(other)
            return NcPoly(self.field, self.m,
                          {w: v * c for w, v in self._terms.items()})
        self._check(other)
        out = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = w1 + w2
                s = out.get(w, self.field.zero) + c1 * c2
                if s.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = s
        return NcPoly(self.field, max(self.m, other.m), out)

    def __rmul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self * other
        return NotImplemented

    # -- evaluation ----------------------------------------------------------

    def eval(self, mats, n: int | None = None) -> Mat:
        """Substitute letter k -> mats[k-1]; ring homomorphism by construction."""
        mats = list(mats)
        if mats:
            if n is None:
                n = mats[0].n
            if any(M.field is not self.field for M in mats):
                raise FieldMismatchError("matrix tuple over a different field")
            if any(M.n != n for M in mats):
                raise ValueError("matrix size mismatch")
        elif n is None:
            raise ValueError("need n for an empty matrix tuple")
        used = max((max(w) for w in self._terms if w), default=0)
        if used > len(mats):
            raise ValueError("polynomial uses x%d but only %d matrices given"
                             % (used, len(mats)))
        if not self._terms:
            return Mat.zeros(self.field, n)
        if not self.field.is_rationals:
            return self._eval_mod(mats, n)
        memo = {EMPTY_WORD: Mat.identity(self.field, n)}

        def value(w):
            got = memo.get(w)
            if got is None:
                got = value(w[:-1]) @ mats[w[-1] - 1]
                memo[w] = got
            return got

        acc = Mat.zeros(self.field, n)
        for w, c in self.terms():
            acc = acc + value(w) * c
        return acc

    def _eval_mod(self, mats, n):
        p = self.field.p
        items = self.terms()
        flat = []
        offs = [0]
        coeffs = []
        for w, c in items:
            flat.extend(k - 1 for k in w)
            offs.append(len(flat))
            coeffs.append(c.value)
        arr = np.stack([M.to_np() for M in mats]) if mats else np.zeros((1, n, n), np.int64)
        out = kernels.eval_words_mod(
            np.array(flat, dtype=np.int64),
            np.array(offs, dtype=np.int64),
            np.array(coeffs, dtype=np.int64),
            arr, p)
        return mat_from_np(self.field, out)

    # -- text ----------------------------------------------------------------

    def __repr__(self):
        if not self._terms:
            return "0"
        pieces = []
        for w, c in self.terms():
            wtxt = word_text(w)
            ctxt = self.field.format(c)
            if w and ctxt == "1":
                pieces.append(wtxt)
            elif w and ctxt == "-1":
                pieces.append("-" + wtxt)
            elif w:
                pieces.append("%s*%s" % (ctxt, wtxt))
            else:
                pieces.append(ctxt)
        out = " + ".join(pieces)
        return out.replace("+ -", "- ")

    def __eq__(self, other):
        if not isinstance(other, NcPoly):
            return NotImplemented
        return self.field is other.field and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash",
                               hash((id(self.field), frozenset(self._terms.items()))))
        return self._hash


def poly_from_text(field, text: str, m: int = 2) -> NcPoly:
    """Inverse of repr: "2*x1.x2 - x1 + 1" style."""
    text = text.strip().replace("- ", "+ -")
    if text in ("", "0"):
        return NcPoly.zero(field, m)
    terms = {}
    for piece in text.split("+"):
        piece = piece.strip()
        if not piece:
            continue
        neg = piece.startswith("-")
        if neg:
            piece = piece[1:].strip()
        if "*" in piece:
            ctxt, wtxt = piece.split("*", 1)
            c = field.parse(ctxt)
            w = word_from_text(wtxt)
        elif piece.startswith("x"):
            c = field.one
            w = word_from_text(piece)
        else:
            c = field.parse(piece)
            w = EMPTY_WORD
        if neg:
            c = -c
        terms[w] = terms.get(w, field.zero) + c
    return NcPoly(field, m, terms)


def substitute(w: Word, hs) -> NcPoly:
    """Formal composition: replace letter k of w by hs[k-1] and expand."""
    hs = list(hs)
    if not hs:
        raise ValueError("need at least one substitution polynomial")
    field = hs[0].field
    m = max(h.m for h in hs)
    out = NcPoly.one(field, m)
    for k in w:
        if not 1 <= k <= len(hs):
            raise ValueError("letter x%d out of range for %d substitutions"
                             % (k, len(hs)))
        out = out * hs[k - 1]
    return out


def alt_sum(polys) -> NcPoly:
    """p1 - p2 + p3 - ..."""
    polys = list(polys)
    if not polys:
        raise ValueError("alternating sum of an empty list")
    if any(p.m != polys[0].m for p in polys):
        raise ValueError("letter counts differ")
    acc = polys[0]
    for l, p in enumerate(polys[1:], start=2):
        acc = acc + (-p if l % 2 == 0 else p)
    return acc


class NcExpr:
    """Sum of coeff * (P1 P2 ... Pk) with NcPoly factors, kept factored.

    The expanded formal degree never exceeds degree_bound, and evaluation
    multiplies evaluated factors, so certified degree claims and exact values
    survive without materializing the product.
    """

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms):
        norm = []
        for c, factors in terms:
            c = field.elem(c)
            if c.is_zero():
                continue
            norm.append((c, tuple(factors)))
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "terms", tuple(norm))

    def __setattr__(self, name, val):
        raise AttributeError("NcExpr is immutable")

    @property
    def degree_bound(self) -> int:
        return max((sum(f.formal_degree for f in fs) for _, fs in self.terms),
                   default=0)

    def eval(self, mats, n: int | None = None) -> Mat:
        mats = list(mats)
        if n is None:
            n = mats[0].n
        acc = Mat.zeros(self.field, n)
        memo = {}
        for c, factors in self.terms:
            prod = Mat.identity(self.field, n)
            for f in factors:
                got = memo.get(id(f))
                if got is None:
                    got = f.eval(mats, n)
                    memo[id(f)] = got
                prod = prod @ got
            acc = acc + prod * c
        return acc

    def expand(self, max_terms: int = 200_000) -> NcPoly:
        est = sum(
            max(1, int(np.prod([len(f) for f in fs]))) if fs else 1
            for _, fs in self.terms)
        if est > max_terms:
            raise ValueError("expansion would create ~%d words" % est)
        m = max((f.m for _, fs in self.terms for f in fs), default=1)
        acc = NcPoly.zero(self.field, m)
        for c, factors in self.terms:
            prod = NcPoly.one(self.field, m)
            for f in factors:
                prod = prod * f
            acc = acc + prod * c
        return acc

    def __eq__(self, other):
        if not isinstance(other, NcExpr):
            return NotImplemented
        return self.field is other.field and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.field), self.terms))

    def __repr__(self):
        if not self.terms:
            return "0"
        pieces = []
        for c, factors in self.terms:
            ctxt = self.field.format(c)
            ftxt = "".join("(%r)" % (f,) for f in factors) or "1"
            pieces.append("%s*%s" % (ctxt, ftxt))
        return " + ".join(pieces).replace("+ -", "- ")
