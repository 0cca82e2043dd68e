"""Mechanical, Christoffel, and eventually periodic words over integer digits.

Finite words are plain tuples of ints.  Eventually periodic words get a small
canonical-form class so that equality and lexicographic order are decidable.
The two-letter alphabet used downstream is {b-1, b} for an integer b >= 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from .diophantine import ContinuedFraction
from .errors import PreconditionError
from .intervals import Enclosure

Word = Tuple[int, ...]

Slope = Union[Fraction, ContinuedFraction]


# ---------------------------------------------------------------------------
# Mechanical words
# ---------------------------------------------------------------------------


def mechanical_prefix(alpha: Slope, rho: Fraction = Fraction(0), n: int = 0,
                      upper: bool = False) -> Word:
    """First n letters of the mechanical word with slope alpha and intercept rho.

    Lower version: s(k) = floor(alpha*(k+1) + rho) - floor(alpha*k + rho),
    k = 0..n-1; the upper version uses ceilings.  Exact arithmetic throughout:
    an irrational slope (a ContinuedFraction) is handled through the exact
    floor table of :meth:`ContinuedFraction.floors_upto`, never through floats.
    """
    if n < 0:
        raise PreconditionError("prefix length must be >= 0")
    rho = Fraction(rho)
    if not 0 <= rho <= 1:
        raise PreconditionError("intercept must lie in [0, 1]")
    if isinstance(alpha, ContinuedFraction):
        if rho != 0 and rho != 1:
            raise PreconditionError(
                "irrational slope supports only integer intercepts here")
        return _mechanical_prefix_cf(alpha, n, upper)
    alpha = Fraction(alpha)
    if alpha < 0:
        raise PreconditionError("slope must be >= 0")
    rnd = _ceil_frac if upper else _floor_frac
    prev = rnd(rho)
    out = []
    for k in range(1, n + 1):
        cur = rnd(alpha * k + rho)
        out.append(cur - prev)
        prev = cur
    return tuple(out)


def _mechanical_prefix_cf(alpha: ContinuedFraction, n: int, upper: bool) -> Word:
    floors = alpha.floors_upto(n)
    if not upper:
        return mechanical_prefix_floors(floors)
    # For irrational alpha, ceil(k*alpha) = floor(k*alpha) + 1 for k >= 1.
    ceils = [0] + [f + 1 for f in floors[1:]]
    return tuple(ceils[k + 1] - ceils[k] for k in range(n))


def mechanical_prefix_floors(floors: Sequence[int]) -> Word:
    """First differences of a precomputed floor table [floor(0*a), ..., floor(n*a)]."""
    return tuple(floors[k + 1] - floors[k] for k in range(len(floors) - 1))


def _floor_frac(x: Fraction) -> int:
    return x.numerator // x.denominator


def _ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


# ---------------------------------------------------------------------------
# Christoffel / central words
# ---------------------------------------------------------------------------


def christoffel(p: int, q: int, upper: bool = False) -> Word:
    """The Christoffel word of slope p/q on {0,1} (length q).

    Lower word = 0 z 1 and upper word = 1 z 0 where z is the central word.
    Requires 0 <= p <= q reduced, q >= 1; the degenerate slopes give 0 and 1.
    """
    if q < 1 or p < 0 or p > q or math.gcd(p, q) != 1:
        raise PreconditionError("slope must be reduced with 0 <= p <= q, q >= 1")
    return mechanical_prefix(Fraction(p, q), Fraction(0), q, upper=upper)


def central_word(p: int, q: int) -> Word:
    """The central word z of slope p/q: the lower Christoffel word minus its
    first and last letters.  A palindrome of length q - 2."""
    w = christoffel(p, q)
    return w[1:-1]


def _check_slope(p: int, q: int) -> None:
    if q < 1 or not (0 < p < q):
        raise PreconditionError("slope must satisfy 0 < p < q")
    if math.gcd(p, q) != 1:
        raise PreconditionError("slope must be in lowest terms")


def to_alphabet(w: Sequence[int], b: int) -> Word:
    """Rename letters 0 -> b-1, 1 -> b."""
    if b < 1:
        raise PreconditionError("alphabet parameter b must be >= 1")
    return tuple(b - 1 + x for x in w)


def bzb_word(b: int, p: int, q: int) -> Word:
    """The word b z b where z is the central word of slope p/q written on
    the alphabet {b-1, b}; length q for 0 < p < q.

    Degenerate slopes follow the single-letter conventions: p = 0 gives the
    one-letter word (b,) and p = q = 1 gives (b+1,).
    """
    if b < 1:
        raise PreconditionError("alphabet parameter b must be >= 1")
    if p == 0:
        return (b,)
    if p == q:
        if p != 1:
            raise PreconditionError("slope must be reduced")
        return (b + 1,)
    _check_slope(p, q)
    z = to_alphabet(central_word(p, q), b)
    return (b,) + z + (b,)


def characteristic_prefix(alpha, n: int, floors: Optional[Sequence[int]] = None) -> Word:
    """First n letters of the characteristic word of an irrational slope.

    ``alpha`` may be anything accepted by ``mechanical_prefix`` when ``floors``
    is given as a table of floor(m * alpha) for m = 0..n+1.  The word is the
    upper mechanical word with intercept 0, shifted one step left (its first
    letter is always 1 and carries no information).
    """
    if floors is not None:
        if len(floors) < n + 2:
            raise PreconditionError("floor table too short")
        return mechanical_prefix_floors(floors)[1:n + 1]
    word = mechanical_prefix(alpha, Fraction(0), n + 1, upper=True)
    return word[1:]


# ---------------------------------------------------------------------------
# Eventually periodic words
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PeriodicWord:
    """An eventually periodic right-infinite word pre (per)^w in canonical form.

    Canonical means: the period is primitive (not a power of a shorter word)
    and the preperiod is as short as possible (its last letter differs from
    the corresponding letter of the rotated period).  Equality of canonical
    forms is then equality of the infinite words.
    """

    pre: Word
    per: Word

    def __post_init__(self):
        if len(self.per) == 0:
            raise PreconditionError("period must be nonempty")

    @classmethod
    def make(cls, pre: Sequence[int], per: Sequence[int]) -> "PeriodicWord":
        pre, per = tuple(pre), tuple(per)
        if len(per) == 0:
            raise PreconditionError("period must be nonempty")
        per = _primitive_root(per)
        # Roll letters from the end of the preperiod into the period while the
        # infinite word is unchanged: pre[:-1] + (x + per[:-1])^w == pre + per^w
        # whenever pre[-1] == per[-1].
        pre, per = list(pre), list(per)
        while pre and pre[-1] == per[-1]:
            per = [pre[-1]] + per[:-1]
            pre.pop()
        return cls(tuple(pre), tuple(per))

    @classmethod
    def constant(cls, letter: int) -> "PeriodicWord":
        return cls.make((), (letter,))

    @classmethod
    def from_finite(cls, w: Sequence[int]) -> "PeriodicWord":
        """w followed by 0^w."""
        return cls.make(tuple(w), (0,))

    def __getitem__(self, i: int) -> int:
        if i < 0:
            raise PreconditionError("word positions are nonnegative")
        if i < len(self.pre):
            return self.pre[i]
        return self.per[(i - len(self.pre)) % len(self.per)]

    def prefix(self, n: int) -> Word:
        return tuple(self[i] for i in range(n))

    def shift(self, k: int = 1) -> "PeriodicWord":
        """Drop the first k letters."""
        if k <= len(self.pre):
            return PeriodicWord.make(self.pre[k:], self.per)
        k -= len(self.pre)
        r = k % len(self.per)
        return PeriodicWord.make((), self.per[r:] + self.per[:r])

    def letters(self) -> Iterator[int]:
        i = 0
        while True:
            yield self[i]
            i += 1

    def __str__(self) -> str:
        pre = "".join(_letter_str(x) for x in self.pre)
        per = "".join(_letter_str(x) for x in self.per)
        return f"{pre}({per})^w"


def _primitive_root(w: Word) -> Word:
    """Shortest u with w = u^k (classic failure-function trick)."""
    n = len(w)
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k > 0 and w[i] != w[k]:
            k = fail[k - 1]
        if w[i] == w[k]:
            k += 1
        fail[i] = k
    d = n - fail[-1] if n else 0
    if d and n % d == 0:
        return w[:d]
    return w


def _letter_str(x: int) -> str:
    return str(x) if 0 <= x <= 9 else f"[{x}]"


WordLike = Union[Sequence[int], PeriodicWord]


def lex_compare(u: WordLike, v: WordLike, horizon: int = 10 ** 6) -> int:
    """-1 / 0 / +1 for the lexicographic order of two words.

    Finite words are compared as written (prefix order: a proper prefix is
    smaller).  Two PeriodicWords are compared exactly: the order is decided by
    the first len(pre_u) + len(pre_v) + lcm(|per_u|, |per_v|) letters.  A
    finite word against a PeriodicWord is padded with 0^w.
    """
    fin_u = not isinstance(u, PeriodicWord)
    fin_v = not isinstance(v, PeriodicWord)
    if fin_u and fin_v:
        tu, tv = tuple(u), tuple(v)
        return -1 if tu < tv else (1 if tu > tv else 0)
    pu = PeriodicWord.from_finite(u) if fin_u else u
    pv = PeriodicWord.from_finite(v) if fin_v else v
    bound = len(pu.pre) + len(pv.pre) + _lcm(len(pu.per), len(pv.per))
    if bound > horizon:
        raise PreconditionError("periods too long for exact comparison")
    for i in range(bound):
        a, b = pu[i], pv[i]
        if a != b:
            return -1 if a < b else 1
    return 0


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


# ---------------------------------------------------------------------------
# Shift-maximality (admissibility of digit sequences)
# ---------------------------------------------------------------------------


def is_parry_admissible(w: WordLike) -> bool:
    """True iff the word is lexicographically strictly greater than every one
    of its proper shifts.

    A finite word is read as w 0^w.  This is the admissibility condition for a
    sequence to occur as the greedy expansion of 1 in some base > 1.
    """
    if not isinstance(w, PeriodicWord) and len(tuple(w)) == 0:
        raise PreconditionError("the empty word has no admissibility status")
    pw = PeriodicWord.from_finite(w) if not isinstance(w, PeriodicWord) else w
    n_shifts = len(pw.pre) + len(pw.per)
    for k in range(1, n_shifts):
        if lex_compare(pw.shift(k), pw) >= 0:
            return False
    # Every further shift repeats one of the tails already checked (or is the
    # word itself, for a purely periodic word, which does not count).
    return True


# ---------------------------------------------------------------------------
# Common prefixes of neighbouring mechanical words
# ---------------------------------------------------------------------------


def common_prefix_radius(alpha: Slope, n: int, side: str) -> Union[Fraction, Enclosure]:
    """How far a slope may move before some of the first n letters can change.

    For rational alpha = p/q, every slope within the returned radius on the
    stated side ("below" or "above") shares the length-n word prefix, where
    the radius is the minimum over 1 <= m <= n with q not dividing m of
    frac(m*alpha)/m (below) or (1 - frac(m*alpha))/m (above).  Integer slopes
    (where that minimum is vacuous) use the radius 1/n instead.

    For an irrational slope only side="two_sided" is meaningful; the radius
    min over m of dist(m*alpha, Z)/m is then itself irrational and is
    returned as a certified Enclosure.
    """
    if n < 1:
        raise PreconditionError("need n >= 1")
    if isinstance(alpha, ContinuedFraction):
        if side != "two_sided":
            raise PreconditionError("irrational slopes take side='two_sided'")
        return _two_sided_radius_cf(alpha, n)
    if side == "two_sided":
        raise PreconditionError("rational slopes take side 'below' or 'above'")
    if side not in ("below", "above"):
        raise PreconditionError("side must be 'below', 'above' or 'two_sided'")
    alpha = Fraction(alpha)
    if alpha < 0:
        raise PreconditionError("slope must be >= 0")
    q = alpha.denominator
    best: Optional[Fraction] = None
    for m in range(1, n + 1):
        if m % q == 0:
            continue
        frac = m * alpha - _floor_frac(m * alpha)
        r = frac / m if side == "below" else (1 - frac) / m
        if best is None or r < best:
            best = r
    if best is None:
        # Integer slope: every frac(m*alpha) vanishes, and the applicable
        # radius is the one that keeps a length-n constant block intact.
        best = Fraction(1, n)
    return best


def _two_sided_radius_cf(alpha: ContinuedFraction, n: int) -> Enclosure:
    # Enclose alpha tightly enough that each m*alpha sits strictly between
    # the integers given by the exact floor table.
    floors = alpha.floors_upto(n)
    i = 2
    while True:
        enc = alpha.value_enclosure(i)
        lo: Optional[Fraction] = None
        hi: Optional[Fraction] = None
        ok = True
        for m in range(1, n + 1):
            me = enc * m
            if not (floors[m] < me.lo and me.hi < floors[m] + 1):
                ok = False
                break
            frac_lo, frac_hi = me.lo - floors[m], me.hi - floors[m]
            d_lo = min(frac_lo, 1 - frac_hi)
            d_hi = min(frac_hi, 1 - frac_lo)
            r_lo, r_hi = d_lo / m, d_hi / m
            lo = r_lo if lo is None else min(lo, r_lo)
            hi = r_hi if hi is None else min(hi, r_hi)
        if ok:
            return Enclosure(lo, hi)
        i += 1


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def word_str(w: WordLike) -> str:
    if isinstance(w, PeriodicWord):
        return str(w)
    return "".join(_letter_str(x) for x in w)


def parse_word(s: str) -> Word:
    """Inverse of word_str: digits, with multi-digit letters in brackets."""
    out: List[int] = []
    i = 0
    while i < len(s):
        c = s[i]
        if c == "[":
            j = s.index("]", i)
            out.append(int(s[i + 1:j]))
            i = j + 1
        elif c.isdigit():
            out.append(int(c))
            i += 1
        else:
            raise PreconditionError(f"bad word character: {c!r}")
    return tuple(out)


def periodic_to_json(w: PeriodicWord) -> dict:
    return {"pre": list(w.pre), "per": list(w.per)}


def periodic_from_json(d: dict) -> PeriodicWord:
    return PeriodicWord.make(d["pre"], d["per"])
