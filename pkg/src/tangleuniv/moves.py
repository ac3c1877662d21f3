"""Diagram rewriting: local slice-word moves and the stabilisation moves.

Every rewrite is anchored: a :class:`MoveSpec` names a catalog entry plus the
slice index (and, for insertions, the strand position) where it acts, so an
application either matches exactly or raises.  The local entries swap or
cancel adjacent slices:

``omega0a``/``omega0b``
    a rotation and its inverse on the same strand cancel,
``omega0c``
    two slices with disjoint position support commute,
``omega0d``
    an equal-signed rotation pair slides through a crossing, each rotation
    following its strand,
``omega2a``/``omega2b``
    a crossing and its inverse at the same position cancel,
``omega3``
    the braid relation on three equal-signed crossings.

The global entries act on closed-up braid words: ``mi`` conjugates by a braid
on the closed strands, and ``mii`` adjoins two fresh closed strands behind an
inverse-pair of crossings (width and closure both grow by two), or removes
such a pair again.

Opposite-signed rotation pairs do *not* slide through crossings in general,
and the wave-style slides (a strand ducking under a neighbouring arc) have no
slice-word form at all: both legs of a crossing land in the same slice, so the
two strands always see a crossing pair in the same order, while a wave needs
opposite orders.  That content lives in the closure map, not in this catalog.
"""

from __future__ import annotations

from typing import Iterator, List, NamedTuple, Sequence, Tuple

from .tangles import Slice, Tangle, TangleError

__all__ = [
    "LOCAL_MOVES",
    "MOVE_NAMES",
    "MoveSpec",
    "applicable_moves",
    "apply_move",
]

_CANCEL_PAIRS = {
    "omega0a": ("C", "C-"),
    "omega0b": ("C-", "C"),
    "omega2a": ("X", "X-"),
    "omega2b": ("X-", "X"),
}

LOCAL_MOVES = ("omega0a", "omega0b", "omega0c", "omega0d", "omega2a", "omega2b", "omega3")
MOVE_NAMES = LOCAL_MOVES + ("mi", "mii")


class MoveSpec(NamedTuple):
    """A catalog entry pinned to a location.

    ``at`` is the index into the slice word where the pattern starts (for
    insertions, the gap index where the new slices go).  ``position`` is the
    strand position used by insertions, which have no slices to read it from.
    ``forward`` selects the rewrite direction; for ``omega0c`` the two
    directions coincide.  ``sign`` picks the ``mii`` flavour and ``braid`` is
    the ``mi`` conjugator as signed generator indices on the closed strands.
    """

    name: str
    at: int = 0
    position: int = 1
    forward: bool = True
    sign: int = 1
    braid: Tuple[int, ...] = ()

    def __str__(self) -> str:
        arrow = ">" if self.forward else "<"
        extra = ""
        if self.name == "mii":
            extra = f" sign={self.sign:+d}"
        elif self.name == "mi":
            extra = f" braid={list(self.braid)}"
        return f"{self.name}{arrow}@{self.at}/p{self.position}{extra}"


def _support(s: Slice) -> frozenset:
    return frozenset((s.p, s.p + 1)) if s.g in ("X", "X-") else frozenset((s.p,))


def _mismatch(move: MoveSpec) -> TangleError:
    return TangleError(f"move {move} does not match the slice word there")


def _splice(T: Tangle, at: int, drop: int, insert: Sequence[Slice],
            width: int = None, closed: int = None) -> Tangle:
    word = list(T.slices)
    word[at:at + drop] = list(insert)
    return Tangle(T.width if width is None else width,
                  T.closed if closed is None else closed, word)


def _braid_slices(word: Sequence[int], offset: int, width: int) -> List[Slice]:
    out = []
    for k in word:
        if k == 0 or offset + abs(k) + 1 > width:
            raise TangleError(f"conjugator index {k} leaves the closed strands")
        out.append(Slice("X" if k > 0 else "X-", offset + abs(k)))
    return out


def apply_move(T: Tangle, move: MoveSpec) -> Tangle:
    """Rewrite ``T`` by one anchored move, or raise on pattern mismatch."""
    name, at = move.name, move.at
    word = T.slices

    if name in _CANCEL_PAIRS:
        g1, g2 = _CANCEL_PAIRS[name]
        if move.forward:
            if not (0 <= at <= len(word) - 2 and word[at].g == g1
                    and word[at + 1] == Slice(g2, word[at].p)):
                raise _mismatch(move)
            return _splice(T, at, 2, [])
        p = move.position
        if not (0 <= at <= len(word)) or p < 1 or p > T.width:
            raise _mismatch(move)
        if g1 in ("X", "X-") and p + 1 > T.width:
            raise _mismatch(move)
        return _splice(T, at, 0, [Slice(g1, p), Slice(g2, p)])

    if name == "omega0c":
        if not (0 <= at <= len(word) - 2):
            raise _mismatch(move)
        a, b = word[at], word[at + 1]
        if _support(a) & _support(b):
            raise _mismatch(move)
        return _splice(T, at, 2, [b, a])

    if name == "omega0d":
        if not (0 <= at <= len(word) - 3):
            raise _mismatch(move)
        a, b, c = word[at], word[at + 1], word[at + 2]
        if move.forward:
            rot, cross = (a, b), c
        else:
            cross, rot = a, (b, c)
        p = cross.p
        ok = (cross.g in ("X", "X-") and rot[0].g == rot[1].g
              and rot[0].g in ("C", "C-")
              and rot[0].p == p and rot[1].p == p + 1)
        if not ok:
            raise _mismatch(move)
        if move.forward:
            return _splice(T, at, 3, [cross, rot[0], rot[1]])
        return _splice(T, at, 3, [rot[0], rot[1], cross])

    if name == "omega3":
        if not (0 <= at <= len(word) - 3):
            raise _mismatch(move)
        a, b, c = word[at], word[at + 1], word[at + 2]
        if a.g not in ("X", "X-") or not (a.g == b.g == c.g):
            raise _mismatch(move)
        if move.forward:
            if not (a.p == c.p and b.p == a.p + 1):
                raise _mismatch(move)
            p = a.p
            return _splice(T, at, 3, [Slice(a.g, p + 1), Slice(a.g, p), Slice(a.g, p + 1)])
        if not (a.p == c.p and b.p == a.p - 1):
            raise _mismatch(move)
        p = b.p
        return _splice(T, at, 3, [Slice(a.g, p), Slice(a.g, p + 1), Slice(a.g, p)])

    if name == "mi":
        if not T.is_braid_word() or T.closed == 0:
            raise TangleError("mi needs a braid word with a partial closure")
        open_count = T.width - T.closed
        conj = _braid_slices(move.braid, open_count, T.width)
        inv = _braid_slices([-k for k in reversed(move.braid)], open_count, T.width)
        return Tangle(T.width, T.closed, conj + list(word) + inv)

    if name == "mii":
        if not T.is_braid_word():
            raise TangleError("mii needs a braid word")
        if move.forward:
            n = T.width
            prefix = ([Slice("X-", n), Slice("X", n + 1)] if move.sign >= 0
                      else [Slice("X-", n + 1), Slice("X", n)])
            return Tangle(n + 2, T.closed + 2, prefix + list(word))
        n = T.width - 2
        if n < 0 or T.closed < 2 or len(word) < 2:
            raise _mismatch(move)
        head, rest = list(word[:2]), word[2:]
        if head not in ([Slice("X-", n), Slice("X", n + 1)],
                        [Slice("X-", n + 1), Slice("X", n)]):
            raise _mismatch(move)
        if any(max(_support(s)) > n for s in rest):
            raise _mismatch(move)
        return Tangle(n, T.closed - 2, rest)

    raise TangleError(f"unknown move name {name!r}")


def applicable_moves(T: Tangle, include_markov: bool = True,
                     include_insertions: bool = False) -> Iterator[MoveSpec]:
    """Every anchored instance whose pattern matches ``T``.

    Pattern-matched instances (cancellations, commutations, slides, braid
    relations and their reversals, and ``mii`` shrinking) are always yielded.
    Insertions match at every gap, so they are opt-in; ``mi`` is yielded with
    each single-generator conjugator, which generate the whole family.
    """
    word = T.slices
    for at in range(len(word)):
        for name, (g1, g2) in _CANCEL_PAIRS.items():
            if (at + 1 < len(word) and word[at].g == g1
                    and word[at + 1] == Slice(g2, word[at].p)):
                yield MoveSpec(name, at)
        if at + 1 < len(word) and not (_support(word[at]) & _support(word[at + 1])):
            yield MoveSpec("omega0c", at)
        if at + 2 < len(word):
            a, b, c = word[at], word[at + 1], word[at + 2]
            same_rot = a.g == b.g and a.g in ("C", "C-")
            if same_rot and c.g in ("X", "X-") and a.p == c.p and b.p == c.p + 1:
                yield MoveSpec("omega0d", at)
            same_rot_bc = b.g == c.g and b.g in ("C", "C-")
            if (a.g in ("X", "X-") and same_rot_bc and b.p == a.p and c.p == a.p + 1):
                yield MoveSpec("omega0d", at, forward=False)
            if a.g in ("X", "X-") and a.g == b.g == c.g:
                if a.p == c.p and b.p == a.p + 1:
                    yield MoveSpec("omega3", at)
                if a.p == c.p and b.p == a.p - 1:
                    yield MoveSpec("omega3", at, forward=False)
    if include_insertions:
        for at in range(len(word) + 1):
            for name, (g1, _) in _CANCEL_PAIRS.items():
                top = T.width if g1 in ("C", "C-") else T.width - 1
                for p in range(1, top + 1):
                    yield MoveSpec(name, at, position=p, forward=False)
    if include_markov and T.is_braid_word():
        if T.closed:
            for i in range(1, T.closed):
                yield MoveSpec("mi", braid=(i,))
                yield MoveSpec("mi", braid=(-i,))
        yield MoveSpec("mii", sign=1)
        yield MoveSpec("mii", sign=-1)
        try:
            apply_move(T, MoveSpec("mii", forward=False))
        except TangleError:
            pass
        else:
            yield MoveSpec("mii", forward=False)
