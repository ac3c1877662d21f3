"""Gauss-style crossing lists and their realization as rotational slice words.

A :class:`CrossingListDiagram` records a tangle combinatorially: per-component
edge counts plus one record per crossing naming the foot edge of the
overstrand and of the understrand.  Edges are numbered along each strand
following the orientation, so the data is a (signed, over/under-decorated)
Gauss code.  :func:`to_rotational` lays such a diagram out as a slice word:
crossings are placed one per horizontal band, preferring the input's own
listing order; each component splits into maximal ascending pieces (a new
piece starts whenever an edge is consumed at an earlier band than its
predecessor, which is where the layout needs a turnback); every turnback
becomes one right-closure arc.  Transport between bands dives under every
bystander, so the construction never disturbs the crossing pattern it is
building.

The crossing list captures crossings only.  Rotation slices carry no Gauss
data, so :func:`tangle_to_crossing_list` is exact for crossing-only words and
deliberately lossy otherwise.
"""

from __future__ import annotations

import itertools
from typing import Iterable, NamedTuple, Sequence

from .tangles import Slice, Tangle, _component_map, _scan_events, word_permutation

__all__ = [
    "Crossing",
    "CrossingListDiagram",
    "DiagramError",
    "from_pd",
    "same_diagram",
    "tangle_to_crossing_list",
    "to_rotational",
]


class DiagramError(ValueError):
    """Raised for malformed crossing lists or unrealizable PD codes."""


class Crossing(NamedTuple):
    """One crossing: sign and the feet (component, edge) of over/understrand."""

    sign: int
    over: tuple[int, int]
    under: tuple[int, int]

    def __str__(self) -> str:
        s = "+" if self.sign > 0 else "-"
        return f"X{s}{self.over},{self.under}"


class CrossingListDiagram:
    """Edge counts per component plus over/under foot records per crossing.

    ``components[k]`` is the number of edges of component k+1; ``closed[k]``
    marks a circular component (no tail or head).  An open component with E
    edges passes through E-1 crossings, consuming edges 1..E-1 as feet; a
    closed one consumes all E cyclically (a bare circle is E=1, no feet).
    """

    __slots__ = ("components", "closed", "crossings")

    def __init__(
        self,
        components: Sequence[int],
        crossings: Iterable[Crossing | tuple],
        closed: Sequence[bool] = (),
    ):
        components = tuple(int(e) for e in components)
        crossings = tuple(
            c if isinstance(c, Crossing) else Crossing(*c) for c in crossings
        )
        closed = tuple(bool(b) for b in closed) or (False,) * len(components)
        if len(closed) != len(components):
            raise DiagramError("closed flags do not match component count")
        if any(e < 1 for e in components):
            raise DiagramError("every component needs at least one edge")
        feet: dict[tuple[int, int], Crossing] = {}
        for c in crossings:
            if c.sign not in (1, -1):
                raise DiagramError(f"crossing sign must be +1 or -1, got {c.sign}")
            for foot in (c.over, c.under):
                comp, edge = foot
                if not 1 <= comp <= len(components):
                    raise DiagramError(f"foot {foot} names a missing component")
                if not 1 <= edge <= components[comp - 1]:
                    raise DiagramError(f"foot {foot} exceeds the component's edges")
                if foot in feet:
                    raise DiagramError(
                        f"inconsistent edge chains: edge {foot} is a foot twice"
                    )
                feet[foot] = c
        for k, count in enumerate(components, start=1):
            consumed = sorted(e for (i, e) in feet if i == k)
            if closed[k - 1]:
                want = list(range(1, count + 1)) if consumed else []
                if consumed != want or (not consumed and count != 1):
                    raise DiagramError(
                        f"inconsistent edge chains: closed component {k} must "
                        f"consume every edge exactly once"
                    )
            elif consumed != list(range(1, count)):
                raise DiagramError(
                    f"inconsistent edge chains: open component {k} must consume "
                    f"edges 1..{count - 1} exactly once"
                )
        self.components = components
        self.closed = closed
        self.crossings = crossings

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CrossingListDiagram):
            return NotImplemented
        return (
            self.components == other.components
            and self.closed == other.closed
            and set(self.crossings) == set(other.crossings)
        )

    def __repr__(self) -> str:
        body = " ".join(str(c) for c in self.crossings)
        flags = "".join("c" if b else "o" for b in self.closed)
        return f"CrossingListDiagram({self.components} {flags}: {body})"


# -- layout ----------------------------------------------------------------------


class _Piece:
    """A maximal ascending strand of the layout: entry, crossings, exit."""

    __slots__ = ("comp", "passages", "tail", "head", "arc_in", "arc_out")

    def __init__(self, comp: int, tail: bool):
        self.comp = comp
        self.passages: list[tuple[int, int, str]] = []  # (band, crossing, role)
        self.tail = tail
        self.head = False
        self.arc_in: int | None = None  # arc id whose column this piece enters at
        self.arc_out: int | None = None  # arc id this piece leaves through


def _feet_map(D: CrossingListDiagram) -> dict[tuple[int, int], tuple[int, str]]:
    cons: dict[tuple[int, int], tuple[int, str]] = {}
    for ci, c in enumerate(D.crossings):
        cons[c.over] = (ci, "over")
        cons[c.under] = (ci, "under")
    return cons


def _minimal_foot_order(D: CrossingListDiagram) -> list[int]:
    """The canonical crossing order: by minimal incident foot label."""
    return sorted(
        range(len(D.crossings)),
        key=lambda ci: min(D.crossings[ci].over, D.crossings[ci].under),
    )


def _greedy_order(D: CrossingListDiagram, salt: int = 0) -> list[int]:
    """A crossing order that walks all strands forward as far as possible.

    Picking only crossings whose feet are both the next unconsumed passage of
    their strands never forces a turnback; when none qualifies one is forced,
    and the candidate touching the fewest strands mid-run is taken.  A salt
    rotates the tie-breaking so retries explore different layouts.
    """
    last = [
        count - (0 if D.closed[k - 1] else 1)
        for k, count in enumerate(D.components, start=1)
    ]
    pointer = {k: 1 for k in range(1, len(D.components) + 1)}
    consumed: set[tuple[int, int]] = set()

    def advance(k: int) -> None:
        while pointer[k] <= last[k - 1] and (k, pointer[k]) in consumed:
            pointer[k] += 1

    def score(ci: int) -> int:
        c = D.crossings[ci]
        return sum(1 for k, e in (c.over, c.under) if e != pointer[k])

    remaining = set(range(len(D.crossings)))
    order: list[int] = []
    while remaining:
        best = min(
            remaining,
            key=lambda ci: (
                score(ci),
                min(D.crossings[ci].over, D.crossings[ci].under)
                if not salt
                else ((ci * 2654435761 + salt) & 0xFFFFFFFF),
                ci,
            ),
        )
        order.append(best)
        remaining.discard(best)
        c = D.crossings[best]
        consumed.update((c.over, c.under))
        for k in (c.over[0], c.under[0]):
            advance(k)
    return order


def _split_pieces(D: CrossingListDiagram, order: list[int]):
    """Pieces per component plus the turnback arcs joining them.

    A strand ascends through its crossings for as long as their bands
    increase; whenever the next crossing sits at or below the previous one the
    strand has to turn back, so the component is cut there and the two pieces
    are rejoined by a closure arc.  A closed component is cyclic and always
    needs at least one cut (a bare circle gets a single self-arc).
    """
    cons = _feet_map(D)
    band = {ci: b for b, ci in enumerate(order, start=1)}

    pieces: list[_Piece] = []
    arcs: list[tuple[int, int]] = []  # (pred piece, succ piece)
    for k, count in enumerate(D.components, start=1):
        closed = D.closed[k - 1]
        first = len(pieces)
        if closed and (k, 1) not in cons:
            piece = _Piece(k, tail=False)
            pieces.append(piece)
            arcs.append((first, first))  # a bare circle: one self-arc
            piece.arc_in = piece.arc_out = len(arcs) - 1
            continue
        passages = [
            (band[cons[(k, e)][0]],) + cons[(k, e)]
            for e in range(1, count + (1 if closed else 0))
        ]
        if closed:
            # cut the cycle before its lowest band so the walk starts ascending
            start = min(range(len(passages)), key=lambda i: passages[i][0])
            passages = passages[start:] + passages[:start]
        cur = _Piece(k, tail=not closed)
        pieces.append(cur)
        prev_band = 0
        for b, ci, role in passages:
            if b <= prev_band:
                nxt = _Piece(k, tail=False)
                pieces.append(nxt)
                arcs.append((len(pieces) - 2, len(pieces) - 1))
                cur = nxt
            cur.passages.append((b, ci, role))
            prev_band = b
        if closed:
            arcs.append((len(pieces) - 1, first))  # wrap back to the cut
        else:
            cur.head = True
    for aid, (pred, succ) in enumerate(arcs):
        pieces[pred].arc_out = aid
        pieces[succ].arc_in = aid
    return pieces, arcs, band


def to_rotational(D: CrossingListDiagram) -> Tangle:
    """Lay a crossing list out as a slice word with right-closure turnbacks.

    Crossings are placed one per band, walking the input list in its own
    order first: a list produced by :func:`tangle_to_crossing_list` then
    rebuilds its source word slice for slice, so round-trips are exact.
    Each strand ascends through its crossings until its band order forces a
    turnback; the turnbacks become right-closure arcs.  A piece entering
    fresh from its arc column sweeps (diving under every bystander) next to
    its partner, on the side the crossing's chirality dictates; after the
    last band every predecessor sweeps out to its arc column, rightmost
    first.  Arc columns are ordered by the successor's first band, so a
    parked column is never crossed while occupied.

    Every candidate layout is certified before it is returned: the word is
    replayed to check it hits the recorded crossings, per-strand-pair signed
    crossing sums must match the input (framing and linking), the auxiliary
    sweep crossings must admit a slide-elimination order onto the genuine
    residue, and on one-strand open diagrams the turnback count must realize
    the rotation number the chains force.  When a layout fails, the
    crossings are re-ordered (minimal incident foot label, then greedy chain
    walks) and laid out again.  If no candidate order certifies, a
    DiagramError is raised rather than returning a word for a different
    tangle: crossing lists pin the rotational class only through their
    ordering conventions, so a permuted list may be refused even though the
    same chains in another order lay out fine.  Non-planar (virtual) Gauss
    data has no certifiable layout at all.
    """
    orders = [list(range(len(D.crossings))), _minimal_foot_order(D), _greedy_order(D)]
    orders.extend(_greedy_order(D, salt) for salt in (1, 2, 3, 5, 8))
    seen: set[tuple[int, ...]] = set()
    err: DiagramError | None = None
    for order in orders:
        if tuple(order) in seen:
            continue
        seen.add(tuple(order))
        try:
            return _layout(D, order)
        except DiagramError as e:
            msg = str(e)
            if not any(k in msg for k in ("balance", "auxiliary", "rotation")):
                raise
            err = e
    raise err


def _layout(D: CrossingListDiagram, order: list[int]) -> Tangle:
    pieces, arcs, band = _split_pieces(D, order)
    n_open = sum(1 for p in pieces if p.tail)
    width = n_open + len(arcs)

    def first_band(pid: int) -> int:
        ps = pieces[pid].passages
        return ps[0][0] if ps else 0

    holder: dict[tuple[int, str], int] = {}
    for pid, p in enumerate(pieces):
        for b, ci, role in p.passages:
            holder[(ci, role)] = pid

    def cup_side(ci: int) -> tuple[int, int, int]:
        """(g piece, m piece, attack side) for a crossing's band layout.

        The greater-foot strand attacks from the right exactly when its role
        disagrees with the sign (negative over, positive under).
        """
        c = D.crossings[ci]
        g_is_over = max(c.over, c.under) == c.over
        g_pid = holder[(ci, "over" if g_is_over else "under")]
        m_pid = holder[(ci, "under" if g_is_over else "over")]
        return g_pid, m_pid, 1 if (c.sign > 0) != g_is_over else -1

    def entry_rank(aid: int) -> tuple[int, int, int]:
        succ = arcs[aid][1]
        fb = first_band(succ)
        beside = 0
        if fb:
            ci = next(ci for b, ci, role in pieces[succ].passages if b == fb)
            g_pid, m_pid, side = cup_side(ci)
            if g_pid == succ and m_pid in _arc_of and first_band(m_pid) == fb:
                # both feet enter fresh at this band: seat the attacker on its side
                beside = side
        return fb, beside, aid

    _arc_of = {succ: aid for aid, (_, succ) in enumerate(arcs)}
    arc_col = {}
    for i, aid in enumerate(sorted(range(len(arcs)), key=entry_rank)):
        arc_col[aid] = n_open + 1 + i

    col = {}
    tails = [pid for pid, p in enumerate(pieces) if p.tail]
    for pos, pid in enumerate(tails, start=1):
        col[pid] = pos
    for aid, (_, succ) in enumerate(arcs):
        col[succ] = arc_col[aid]
    occ = [None] * width
    for pid, c in col.items():
        occ[c - 1] = pid

    out: list[Slice] = []
    genuine: list[tuple[int, int, int, int]] = []  # (slice idx, ci, over pid, under pid)

    def step(pid: int, direction: int) -> None:
        """Move one column left/right, diving under the displaced bystander."""
        c = col[pid]
        other = occ[c - 1 + direction]
        if direction > 0:
            out.append(Slice("X-", c))
        else:
            out.append(Slice("X", c - 1))
        occ[c - 1], occ[c - 1 + direction] = other, pid
        col[pid] = c + direction
        col[other] = c

    def sweep_beside(mover: int, anchor: int, side: int) -> None:
        while col[mover] != col[anchor] + side:
            step(mover, 1 if col[anchor] + side > col[mover] else -1)

    # who participates at each band
    at_band: dict[int, int] = {}
    for ci in band:
        at_band[band[ci]] = ci

    for b in range(1, len(D.crossings) + 1):
        ci = at_band[b]
        c = D.crossings[ci]
        over_pid = holder[(ci, "over")]
        under_pid = holder[(ci, "under")]
        g_pid, m_pid, side = cup_side(ci)
        fresh = [
            pid
            for pid in (g_pid, m_pid)
            if pieces[pid].arc_in is not None and first_band(pid) == b
        ]
        if len(fresh) == 1:
            mover = fresh[0]
        elif len(fresh) == 2 or (col[over_pid] < col[under_pid]) != (c.sign > 0):
            mover = g_pid
        else:
            mover = max(over_pid, under_pid, key=lambda pid: col[pid])
        anchor = under_pid if mover == over_pid else over_pid
        # positive crossings carry the over strand on the left
        mover_side = -1 if (mover == over_pid) == (c.sign > 0) else 1
        sweep_beside(mover, anchor, mover_side)
        p = min(col[over_pid], col[under_pid])
        if c.sign > 0:
            if col[over_pid] != p:
                raise DiagramError("internal realization check failed (chirality)")
            out.append(Slice("X", p))
        else:
            if col[over_pid] != p + 1:
                raise DiagramError("internal realization check failed (chirality)")
            out.append(Slice("X-", p))
        genuine.append((len(out) - 1, ci, over_pid, under_pid))
        occ[p - 1], occ[p] = occ[p], occ[p - 1]
        col[over_pid], col[under_pid] = col[under_pid], col[over_pid]

    for aid in sorted(range(len(arcs)), key=lambda a: -arc_col[a]):
        pred = arcs[aid][0]
        while col[pred] != arc_col[aid]:
            step(pred, 1 if arc_col[aid] > col[pred] else -1)

    T = Tangle(width, len(arcs), out)
    _verify_realization(T, D, pieces, arcs, arc_col, tails, genuine)
    _verify_crossing_balance(T, D, pieces, arcs, arc_col, tails)
    _verify_aux_cancellation(T, D, pieces, arcs, arc_col, tails, genuine)
    _verify_rotation(T, D, arcs)
    return T


def _verify_rotation(T, D, arcs) -> None:
    """Pin the rotation number on single-strand open diagrams.

    For a one-component open diagram every slice word is in braid-closure
    form, where the strand's rotation number is forced by the chains alone:
    each crossing met under-side first contributes its sign, each met
    over-side first contributes the opposite.  A layout always spends one
    clockwise turn per turnback arc, so an arc count that overshoots this
    total has realized the right framed knot in the wrong rotational class.
    Several strands (or a closed one) leave the rotation numbers tied to the
    input's edge-numbering conventions instead, which is where the
    identity-order preference, not a check, keeps round-trips exact.
    """
    if len(D.components) != 1 or D.closed[0]:
        return
    forced = sum(c.sign if c.under[1] < c.over[1] else -c.sign for c in D.crossings)
    if -len(arcs) != forced:
        raise DiagramError("internal realization check failed (rotation number)")


def _verify_realization(T, D, pieces, arcs, arc_col, tails, genuine) -> None:
    """Replay the word and check the genuine slices hit the recorded pieces."""
    entry = {}
    for pos, pid in enumerate(tails, start=1):
        entry[pos] = pid
    for aid, (_, succ) in enumerate(arcs):
        entry[arc_col[aid]] = succ
    occ = [entry[pos] for pos in range(1, T.width + 1)]
    marked = {idx: (ci, o, u) for idx, ci, o, u in genuine}
    for k, s in enumerate(T.slices):
        if s.g not in ("X", "X-"):
            continue
        left, right = occ[s.p - 1], occ[s.p]
        if k in marked:
            ci, over_pid, under_pid = marked[k]
            want = (
                (over_pid, under_pid)
                if D.crossings[ci].sign > 0
                else (under_pid, over_pid)
            )
            if (left, right) != want:
                raise DiagramError("internal realization check failed (replay)")
        occ[s.p - 1], occ[s.p] = right, left


def _verify_crossing_balance(T, D, pieces, arcs, arc_col, tails) -> None:
    """Check signed crossing counts per component pair survive the layout.

    Self-writhes and pairwise linking sums are isotopy invariants of the
    diagram (for fixed endpoints), and every auxiliary sweep crossing must
    cancel against its return partner inside them.  An imbalance means the
    word realizes a genuinely different tangle than the input chains.
    """
    want: dict[tuple[int, int], int] = {}
    for c in D.crossings:
        key = tuple(sorted((c.over[0], c.under[0])))
        want[key] = want.get(key, 0) + c.sign
    entry = {}
    for pos, pid in enumerate(tails, start=1):
        entry[pos] = pid
    for aid, (_, succ) in enumerate(arcs):
        entry[arc_col[aid]] = succ
    occ = [entry[pos] for pos in range(1, T.width + 1)]
    got: dict[tuple[int, int], int] = {}
    for s in T.slices:
        if s.g not in ("X", "X-"):
            continue
        left, right = occ[s.p - 1], occ[s.p]
        key = tuple(sorted((pieces[left].comp, pieces[right].comp)))
        got[key] = got.get(key, 0) + (1 if s.g == "X" else -1)
        occ[s.p - 1], occ[s.p] = right, left
    want = {k: v for k, v in want.items() if v}
    got = {k: v for k, v in got.items() if v}
    if want != got:
        raise DiagramError("internal realization check failed (crossing balance)")


def _verify_aux_cancellation(T, D, pieces, arcs, arc_col, tails, genuine) -> None:
    """Certify the word is the input diagram plus removable sweep crossings.

    Replaying the word gives each strand's passage sequence; the stretches of
    auxiliary passages between consecutive genuine ones are the subarcs the
    sweeps routed.  A subarc that runs *under* at every crossing still on it
    can be slid below the rest of the diagram and rerouted to where a direct
    realization of the input would put it, erasing its crossings and freeing
    whatever they pinned.  So the word is certified when the relation "this
    subarc passes under that one" admits such an elimination order -- i.e.
    is acyclic -- and the genuine residue is the input chains verbatim (up
    to the basepoint of a closed component).  Balance supplies the writhe
    and linking match that makes the certified isotopy a framed one; it
    alone cannot see a third-move-level scramble, but a scramble leaves two
    subarcs each pinned over the other, which is exactly a cycle here.
    """
    entry = {}
    for pos, pid in enumerate(tails, start=1):
        entry[pos] = pid
    for aid, (_, succ) in enumerate(arcs):
        entry[arc_col[aid]] = succ
    occ = [entry[pos] for pos in range(1, T.width + 1)]
    ev: dict[int, tuple[int, int, int]] = {}  # slice -> (over pid, under pid, sign)
    per_piece: dict[int, list[int]] = {pid: [] for pid in range(len(pieces))}
    for k, s in enumerate(T.slices):
        if s.g not in ("X", "X-"):
            continue
        left, right = occ[s.p - 1], occ[s.p]
        sign = 1 if s.g == "X" else -1
        ev[k] = (left, right, sign) if sign > 0 else (right, left, sign)
        per_piece[left].append(k)
        per_piece[right].append(k)
        occ[s.p - 1], occ[s.p] = right, left

    seqs: dict[int, list[tuple[int, int]]] = {}  # comp -> [(slice, piece)]
    for k in range(1, len(D.components) + 1):
        start = next(pid for pid in range(len(pieces)) if pieces[pid].comp == k)
        seq: list[tuple[int, int]] = []
        pid = start
        while True:
            seq.extend((idx, pid) for idx in per_piece[pid])
            aid = pieces[pid].arc_out
            if aid is None:
                break
            pid = arcs[aid][1]
            if pid == start:
                break
        seqs[k] = seq

    keep = {idx for idx, _, _, _ in genuine}
    sub_of: dict[tuple[int, int], int] = {}  # passage -> subarc id
    n_subs = 0
    for k, seq in seqs.items():
        runs: list[list[tuple[int, int]]] = [[]]
        for e in seq:
            if e[0] in keep:
                runs.append([])
            else:
                runs[-1].append(e)
        if D.closed[k - 1] and len(runs) > 1:
            runs[0] = runs.pop() + runs[0]  # the strand is a circle: wrap
        for run in runs:
            if not run:
                continue
            for e in run:
                sub_of[e] = n_subs
            n_subs += 1

    edges: dict[int, set[int]] = {n: set() for n in range(n_subs)}
    for idx, (over, under, _) in ev.items():
        if idx in keep:
            continue
        su, so = sub_of[(idx, under)], sub_of[(idx, over)]
        if su != so:
            edges[su].add(so)
    indeg = {n: 0 for n in range(n_subs)}
    for outs in edges.values():
        for t in outs:
            indeg[t] += 1
    ready = [n for n in range(n_subs) if indeg[n] == 0]
    done = 0
    while ready:
        n = ready.pop()
        done += 1
        for t in edges[n]:
            indeg[t] -= 1
            if indeg[t] == 0:
                ready.append(t)
    if done != n_subs:
        raise DiagramError("internal realization check failed (auxiliary crossings)")

    marked = {idx: ci for idx, ci, _, _ in genuine}
    cons = _feet_map(D)
    for k, count in enumerate(D.components, start=1):
        closed = D.closed[k - 1]
        wanted = [
            cons[(k, e)]
            for e in range(1, count + (1 if closed else 0))
            if (k, e) in cons
        ]
        got = [
            ((marked[idx], "over" if pid == ev[idx][0] else "under"))
            for idx, pid in seqs[k]
            if idx in keep
        ]
        if closed and wanted:
            rotations = (wanted[i:] + wanted[:i] for i in range(len(wanted)))
            if got not in rotations:
                raise DiagramError(
                    "internal realization check failed (auxiliary crossings)"
                )
        elif got != wanted:
            raise DiagramError(
                "internal realization check failed (auxiliary crossings)"
            )


# -- extraction from slice words --------------------------------------------------


def tangle_to_crossing_list(T: Tangle) -> CrossingListDiagram:
    """Read the Gauss data off a slice word; rotation slices carry none.

    Components are numbered as the engine orders them (open ones by their
    tails left to right, closed ones by smallest bottom position) and a
    closed component's edge count starts at that same basepoint.  Exact for
    crossing-only words; C/C- slices are invisible here.
    """
    comp, n_open_comps, total = _component_map(T)
    perm = word_permutation(T)
    events = _scan_events(T)
    per_strand: dict[int, list[int]] = {}
    for k, (idx, sign, over, under) in enumerate(events):
        per_strand.setdefault(over, []).append(k)
        per_strand.setdefault(under, []).append(k)

    n = T.open
    starts: list[int] = list(range(1, n + 1))
    seen = set(range(1, n + 1))
    closed_flags: list[bool] = [False] * n_open_comps
    for pos in range(n + 1, T.width + 1):
        cid = comp[pos - 1]
        if cid > n_open_comps and pos not in seen:
            starts.append(pos)
            closed_flags.append(True)
            cur = pos
            while cur not in seen:
                seen.add(cur)
                cur = perm(cur)

    foot: dict[tuple[int, int], tuple[int, int]] = {}  # (event, strand) -> (comp, edge)
    counts: list[int] = []
    for cid, start in enumerate(starts, start=1):
        edge = 1
        pos = start
        while True:
            for k in per_strand.get(pos, ()):
                foot[(k, pos)] = (cid, edge)
                edge += 1
            nxt = perm(pos)
            if closed_flags[cid - 1]:
                if nxt == start:
                    break
            elif nxt <= n:
                break
            pos = nxt
        counts.append(edge - 1 if closed_flags[cid - 1] else edge)

    records = [
        Crossing(sign, foot[(k, over)], foot[(k, under)])
        for k, (idx, sign, over, under) in enumerate(events)
    ]
    return CrossingListDiagram(counts, records, closed_flags)


def same_diagram(D1: CrossingListDiagram, D2: CrossingListDiagram) -> bool:
    """Equality up to renumbering closed components and rotating their edges."""
    if D1.components[: _n_open(D1)] != D2.components[: _n_open(D2)]:
        return False
    if _n_open(D1) != _n_open(D2) or len(D1.components) != len(D2.components):
        return False
    closed1 = [k for k, b in enumerate(D1.closed, 1) if b]
    closed2 = [k for k, b in enumerate(D2.closed, 1) if b]
    if sorted(D1.components[k - 1] for k in closed1) != sorted(
        D2.components[k - 1] for k in closed2
    ):
        return False
    base = set(D2.crossings)

    def relabel(assign: dict[int, tuple[int, int]]) -> bool:
        def f(foot):
            comp, edge = foot
            if comp in assign:
                target, shift, count = (*assign[comp], D1.components[comp - 1])
                return (target, (edge - 1 + shift) % count + 1)
            return foot

        probe = {Crossing(c.sign, f(c.over), f(c.under)) for c in D1.crossings}
        return probe == base

    rotations = [range(D1.components[k - 1]) for k in closed1]
    for targets in itertools.permutations(closed2):
        if any(
            D1.components[a - 1] != D2.components[b - 1]
            for a, b in zip(closed1, targets)
        ):
            continue
        for shifts in itertools.product(*rotations):
            assign = {
                a: (b, s) for a, b, s in zip(closed1, targets, shifts)
            }
            if relabel(assign):
                return True
    return not closed1 and set(D1.crossings) == base


def _n_open(D: CrossingListDiagram) -> int:
    return sum(1 for b in D.closed if not b)


# -- PD-code import ----------------------------------------------------------------


def from_pd(codes: Iterable[Sequence[int]]) -> CrossingListDiagram:
    """Closed-link PD codes, one 4-tuple per crossing, to a crossing list.

    Convention: ``(a, b, c, d)`` lists the edges counterclockwise starting at
    the incoming understrand, so the understrand runs a to c.  The overstrand
    runs b to d or d to b, whichever makes edge labels consecutive along each
    component; genuinely undetermined orientations take the first consistent
    choice in a deterministic search.
    """
    codes = [tuple(int(x) for x in code) for code in codes]
    if any(len(code) != 4 for code in codes):
        raise DiagramError("each PD code needs exactly four edge labels")
    labels: dict[int, int] = {}
    for code in codes:
        for x in code:
            labels[x] = labels.get(x, 0) + 1
    if codes and (set(labels) != set(range(1, 2 * len(codes) + 1))
                  or any(v != 2 for v in labels.values())):
        raise DiagramError("PD edge labels must be 1..2n, each appearing twice")

    under_succ = {a: c for a, _, c, _ in codes}
    if len(under_succ) != len(codes):
        raise DiagramError("two PD crossings share an incoming understrand")

    # orientations where exactly one direction continues an edge numbering
    # are forced; only the remainder (component wrap-arounds) need searching
    fixed: list[int | None] = []
    for _, b, _, d in codes:
        fwd, back = d == b + 1, b == d + 1
        fixed.append(0 if fwd and not back else 1 if back and not fwd else None)
    forced_srcs: dict[int, int] = {}
    for i, pick in enumerate(fixed):
        if pick is None:
            continue
        _, b, _, d = codes[i]
        src = (b, d)[pick]
        if src in under_succ or src in forced_srcs:
            # a wrap-around edge can fake a consecutive continuation; let the
            # search decide such crossings
            fixed[i] = None
            if src in forced_srcs:
                fixed[forced_srcs.pop(src)] = None
        else:
            forced_srcs[src] = i
    free = [i for i, pick in enumerate(fixed) if pick is None]
    if len(free) > 16:
        raise DiagramError("PD code leaves too many orientations undetermined")
    for combo in itertools.product((0, 1), repeat=len(free)):
        picks = list(fixed)
        for i, pick in zip(free, combo):
            picks[i] = pick
        succ = dict(under_succ)
        ok = True
        for (_, b, _, d), pick in zip(codes, picks):
            src, dst = ((b, d), (d, b))[pick]
            if src in succ:
                ok = False
                break
            succ[src] = dst
        if not ok or len(set(succ.values())) != len(succ):
            continue
        blocks = _consecutive_cycles(succ)
        if blocks is None:
            continue
        index = {}
        for cid, block in enumerate(blocks, start=1):
            for j, e in enumerate(block, start=1):
                index[e] = (cid, j)
        records = []
        for (a, b, _, d), pick in zip(codes, picks):
            over_in = (b, d)[pick]
            sign = -1 if over_in == b else 1
            records.append(Crossing(sign, index[over_in], index[a]))
        counts = [len(block) for block in blocks]
        return CrossingListDiagram(counts, records, (True,) * len(blocks))
    raise DiagramError("PD code admits no consistent orientation")


def _consecutive_cycles(succ: dict[int, int]) -> list[list[int]] | None:
    """Cycles of a permutation, accepted only if each walks an integer interval."""
    seen = set()
    blocks = []
    for start in sorted(succ):
        if start in seen:
            continue
        cyc = [start]
        cur = succ[start]
        while cur != start:
            cyc.append(cur)
            cur = succ[cur]
        seen.update(cyc)
        if cyc != list(range(start, start + len(cyc))):
            return None
        blocks.append(cyc)
    return blocks
