"""Reductions from string guessing to disjoint path allocation.

An adversary holds a hidden bit string d_1..d_n.  Each round it lets the
algorithm pick its top remaining request m_k out of a fresh gadget block,
treats the algorithm's accept/reject as a guess y_k for d_k, and answers
with follow-ups that punish a wrong guess.  Any algorithm that guesses
fewer than (1 - H(eps)) * n bits of advice can't get more than (1 - eps) n
guesses right, which turns per-block gain accounting into competitive
lower bounds:

* on paths (length objective), blocks of three edges give ratio 3/(2+eps);
* on trees (count objective), packed 4-stars give ratio 2/(1+eps).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import inf, log2

from .graphs import (
    Instance,
    InvalidParameterError,
    InvalidTreeError,
    PathGraph,
    Request,
    TreeGraph,
    gain,
    request_length,
)
from .engine import Session
from .trees import pack_s4


def binary_entropy(x):
    if not 0 <= x <= 1:
        raise InvalidParameterError("entropy argument must be in [0, 1]")
    if x in (0, 1):
        return 0.0
    return -x * log2(x) - (1 - x) * log2(1 - x)


def entropy_lower_bound(epsilon, n=1):
    """Advice bits needed to guess an eps fraction of n bits: (1-H(eps))n.

    Only defined for 1/2 <= epsilon < 1.  As epsilon approaches 1 the bound
    approaches n (every bit must be spelled out); epsilon = 1 itself is
    rejected because H is evaluated there only as a limit.
    """
    if not 0.5 <= epsilon < 1:
        raise InvalidParameterError("epsilon must lie in [1/2, 1)")
    return (1 - binary_entropy(epsilon)) * n


@dataclass(frozen=True)
class BlockRecord:
    block: int
    m: object
    guess: int
    hidden: int
    correct: bool
    alg_gain: int
    opt_gain: int


@dataclass
class GuessOutcome:
    instance: Instance
    records: tuple
    alg_gain: int
    opt_gain: int
    wrong: int
    ratio: object
    mode: str


def _parse_bits(bits):
    if isinstance(bits, str):
        if not bits or any(b not in "01" for b in bits):
            raise InvalidParameterError("hidden string must be nonempty over {0,1}")
        return [int(b) for b in bits]
    out = [int(b) for b in bits]
    if not out or any(b not in (0, 1) for b in out):
        raise InvalidParameterError("hidden string must be nonempty over {0,1}")
    return out


def _drain_and_pick(session, upcoming, queue, served):
    """Feed queued follow-ups as long as one tops the order; then return the
    algorithm's top fresh request."""
    while True:
        m = session.max_of(list(upcoming) + list(queue))
        if m in queue:
            session.feed(m)
            served.append(m)
            queue.remove(m)
        else:
            return m


def _settle(session, queue, served):
    while queue:
        m = session.max_of(queue)
        session.feed(m)
        served.append(m)
        queue.remove(m)


def _block_accounting(session, served, block_of, n, block_opt, mode, records_meta, instance):
    g = instance.graph
    sol = session.result().solution
    per_block = [0] * (n + 1)
    for r in sol.accepted:
        w = 1 if mode == "count" else request_length(g, r)
        per_block[block_of[r]] += w
    records = tuple(
        BlockRecord(k, m, y, d, y == d, per_block[k], block_opt)
        for (k, m, y, d) in records_meta
    )
    alg = gain(sol, mode)
    opt = block_opt * n
    wrong = sum(1 for rec in records if not rec.correct)
    ratio = inf if alg == 0 else Fraction(opt, alg)
    return GuessOutcome(instance, records, alg, opt, wrong, ratio, mode)


def run_guess(algorithm, bits):
    """Path gadget: block i holds requests [3i-3,3i-2], [3i-3,3i-1],
    [3i-2,3i], [3i-1,3i]; the first two complement the last two.

    A wrong guess caps the block at 2 of its 3 edges (exactly 2 for
    algorithms with greedy decisions), a right one yields all 3.
    """
    hidden = _parse_bits(bits)
    n = len(hidden)
    g = PathGraph(3 * n)
    blocks = []
    for i in range(1, n + 1):
        base = 3 * (i - 1)
        r1 = Request(g, base, base + 1)
        r2 = Request(g, base, base + 2)
        r3 = Request(g, base + 1, base + 3)
        r4 = Request(g, base + 2, base + 3)
        blocks.append((r1, r2, r3, r4))
    complement = {}
    block_of = {}
    for i, (r1, r2, r3, r4) in enumerate(blocks, start=1):
        complement.update({r1: r3, r3: r1, r2: r4, r4: r2})
        for r in (r1, r2, r3, r4):
            block_of[r] = i

    session = Session(algorithm, g)
    upcoming = {r for blk in blocks for r in blk}
    queue = set()
    served = []
    meta = []
    for k in range(1, n + 1):
        m = _drain_and_pick(session, upcoming, queue, served)
        i = block_of[m]
        upcoming -= set(blocks[i - 1])
        decision = session.feed(m)
        served.append(m)
        y = 1 if decision.accept else 0
        d = hidden[k - 1]
        if d == 1:
            queue.add(complement[m])
        else:
            queue.update(set(blocks[i - 1]) - {m, complement[m]})
        meta.append((i, m, y, d))
    assert not upcoming
    _settle(session, queue, served)
    instance = Instance(g, served)
    return _block_accounting(session, served, block_of, n, 3, "length", meta, instance)


def run_tguess(algorithm, tree, bits):
    """Tree gadget: each packed 4-star carries the six leaf pairs; a wrong
    guess caps the block at 1 call, a right one yields 2."""
    hidden = _parse_bits(bits)
    n = len(hidden)
    copies = pack_s4(tree)
    if len(copies) < n:
        raise InvalidTreeError(f"tree packs only {len(copies)} 4-stars, need {n}")
    blocks = []
    for center, leaves in copies[:n]:
        rs = tuple(
            Request(tree, a, b) for i, a in enumerate(leaves) for b in leaves[i + 1:]
        )
        blocks.append(rs)
    complement = {}
    block_of = {}
    for i, rs in enumerate(blocks, start=1):
        for r in rs:
            block_of[r] = i
            (c,) = [q for q in rs if not set(q.endpoints()) & set(r.endpoints())]
            complement[r] = c

    session = Session(algorithm, tree)
    upcoming = {r for blk in blocks for r in blk}
    queue = set()
    served = []
    meta = []
    for k in range(1, n + 1):
        m = _drain_and_pick(session, upcoming, queue, served)
        i = block_of[m]
        upcoming -= set(blocks[i - 1])
        decision = session.feed(m)
        served.append(m)
        y = 1 if decision.accept else 0
        d = hidden[k - 1]
        if d == 1:
            queue.add(complement[m])
        else:
            # the lexicographically first pair of disjoint requests that
            # both intersect m
            rest = sorted(set(blocks[i - 1]) - {m, complement[m]}, key=lambda r: r.key)
            picked = None
            for a_i in range(len(rest)):
                for b_i in range(a_i + 1, len(rest)):
                    a, b = rest[a_i], rest[b_i]
                    if not set(a.endpoints()) & set(b.endpoints()):
                        picked = (a, b)
                        break
                if picked:
                    break
            queue.update(picked)
        meta.append((i, m, y, d))
    assert not upcoming
    _settle(session, queue, served)
    instance = Instance(tree, served)
    return _block_accounting(session, served, block_of, n, 2, "count", meta, instance)


def fig9_tree(n):
    """Caterpillar with 2n degree-4 spine vertices: packs exactly n disjoint
    4-stars after pairing (sigma = n)."""
    if not isinstance(n, int) or n < 1:
        raise InvalidParameterError("need n >= 1")
    edges = [(i, i + 1) for i in range(2 * n + 1)]
    nxt = 2 * n + 2
    for i in range(1, 2 * n + 1):
        edges.append((i, nxt))
        edges.append((i, nxt + 1))
        nxt += 2
    return TreeGraph(edges)
