"""Entangled-coin mechanics, the rigging impossibility, and the parity guessing game.

Coin symbols are "H"/"T"; a player's dealt bit 1 means flip starting from H,
0 means starting from T. Start pairs are ordered (alice, bob). A lane whose
start pair is listed in the mechanics' unequal set ends heads-tails or
tails-heads (one H between the pair); every other lane ends heads-heads or
tails-tails (zero or two H). Chip accounting: the pair buys `chips_start`
chips, spends one per purchased bit, and the House doubles whatever remains
on a correct guess, so a win nets chips_start - 2*bits_bought and a loss
forfeits the full stake.

Randomness streams (documented, counter-based): dealer draws come from
philox(dealer_seed, 0, game_index), lane outcomes from
philox(mech_seed, 1, game_index), strategy coin flips from
philox(dealer_seed, 2, game_index). Games are therefore pure functions of
(seeds, game index).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError
from .rng import philox

CHIPS_START = 6
DEFAULT_LANES = 5

_STREAM_DEAL = 0
_STREAM_MECH = 1
_STREAM_STRATEGY = 2


@dataclass(frozen=True)
class QuoinMechanics:
    """Start-pair rule: listed start pairs end unequal, all others end equal."""

    unequal_starts: frozenset

    @classmethod
    def standard(cls) -> QuoinMechanics:
        """Heads-heads starts end unequal; every other start ends equal."""
        return cls(frozenset({("H", "H")}))

    @classmethod
    def quantum_coin(cls) -> QuoinMechanics:
        """Comparison rule with the heads-heads row changed to equal outcomes."""
        return cls(frozenset())

    def ends_unequal(self, start: tuple[str, str]) -> bool:
        pair = tuple(start)
        if len(pair) != 2 or pair[0] not in ("H", "T") or pair[1] not in ("H", "T"):
            raise DomainError(f"start pair must be H/T symbols, got {start!r}")
        return pair in self.unequal_starts


def flip_pair(mech: QuoinMechanics, start, seed: int, trial: int) -> tuple[str, str]:
    """Outcome pair for one flip; a pure function of (seed, trial)."""
    bit = int(philox(seed, trial).integers(0, 2))
    return _outcome_pair(mech, tuple(start), bit)


def _outcome_pair(mech: QuoinMechanics, start, bit: int) -> tuple[str, str]:
    if mech.ends_unequal(start):
        return ("H", "T") if bit else ("T", "H")
    return ("H", "H") if bit else ("T", "T")


# ---------------------------------------------------------------------------
# rigging enumeration

RIGGINGS = ("H", "T", "S", "O")


def apply_rigging(rigging: str, start: str) -> str:
    """Deterministic single-coin rule: ends-heads, ends-tails, same, or other."""
    if rigging == "H":
        return "H"
    if rigging == "T":
        return "T"
    if rigging == "S":
        return start
    if rigging == "O":
        return "T" if start == "H" else "H"
    raise DomainError(f"unknown rigging {rigging!r} (want one of {RIGGINGS})")


@dataclass(frozen=True)
class RiggingFailure:
    """First mechanics row a rigging pair violates."""

    alice_rigging: str
    bob_rigging: str
    start: tuple[str, str]
    outcome: tuple[str, str]
    required: str  # "equal" | "unequal"


@dataclass(frozen=True)
class RiggingScan:
    valid: tuple[tuple[str, str], ...]
    failures: tuple[RiggingFailure, ...]


def enumerate_riggings(mech: QuoinMechanics | None = None) -> RiggingScan:
    """Check all 16 deterministic rigging pairs against every start configuration.

    For the standard mechanics none survives: a rigging pair producing
    unequal outcomes from a heads-heads start necessarily produces unequal
    outcomes from some start that must end equal.
    """
    mech = mech or QuoinMechanics.standard()
    starts = [("H", "H"), ("H", "T"), ("T", "H"), ("T", "T")]
    valid, failures = [], []
    for ra, rb in itertools.product(RIGGINGS, repeat=2):
        for start in starts:
            outcome = (apply_rigging(ra, start[0]), apply_rigging(rb, start[1]))
            want_unequal = mech.ends_unequal(start)
            if (outcome[0] != outcome[1]) != want_unequal:
                failures.append(
                    RiggingFailure(ra, rb, start, outcome, "unequal" if want_unequal else "equal")
                )
                break
        else:
            valid.append((ra, rb))
    return RiggingScan(tuple(valid), tuple(failures))


# ---------------------------------------------------------------------------
# the guessing game

@dataclass(frozen=True)
class QuoinStrategy:
    """Flip per dealt bits, buy Bob's one parity bit, guess the combined parity."""

    name: str = field(default="quoin", init=False)


@dataclass(frozen=True)
class ClassicalBitsStrategy:
    """Buy Bob's values in up to k of Alice's 1-lanes; guess the revealed parity."""

    k: int
    name: str = field(default="classical_bits", init=False)

    def __post_init__(self):
        if self.k < 0:
            raise DomainError("cannot buy a negative number of bits")


@dataclass(frozen=True)
class RandomStrategy:
    """Buy nothing and guess uniformly."""

    name: str = field(default="random", init=False)


Strategy = QuoinStrategy | ClassicalBitsStrategy | RandomStrategy


@dataclass(frozen=True)
class GameRecord:
    """One guessing-game round with its chip-ledger outcome."""

    bob_bits: tuple[int, ...]
    alice_bits: tuple[int, ...]
    target_parity: str
    bits_bought: int
    guess: str
    chips_start: int = CHIPS_START
    transcript: tuple[str, ...] = ()

    @property
    def correct(self) -> bool:
        return self.guess == self.target_parity

    @property
    def chips_net(self) -> int:
        # House doubles the remaining chips on a win; spent chips are gone
        if self.correct:
            return self.chips_start - 2 * self.bits_bought
        return -self.chips_start

    def to_json(self) -> str:
        return json.dumps(
            {
                "bob_bits": list(self.bob_bits),
                "alice_bits": list(self.alice_bits),
                "target_parity": self.target_parity,
                "bits_bought": self.bits_bought,
                "guess": self.guess,
                "chips_start": self.chips_start,
                "chips_net": self.chips_net,
                "transcript": list(self.transcript),
            }
        )


def parity_name(count: int) -> str:
    return "even" if count % 2 == 0 else "odd"


def target_parity(alice_bits, bob_bits) -> str:
    """Parity of the number of lanes holding a 1 on both sides."""
    return parity_name(sum(a & b for a, b in zip(alice_bits, bob_bits)))


def standard_dealer(rng: np.random.Generator, lanes: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Fair independent bits, redrawing Alice's hand until it is not all zero.

    The guesser is never dealt the trivial all-zero hand; with it excluded
    the target parity is exactly 50/50 over Bob's bits.
    """
    bob = tuple(int(v) for v in rng.integers(0, 2, lanes))
    alice = tuple(int(v) for v in rng.integers(0, 2, lanes))
    while not any(alice):
        alice = tuple(int(v) for v in rng.integers(0, 2, lanes))
    return bob, alice


def uniform_dealer(rng: np.random.Generator, lanes: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Unconditioned fair independent bits for both hands."""
    bob = tuple(int(v) for v in rng.integers(0, 2, lanes))
    alice = tuple(int(v) for v in rng.integers(0, 2, lanes))
    return bob, alice


def lane_outcomes(mech: QuoinMechanics, alice_bits, bob_bits, rng: np.random.Generator):
    """Flip one entangled pair per lane (bit 1 starts H, 0 starts T)."""
    alice_out, bob_out = [], []
    bits = rng.integers(0, 2, len(alice_bits))
    for a, b, bit in zip(alice_bits, bob_bits, bits):
        start = ("H" if a else "T", "H" if b else "T")
        oa, ob = _outcome_pair(mech, start, int(bit))
        alice_out.append(oa)
        bob_out.append(ob)
    return tuple(alice_out), tuple(bob_out)


def play_game(
    strategy: Strategy,
    dealer_seed: int,
    mech_seed: int,
    *,
    game_index: int = 0,
    mech: QuoinMechanics | None = None,
    lanes: int = DEFAULT_LANES,
    dealer: Callable = standard_dealer,
    deal: tuple[tuple[int, ...], tuple[int, ...]] | None = None,
) -> GameRecord:
    """Run one seeded round; pass `deal` = (bob_bits, alice_bits) to fix the hands."""
    mech = mech or QuoinMechanics.standard()
    if deal is None:
        bob_bits, alice_bits = dealer(philox(dealer_seed, _STREAM_DEAL, game_index), lanes)
    else:
        bob_bits, alice_bits = tuple(deal[0]), tuple(deal[1])
    if len(bob_bits) != len(alice_bits):
        raise DomainError("hands must cover the same lanes")
    target = target_parity(alice_bits, bob_bits)

    if isinstance(strategy, QuoinStrategy):
        mech_rng = philox(mech_seed, _STREAM_MECH, game_index)
        alice_out, bob_out = lane_outcomes(mech, alice_bits, bob_bits, mech_rng)
        bob_parity_bit = sum(1 for o in bob_out if o == "H") % 2
        alice_h = sum(1 for o in alice_out if o == "H")
        guess = parity_name(alice_h + bob_parity_bit)
        transcript = (
            f"alice outcomes: {''.join(alice_out)}",
            f"bob outcomes: {''.join(bob_out)}",
            f"bob sends parity bit {bob_parity_bit} (1 chip)",
            f"alice counts {alice_h} H, guesses {guess}",
        )
        return GameRecord(bob_bits, alice_bits, target, 1, guess, CHIPS_START, transcript)

    if isinstance(strategy, ClassicalBitsStrategy):
        if strategy.k > len(alice_bits):
            raise DomainError(f"cannot buy {strategy.k} bits across {len(alice_bits)} lanes")
        one_lanes = [i for i, v in enumerate(alice_bits) if v]
        asked = one_lanes[: strategy.k]
        revealed = [bob_bits[i] for i in asked]
        known = sum(revealed)
        # unrevealed 1-lanes are double-1 with even parity at probability 1/2;
        # the tie goes to even, so the guess is the revealed parity either way
        guess = parity_name(known)
        transcript = (
            f"alice asks lanes {[i + 1 for i in asked]}",
            f"bob reveals {revealed} ({len(asked)} chips)",
            f"alice knows {known} shared lanes among revealed, guesses {guess}",
        )
        return GameRecord(bob_bits, alice_bits, target, len(asked), guess, CHIPS_START, transcript)

    if isinstance(strategy, RandomStrategy):
        rng = philox(dealer_seed, _STREAM_STRATEGY, game_index)
        guess = parity_name(int(rng.integers(0, 2)))
        return GameRecord(
            bob_bits, alice_bits, target, 0, guess, CHIPS_START, (f"alice guesses {guess} blind",)
        )

    raise DomainError(f"unknown strategy {strategy!r}")


@dataclass(frozen=True)
class MonteCarloSummary:
    games: int
    win_rate: float
    mean_chips_net: float
    ci_halfwidth: float


def monte_carlo(
    strategy: Strategy,
    games: int,
    seed: int,
    *,
    mech: QuoinMechanics | None = None,
    lanes: int = DEFAULT_LANES,
    dealer: Callable = standard_dealer,
) -> MonteCarloSummary:
    """Aggregate seeded rounds; the CI half-width is the 3-sigma binomial band."""
    if games < 1:
        raise DomainError("need at least one game")
    wins = 0
    net = 0
    for g in range(games):
        rec = play_game(
            strategy, seed, seed, game_index=g, mech=mech, lanes=lanes, dealer=dealer
        )
        wins += rec.correct
        net += rec.chips_net
    w = wins / games
    return MonteCarloSummary(games, w, net / games, 3.0 * float(np.sqrt(w * (1.0 - w) / games)))


def write_transcript(records, fp) -> None:
    """Emit one GameRecord JSON object per line."""
    for rec in records:
        fp.write(rec.to_json() + "\n")


@dataclass(frozen=True)
class ParityTheoremReport:
    checked: int
    failures: tuple[str, ...]

    @property
    def holds(self) -> bool:
        return not self.failures


def verify_parity_theorem(
    seeds=range(32), lanes: int = DEFAULT_LANES, mech: QuoinMechanics | None = None
) -> ParityTheoremReport:
    """Exhaust every deal: combined H count parity must equal double-1-lane parity.

    For each seed one generator drives the per-lane outcome draws across all
    2^(2*lanes) deals, so outcomes are reproducible functions of
    (seed, deal index, lane).
    """
    mech = mech or QuoinMechanics.standard()
    deals = list(itertools.product((0, 1), repeat=2 * lanes))
    failures = []
    checked = 0
    for seed in seeds:
        rng = philox(seed)
        bits = rng.integers(0, 2, (len(deals), lanes))
        for d, deal in enumerate(deals):
            alice_bits, bob_bits = deal[:lanes], deal[lanes:]
            combined_h = 0
            doubles = 0
            for lane in range(lanes):
                start = ("H" if alice_bits[lane] else "T", "H" if bob_bits[lane] else "T")
                oa, ob = _outcome_pair(mech, start, int(bits[d, lane]))
                combined_h += (oa == "H") + (ob == "H")
                doubles += alice_bits[lane] & bob_bits[lane]
            checked += 1
            if combined_h % 2 != doubles % 2:
                failures.append(
                    f"seed {seed} deal alice={alice_bits} bob={bob_bits}: "
                    f"{combined_h} H vs {doubles} double-1 lanes"
                )
    return ParityTheoremReport(checked, tuple(failures))
