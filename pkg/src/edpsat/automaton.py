"""The counting automaton with states s_-C..s_C and an absorbing accepting sink.

The counter value of a state is the running sum of the symbols read so far;
the sink is entered once that sum would leave [-C, C].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union


@dataclass(frozen=True)
class Counter:
    j: int


@dataclass(frozen=True)
class Sink:
    pass


SINK = Sink()
AutomatonState = Union[Counter, Sink]


@dataclass(frozen=True)
class Trace:
    states: tuple[AutomatonState, ...]

    @property
    def accepted(self) -> bool:
        return self.states[-1] == SINK


def check_state(C: int, state: AutomatonState) -> None:
    if C < 1:
        raise ValueError(f"bound C must be positive, got {C}")
    if isinstance(state, Counter) and abs(state.j) > C:
        raise ValueError(f"counter state {state.j} outside [-{C}, {C}]")


def step(C: int, state: AutomatonState, symbol: int) -> AutomatonState:
    check_state(C, state)
    if state == SINK:
        return SINK
    if symbol == 1:
        return Counter(state.j + 1) if state.j < C else SINK
    if symbol == -1:
        return Counter(state.j - 1) if state.j > -C else SINK
    raise ValueError(f"symbol must be +1 or -1, got {symbol!r}")


def run(C: int, word: Iterable[int]) -> Trace:
    state: AutomatonState = Counter(0)
    states = [state]
    for symbol in word:
        state = step(C, state, symbol)
        states.append(state)
    return Trace(tuple(states))
