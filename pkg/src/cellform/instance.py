"""Problem instances for the cell formation problem.

An instance describes a shop of ``m`` machines and a set of parts. Each part
has a production volume and a routing, the ordered sequence of machines it
visits. The goal downstream is to group machines into cells of at most ``N``
machines while keeping inter-cell traffic low, optionally honoring
cohabitation pairs (machines that must share a cell) and non-cohabitation
pairs (machines that must be separated).

Instances are stored in a line-oriented text format::

    # comment
    machines 5
    max_cell_size 2
    part 3 : 1 3 5
    part 1/2 : 2 4 2
    cohabit 1 2
    separate 2 4

``#`` starts a comment anywhere on a line. Volumes are exact non-negative
rationals (``3``, ``1/2`` and ``0.5`` are all accepted). Machine indices are
1-based in files and messages; in memory everything is 0-based.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction


class InstanceError(ValueError):
    """Raised for malformed or inconsistent instance data.

    ``line`` holds the 1-based source line when the error is tied to one.
    """

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InstanceWarning(UserWarning):
    """Non-fatal instance oddities, e.g. a cohabitation group larger than N."""


@dataclass(frozen=True)
class Part:
    """One part: production volume and machine routing (0-based indices)."""

    volume: Fraction
    routing: tuple[int, ...]


@dataclass(frozen=True)
class Instance:
    """A cell formation problem instance.

    ``cohabit`` and ``separate`` hold normalized (low, high) 0-based machine
    pairs. Invariants are checked on construction; a cohabitation group
    larger than ``max_cell_size`` only warns, since the instance is still
    well-formed (merely infeasible as stated).
    """

    machine_count: int
    max_cell_size: int
    parts: tuple[Part, ...] = ()
    cohabit: frozenset[tuple[int, int]] = field(default_factory=frozenset)
    separate: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        m = self.machine_count
        if m < 2:
            raise InstanceError(f"machine count must be at least 2, got {m}")
        if self.max_cell_size < 1:
            raise InstanceError(
                f"max cell size must be at least 1, got {self.max_cell_size}")
        for k, part in enumerate(self.parts):
            if part.volume < 0:
                raise InstanceError(
                    f"part {k + 1} has negative volume {part.volume}")
            if not part.routing:
                raise InstanceError(f"part {k + 1} has an empty routing")
            for idx in part.routing:
                if not 0 <= idx < m:
                    raise InstanceError(
                        f"part {k + 1} routing references machine "
                        f"{idx + 1}, valid range is 1..{m}")
            for a, b in zip(part.routing, part.routing[1:]):
                if a == b:
                    raise InstanceError(
                        f"part {k + 1} routing repeats machine {a + 1} "
                        f"consecutively")
        for name, pairs in (("cohabit", self.cohabit),
                            ("separate", self.separate)):
            for a, b in pairs:
                if not (0 <= a < m and 0 <= b < m):
                    raise InstanceError(
                        f"{name} pair ({a + 1}, {b + 1}) out of range 1..{m}")
                if a >= b:
                    raise InstanceError(
                        f"{name} pair ({a + 1}, {b + 1}) is not a normalized "
                        f"pair of distinct machines")
        overlap = self.cohabit & self.separate
        if overlap:
            a, b = min(overlap)
            raise InstanceError(
                f"SC and SN overlap on pair ({a + 1}, {b + 1})")
        self._warn_large_cohabit_groups()

    def _warn_large_cohabit_groups(self):
        parent = list(range(self.machine_count))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.cohabit:
            parent[find(a)] = find(b)
        sizes: dict[int, list[int]] = {}
        for v in range(self.machine_count):
            sizes.setdefault(find(v), []).append(v)
        for group in sizes.values():
            if len(group) > self.max_cell_size:
                members = ", ".join(str(v + 1) for v in sorted(group))
                warnings.warn(
                    f"cohabitation group {{{members}}} has {len(group)} "
                    f"machines, more than max cell size "
                    f"{self.max_cell_size}; no feasible solution exists",
                    InstanceWarning,
                    stacklevel=3,
                )


def _parse_volume(token: str, lineno: int) -> Fraction:
    try:
        vol = Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise InstanceError(f"bad volume {token!r}", lineno) from None
    if vol < 0:
        raise InstanceError(f"volume must be non-negative, got {token}",
                            lineno)
    return vol


def _parse_index(token: str, m: int, lineno: int) -> int:
    try:
        idx = int(token)
    except ValueError:
        raise InstanceError(f"bad machine index {token!r}", lineno) from None
    if not 1 <= idx <= m:
        raise InstanceError(
            f"machine index {idx} out of range 1..{m}", lineno)
    return idx - 1


def parse_instance(text: str) -> Instance:
    """Parse the text of an instance file.

    The ``machines`` and ``max_cell_size`` lines must precede any ``part``,
    ``cohabit`` or ``separate`` line. Syntax problems raise
    :class:`InstanceError` with the offending line number; semantic problems
    name the violated invariant.
    """
    machine_count: int | None = None
    max_cell_size: int | None = None
    parts: list[Part] = []
    cohabit: set[tuple[int, int]] = set()
    separate: set[tuple[int, int]] = set()

    def require_header(lineno: int) -> int:
        if machine_count is None or max_cell_size is None:
            raise InstanceError(
                "machines and max_cell_size must be declared first", lineno)
        return machine_count

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        kw = fields[0]
        if kw == "machines":
            if machine_count is not None:
                raise InstanceError("duplicate machines line", lineno)
            if len(fields) != 2:
                raise InstanceError("expected: machines <count>", lineno)
            try:
                machine_count = int(fields[1])
            except ValueError:
                raise InstanceError(
                    f"bad machine count {fields[1]!r}", lineno) from None
            if machine_count < 2:
                raise InstanceError(
                    f"machine count must be at least 2, got {machine_count}",
                    lineno)
        elif kw == "max_cell_size":
            if max_cell_size is not None:
                raise InstanceError("duplicate max_cell_size line", lineno)
            if len(fields) != 2:
                raise InstanceError("expected: max_cell_size <N>", lineno)
            try:
                max_cell_size = int(fields[1])
            except ValueError:
                raise InstanceError(
                    f"bad max cell size {fields[1]!r}", lineno) from None
            if max_cell_size < 1:
                raise InstanceError(
                    f"max cell size must be at least 1, got {max_cell_size}",
                    lineno)
        elif kw == "part":
            m = require_header(lineno)
            if len(fields) < 4 or fields[2] != ":":
                raise InstanceError(
                    "expected: part <volume> : <machine> [<machine> ...]",
                    lineno)
            volume = _parse_volume(fields[1], lineno)
            routing = tuple(_parse_index(t, m, lineno) for t in fields[3:])
            for a, b in zip(routing, routing[1:]):
                if a == b:
                    raise InstanceError(
                        f"routing repeats machine {a + 1} consecutively",
                        lineno)
            parts.append(Part(volume, routing))
        elif kw in ("cohabit", "separate"):
            m = require_header(lineno)
            if len(fields) != 3:
                raise InstanceError(f"expected: {kw} <machine> <machine>",
                                    lineno)
            a = _parse_index(fields[1], m, lineno)
            b = _parse_index(fields[2], m, lineno)
            if a == b:
                raise InstanceError(
                    f"{kw} pair ({a + 1}, {b + 1}) must name two distinct "
                    f"machines", lineno)
            pair = (min(a, b), max(a, b))
            other = separate if kw == "cohabit" else cohabit
            if pair in other:
                raise InstanceError(
                    f"SC and SN overlap on pair ({pair[0] + 1}, "
                    f"{pair[1] + 1})", lineno)
            (cohabit if kw == "cohabit" else separate).add(pair)
        else:
            raise InstanceError(f"unknown directive {kw!r}", lineno)

    if machine_count is None:
        raise InstanceError("missing machines line")
    if max_cell_size is None:
        raise InstanceError("missing max_cell_size line")
    return Instance(machine_count, max_cell_size, tuple(parts),
                    frozenset(cohabit), frozenset(separate))


def serialize_instance(inst: Instance) -> str:
    """Render an instance in canonical file form (round-trips exactly).

    Sections appear in fixed order: machines, max_cell_size, parts (in
    instance order), cohabit pairs (sorted), separate pairs (sorted).
    """
    lines = [f"machines {inst.machine_count}",
             f"max_cell_size {inst.max_cell_size}"]
    for part in inst.parts:
        routing = " ".join(str(i + 1) for i in part.routing)
        lines.append(f"part {part.volume} : {routing}")
    for a, b in sorted(inst.cohabit):
        lines.append(f"cohabit {a + 1} {b + 1}")
    for a, b in sorted(inst.separate):
        lines.append(f"separate {a + 1} {b + 1}")
    return "\n".join(lines) + "\n"


def generate_instance(machine_count: int, part_count: int,
                      max_cell_size: int, max_routing_len: int = 10,
                      seed: int = 0) -> Instance:
    """Generate a random instance, deterministically for a given seed.

    Draw sequence (one ``random.Random(seed)`` stream, in this order per
    part): routing length uniform in [2, max_routing_len], then each routing
    step (first machine uniform, every later one uniform over the other m-1
    machines so no machine repeats consecutively), then an integer volume
    uniform in [1, 10]. No cohabitation or separation pairs are generated.
    """
    if machine_count < 2:
        raise InstanceError(
            f"machine count must be at least 2, got {machine_count}")
    if part_count < 1:
        raise InstanceError(f"part count must be at least 1, got {part_count}")
    if max_routing_len < 2:
        raise InstanceError(
            f"max routing length must be at least 2, got {max_routing_len}")
    rng = random.Random(seed)
    parts = []
    for _ in range(part_count):
        length = rng.randint(2, max_routing_len)
        routing = [rng.randrange(machine_count)]
        while len(routing) < length:
            step = rng.randrange(machine_count - 1)
            if step >= routing[-1]:
                step += 1
            routing.append(step)
        volume = Fraction(rng.randint(1, 10))
        parts.append(Part(volume, tuple(routing)))
    return Instance(machine_count, max_cell_size, tuple(parts))
