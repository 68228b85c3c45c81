"""Exhaustive search in the group generated by the two CNOT permutations.

The Cayley graph is explored breadth-first: appending a generator to the
end of a circuit-time word is one edge, so the depth of an element's first
visit is its shortest word length.  Expanding parents in insertion order
and trying CNOT1 before CNOT2 makes the first word recorded for each
element the lexicographically least among its shortest words; every
externally visible result (census, witness word) is therefore a pure
function of the inputs, independent of worker count.

Unreachability is only ever reported from a fully enumerated closure.
A search truncated by a depth or element cap reports DEPTH_LIMIT instead.
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np

from .gates import GENERATORS, GateKind, gate_perm, _check_dimension
from .perm import CostGuardError, Perm

logger = logging.getLogger(__name__)

DEFAULT_MAX_ELEMENTS = 10_000_000
DEFAULT_MAX_DIMENSION = 31
WORD_EVAL_MAX_DIMENSION = 64

CENSUS_CACHE_FORMAT = "cnot-group-census/1"
GENERATOR_SET_VERSION = "cnot1-cnot2-v1"


@dataclass(frozen=True)
class GateWord:
    """A circuit as a sequence of generator gates, first gate applied first."""

    d: int
    letters: tuple[GateKind, ...]

    def __post_init__(self):
        _check_dimension(self.d)
        for letter in self.letters:
            if letter not in GENERATORS:
                raise ValueError(f"{letter} is not a generator gate")

    def __len__(self) -> int:
        return len(self.letters)


class SearchOutcome(Enum):
    FOUND = "FOUND"
    UNREACHABLE_EXHAUSTED = "UNREACHABLE_EXHAUSTED"
    DEPTH_LIMIT = "DEPTH_LIMIT"


@dataclass(frozen=True)
class SynthesisResult:
    outcome: SearchOutcome
    word: GateWord | None = None
    group_order: int | None = None
    diameter: int | None = None
    explored_depth: int | None = None
    frontier_size: int | None = None


@dataclass(frozen=True)
class GroupCensus:
    d: int
    order: int
    diameter: int
    counts_by_depth: tuple[int, ...]


@dataclass(frozen=True)
class GroupTooLarge:
    """The closure exceeded the element cap; no census is claimed."""

    d: int
    max_elements: int
    elements_found: int


def apply_word(word: GateWord) -> Perm:
    """Evaluate a word in circuit time: the first letter acts first.

    With composition (p * q)(i) = p(q(i)) that is  g_k * ... * g_1.
    """
    if word.d > WORD_EVAL_MAX_DIMENSION:
        raise CostGuardError(
            f"word evaluation guard: d = {word.d} exceeds {WORD_EVAL_MAX_DIMENSION}"
        )
    acc = Perm.identity(word.d * word.d)
    for letter in word.letters:
        acc = gate_perm(letter, word.d) * acc
    return acc


def _dtype_for(n: int):
    return np.int16 if n < 2**15 else np.int32


def _generator_images(d: int) -> list[np.ndarray]:
    dt = _dtype_for(d * d)
    return [np.array(gate_perm(k, d).image, dtype=dt) for k in GENERATORS]


def _expand_rows(gen_imgs: list[np.ndarray], rows: np.ndarray, workers: int) -> list[np.ndarray]:
    """children[li][r] = image table of (generator li) composed after rows[r].

    Chunked across threads when asked; results are reassembled in chunk
    order, so the output is identical for any worker count.
    """
    if workers <= 1 or len(rows) < 64:
        return [g[rows] for g in gen_imgs]
    chunks = np.array_split(rows, workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda ch: [g[ch] for g in gen_imgs], chunks))
    return [np.concatenate([p[li] for p in parts]) for li in range(len(gen_imgs))]


@dataclass
class _Closure:
    status: str  # "complete" | "found" | "depth_cap" | "element_cap"
    rows: list[np.ndarray]
    parents: list[int]
    letters: list[int]
    counts_by_depth: list[int]
    found_index: int = -1
    stopped_depth: int = 0
    stopped_frontier: int = 0


def _closure_bfs(
    d: int,
    *,
    max_elements: int,
    max_depth: int | None = None,
    target: Perm | None = None,
    workers: int = 1,
) -> _Closure:
    """Deterministic breadth-first closure over {CNOT1, CNOT2}.

    Visited keys are the full image tables (encoded to bytes with a fixed
    dtype), never a lossy hash: certificates of unreachability rely on
    exact membership.
    """
    gen_imgs = _generator_images(d)
    ident = np.arange(d * d, dtype=gen_imgs[0].dtype)
    rows = [ident]
    parents = [-1]
    letters = [-1]
    index: dict[bytes, int] = {ident.tobytes(): 0}
    counts = [1]

    target_key = None
    if target is not None:
        target_key = np.array(target.image, dtype=ident.dtype).tobytes()
        if target_key == ident.tobytes():
            return _Closure("found", rows, parents, letters, counts, found_index=0)

    frontier = [0]
    depth = 0
    while frontier:
        if max_depth is not None and depth >= max_depth:
            return _Closure(
                "depth_cap", rows, parents, letters, counts,
                stopped_depth=depth, stopped_frontier=len(frontier),
            )
        mat = np.stack([rows[i] for i in frontier])
        children = _expand_rows(gen_imgs, mat, workers)
        new_frontier: list[int] = []
        for pos, parent_idx in enumerate(frontier):
            for li in range(len(gen_imgs)):
                row = children[li][pos]
                key = row.tobytes()
                if key in index:
                    continue
                if len(rows) >= max_elements:
                    return _Closure(
                        "element_cap", rows, parents, letters, counts,
                        stopped_depth=depth, stopped_frontier=len(frontier),
                    )
                idx = len(rows)
                index[key] = idx
                rows.append(row.copy())
                parents.append(parent_idx)
                letters.append(li)
                new_frontier.append(idx)
                if key == target_key:
                    return _Closure(
                        "found", rows, parents, letters, counts, found_index=idx
                    )
        if new_frontier:
            counts.append(len(new_frontier))
        frontier = new_frontier
        depth += 1
    return _Closure("complete", rows, parents, letters, counts)


def _word_from_records(parents: list[int], letters: list[int], idx: int, d: int) -> GateWord:
    out: list[GateKind] = []
    while idx > 0:
        out.append(GENERATORS[letters[idx]])
        idx = parents[idx]
    return GateWord(d=d, letters=tuple(reversed(out)))


def _check_search_guards(d: int, max_dimension: int) -> None:
    _check_dimension(d)
    if d > max_dimension:
        raise CostGuardError(
            f"search guard: d = {d} exceeds {max_dimension}; "
            "raise max_dimension explicitly to override"
        )


def enumerate_group(
    d: int,
    *,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
    workers: int = 1,
    cache_dir: str | Path | None = None,
    max_dimension: int = DEFAULT_MAX_DIMENSION,
) -> GroupCensus | GroupTooLarge:
    """Enumerate the whole generated group; order, diameter, layer counts.

    With ``cache_dir`` set, a previously stored census for the same d and
    generator set is reused; stale or corrupt cache files are ignored with
    a warning and recomputed.
    """
    _check_search_guards(d, max_dimension)
    if cache_dir is not None:
        cached = _load_cached_census(Path(cache_dir), d, max_elements)
        if cached is not None:
            return cached
    closure = _closure_bfs(d, max_elements=max_elements, workers=workers)
    if closure.status == "element_cap":
        return GroupTooLarge(d=d, max_elements=max_elements, elements_found=len(closure.rows))
    census = GroupCensus(
        d=d,
        order=len(closure.rows),
        diameter=len(closure.counts_by_depth) - 1,
        counts_by_depth=tuple(closure.counts_by_depth),
    )
    if cache_dir is not None:
        _store_census(Path(cache_dir), census)
    return census


def group_elements(
    d: int,
    *,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
    max_dimension: int = DEFAULT_MAX_DIMENSION,
) -> list[Perm]:
    """All group elements in breadth-first order (identity first)."""
    _check_search_guards(d, max_dimension)
    closure = _closure_bfs(d, max_elements=max_elements)
    if closure.status != "complete":
        raise CostGuardError(
            f"group at d = {d} exceeds the {max_elements}-element cap"
        )
    return [Perm(row.tolist()) for row in closure.rows]


def find_word(
    d: int,
    target: Perm,
    *,
    max_depth: int | None = None,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
    workers: int = 1,
    max_dimension: int = DEFAULT_MAX_DIMENSION,
) -> SynthesisResult:
    """Shortest generator word equal to ``target``, or a certificate.

    FOUND words are the lexicographically least among shortest (CNOT1
    before CNOT2).  UNREACHABLE_EXHAUSTED is only reported after the whole
    closure was enumerated without meeting the target; a truncated search
    reports DEPTH_LIMIT and claims nothing.
    """
    _check_search_guards(d, max_dimension)
    if len(target) != d * d:
        raise ValueError(
            f"target on {len(target)} points does not match d*d = {d * d}"
        )
    if max_depth is not None and max_depth < 0:
        raise ValueError("max_depth must be >= 0")
    closure = _closure_bfs(
        d, max_elements=max_elements, max_depth=max_depth, target=target, workers=workers
    )
    if closure.status == "found":
        word = _word_from_records(closure.parents, closure.letters, closure.found_index, d)
        return SynthesisResult(outcome=SearchOutcome.FOUND, word=word)
    if closure.status == "complete":
        return SynthesisResult(
            outcome=SearchOutcome.UNREACHABLE_EXHAUSTED,
            group_order=len(closure.rows),
            diameter=len(closure.counts_by_depth) - 1,
        )
    return SynthesisResult(
        outcome=SearchOutcome.DEPTH_LIMIT,
        explored_depth=closure.stopped_depth,
        frontier_size=closure.stopped_frontier,
    )


def bidirectional_find(
    d: int,
    target: Perm,
    *,
    max_total_depth: int | None = None,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
    workers: int = 1,
    max_dimension: int = DEFAULT_MAX_DIMENSION,
) -> SynthesisResult:
    """Meet-in-the-middle variant of :func:`find_word`; same outcome contract.

    Layers grow from the identity (appending letters) and from the target
    (peeling letters off the end).  Once the two balls certify the shortest
    length L, the witness is canonicalized post hoc so the returned word is
    the same lexicographically least one ``find_word`` reports: the prefix
    is the least recorded forward word whose endpoint lies at backward
    distance L - k, and the suffix is rebuilt letter by letter against the
    exact backward distance map.

    Uncapped runs agree with ``find_word`` exactly.  Under a depth cap the
    budget is split across both balls rather than spent on one, so a capped
    run may complete the closure (and certify unreachability) where the
    unidirectional search reports DEPTH_LIMIT, or vice versa; conclusive
    outcomes are sound either way and identical whenever both are conclusive.
    """
    _check_search_guards(d, max_dimension)
    if len(target) != d * d:
        raise ValueError(
            f"target on {len(target)} points does not match d*d = {d * d}"
        )
    if max_total_depth is not None and max_total_depth < 0:
        raise ValueError("max_total_depth must be >= 0")

    gen_imgs = _generator_images(d)
    inv_imgs = []
    for g in gen_imgs:
        inv = np.empty_like(g)
        inv[g] = np.arange(len(g), dtype=g.dtype)
        inv_imgs.append(inv)

    ident = np.arange(d * d, dtype=gen_imgs[0].dtype)
    t_row = np.array(target.image, dtype=ident.dtype)
    if np.array_equal(ident, t_row):
        return SynthesisResult(outcome=SearchOutcome.FOUND, word=GateWord(d=d, letters=()))

    f_rows = [ident]
    f_parents = [-1]
    f_letters = [-1]
    f_index: dict[bytes, int] = {ident.tobytes(): 0}
    f_depth: dict[bytes, int] = {ident.tobytes(): 0}
    f_layers: list[list[int]] = [[0]]
    f_frontier = [0]
    f_complete = False

    b_dist: dict[bytes, int] = {t_row.tobytes(): 0}
    b_frontier = [t_row]
    b_sealed = 0
    b_complete = False

    best = None  # shortest total length certified so far

    def expand_forward() -> bool:
        """Grow the forward ball by one layer; True if the element cap hit."""
        nonlocal f_frontier, f_complete, best
        depth = len(f_layers) - 1
        mat = np.stack([f_rows[i] for i in f_frontier])
        children = _expand_rows(gen_imgs, mat, workers)
        new_frontier: list[int] = []
        for pos, parent_idx in enumerate(f_frontier):
            for li in range(len(gen_imgs)):
                row = children[li][pos]
                key = row.tobytes()
                if key in f_index:
                    continue
                if len(f_rows) + len(b_dist) >= max_elements:
                    return True
                idx = len(f_rows)
                f_index[key] = idx
                f_depth[key] = depth + 1
                f_rows.append(row.copy())
                f_parents.append(parent_idx)
                f_letters.append(li)
                new_frontier.append(idx)
                back = b_dist.get(key)
                if back is not None:
                    total = depth + 1 + back
                    if best is None or total < best:
                        best = total
        if new_frontier:
            f_layers.append(new_frontier)
            f_frontier = new_frontier
        else:
            f_frontier = []
            f_complete = True
        return False

    def expand_backward() -> bool:
        nonlocal b_frontier, b_sealed, b_complete, best
        depth = b_sealed
        mat = np.stack(b_frontier)
        children = _expand_rows(inv_imgs, mat, workers)
        new_frontier: list[np.ndarray] = []
        for pos in range(len(b_frontier)):
            for li in range(len(inv_imgs)):
                row = children[li][pos]
                key = row.tobytes()
                if key in b_dist:
                    continue
                if len(f_rows) + len(b_dist) >= max_elements:
                    return True
                b_dist[key] = depth + 1
                new_frontier.append(row.copy())
                fwd = f_depth.get(key)
                if fwd is not None:
                    total = fwd + depth + 1
                    if best is None or total < best:
                        best = total
        if new_frontier:
            b_sealed = depth + 1
            b_frontier = new_frontier
        else:
            b_frontier = []
            b_complete = True
        return False

    def sealed_forward() -> int:
        return len(f_layers) - 1

    def sealed_backward() -> int:
        return b_sealed

    capped = False
    while True:
        kf, jb = sealed_forward(), sealed_backward()
        if best is not None and best <= kf + jb:
            break
        if f_complete:
            break  # reachable iff best is set; no forward growth left
        if b_complete and best is None:
            break
        if max_total_depth is not None and kf + jb >= max_total_depth:
            break
        go_forward = b_complete or len(f_frontier) <= len(b_frontier)
        capped = expand_forward() if go_forward else expand_backward()
        if capped:
            break

    if capped:
        return SynthesisResult(
            outcome=SearchOutcome.DEPTH_LIMIT,
            explored_depth=sealed_forward() + sealed_backward(),
            frontier_size=len(f_frontier) + len(b_frontier),
        )

    if best is None:
        if max_total_depth is not None and not (f_complete or b_complete):
            return SynthesisResult(
                outcome=SearchOutcome.DEPTH_LIMIT,
                explored_depth=sealed_forward() + sealed_backward(),
                frontier_size=len(f_frontier) + len(b_frontier),
            )
        # one side closed with no meet: the target is outside the group.
        # Finish the forward closure so the census is the group's own.
        while not f_complete:
            if expand_forward():
                return SynthesisResult(
                    outcome=SearchOutcome.DEPTH_LIMIT,
                    explored_depth=sealed_forward() + sealed_backward(),
                    frontier_size=len(f_frontier) + len(b_frontier),
                )
        return SynthesisResult(
            outcome=SearchOutcome.UNREACHABLE_EXHAUSTED,
            group_order=len(f_rows),
            diameter=sealed_forward(),
        )

    if max_total_depth is not None and best > max_total_depth:
        return SynthesisResult(
            outcome=SearchOutcome.DEPTH_LIMIT,
            explored_depth=sealed_forward() + sealed_backward(),
            frontier_size=len(f_frontier) + len(b_frontier),
        )

    word = _canonical_met_word(
        d, best, gen_imgs, f_rows, f_parents, f_letters, f_layers, b_dist
    )
    assert apply_word(word).image == target.image
    return SynthesisResult(outcome=SearchOutcome.FOUND, word=word)


def _canonical_met_word(
    d: int,
    total: int,
    gen_imgs: list[np.ndarray],
    f_rows: list[np.ndarray],
    f_parents: list[int],
    f_letters: list[int],
    f_layers: list[list[int]],
    b_dist: dict[bytes, int],
) -> GateWord:
    """Lexicographically least word of length ``total`` reaching the target.

    Split at k = min(forward sealed depth, total).  Any shortest word's
    length-k prefix is a recorded forward geodesic ending at backward
    distance total - k, so the least valid prefix is the minimum of those
    records; the suffix is then chosen greedily against exact backward
    distances.
    """
    k = min(len(f_layers) - 1, total)
    j = total - k

    def int_word(idx: int) -> tuple[int, ...]:
        out = []
        while idx > 0:
            out.append(f_letters[idx])
            idx = f_parents[idx]
        return tuple(reversed(out))

    candidates = [
        (int_word(idx), idx)
        for idx in f_layers[k]
        if b_dist.get(f_rows[idx].tobytes()) == j
    ]
    prefix, start_idx = min(candidates)

    letters = list(prefix)
    cur = f_rows[start_idx]
    for remaining in range(j, 0, -1):
        for li in range(len(gen_imgs)):
            child = gen_imgs[li][cur]
            if b_dist.get(child.tobytes()) == remaining - 1:
                letters.append(li)
                cur = child
                break
        else:
            raise AssertionError("backward distance map lost the geodesic")
    return GateWord(d=d, letters=tuple(GENERATORS[li] for li in letters))


def census_payload(census: GroupCensus) -> dict:
    """The census as plain JSON data; shared by the CLI and the cache file."""
    return {
        "d": census.d,
        "order": census.order,
        "diameter": census.diameter,
        "counts_by_depth": list(census.counts_by_depth),
    }


def _census_cache_path(cache_dir: Path, d: int) -> Path:
    return cache_dir / f"census-d{d}-{GENERATOR_SET_VERSION}.json"


def _artifact_version() -> str:
    from cnotswap import __version__

    return __version__


def _load_cached_census(cache_dir: Path, d: int, max_elements: int) -> GroupCensus | None:
    path = _census_cache_path(cache_dir, d)
    if not path.exists():
        return None
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        logger.warning("ignoring unreadable census cache %s: %s", path, exc)
        return None
    header_ok = (
        isinstance(data, dict)
        and data.get("format") == CENSUS_CACHE_FORMAT
        and data.get("version") == _artifact_version()
        and data.get("generators") == GENERATOR_SET_VERSION
        and data.get("d") == d
    )
    if not header_ok:
        logger.warning("ignoring census cache %s: header mismatch", path)
        return None
    try:
        payload = data["census"]
        census = GroupCensus(
            d=int(payload["d"]),
            order=int(payload["order"]),
            diameter=int(payload["diameter"]),
            counts_by_depth=tuple(int(c) for c in payload["counts_by_depth"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        logger.warning("ignoring malformed census cache %s: %s", path, exc)
        return None
    if (
        census.d != d
        or census.order != sum(census.counts_by_depth)
        or not census.counts_by_depth
        or census.counts_by_depth[0] != 1
        or census.diameter != len(census.counts_by_depth) - 1
    ):
        logger.warning("ignoring inconsistent census cache %s", path)
        return None
    if census.order > max_elements:
        # cached run used a larger cap; honor the caller's cap by recomputing
        return None
    return census


def _store_census(cache_dir: Path, census: GroupCensus) -> None:
    cache_dir.mkdir(parents=True, exist_ok=True)
    data = {
        "format": CENSUS_CACHE_FORMAT,
        "version": _artifact_version(),
        "generators": GENERATOR_SET_VERSION,
        "d": census.d,
        "census": census_payload(census),
    }
    path = _census_cache_path(cache_dir, census.d)
    path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
