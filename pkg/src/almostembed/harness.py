"""Seeded verification sweeps over random drawings, and witness searches for open conjectures.

Every sample draws its randomness from ``random.Random(f"{seed}:{target}:{index}")``,
so a sample can be replayed on its own and the report does not depend on how
samples are spread across worker processes.
"""
from __future__ import annotations

import json
import multiprocessing
import random
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

from .errors import CannotRoute, ExhaustedRetries, GeometryError, InfeasibleTarget, NotGeneralPosition
from .geometry import pt, pt3, segments_intersect
from .graph import Graph, Grade, crossing_number_V, is_general_position, restrict_cycle, restrict_path, validate
from .invariants import (
    K4_CYCLES,
    W_f,
    w_f,
    wu_cyclic,
    wu_f_cycle,
    wu_f_star,
    wu_f_triod,
    wu_triodic,
)
from .io import drawing_to_dict, point_to_json, polylines_doc
from .moves import gen_example_5_10, random_almost_embedding, random_drawing, triangle_with_centre
from .space3 import cgs_check, no_four_coplanar
from .winding import ClosedPolyline, Polyline, chain, inside_mod2, winding_number

EXHAUSTION_THRESHOLD = 0.1  # tolerated fraction of samples whose generator gave up
TRIANGLE_ARCS = (pt(4, 0), pt(-2, 3), pt(-2, -3))
K33_CYCLE = (2, 5, 3, 6)  # the 4-cycle of K3,3 - 1 - 4 in the K3,3-ab template


@dataclass(frozen=True)
class SweepConfig:
    target: str
    samples: int
    seed: int = 0
    grid_size: int = 101
    move_budget: int = 3
    workers: int = 1

    def check(self) -> None:
        if self.target not in TARGETS:
            raise ValueError(f"unknown sweep target {self.target!r}; choose from {', '.join(TARGETS)}")
        if self.samples < 1:
            raise ValueError("sample count must be at least 1")
        if self.workers < 1:
            raise ValueError("worker count must be at least 1")
        if self.grid_size < 8:
            raise ValueError("grid size must be at least 8")
        if self.move_budget < 0:
            raise ValueError("move budget must be non-negative")


@dataclass
class SweepReport:
    config: SweepConfig
    samples_run: int
    violations: list
    generator_failures: int
    statistics: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def exhausted(self) -> bool:
        return self.generator_failures > EXHAUSTION_THRESHOLD * self.config.samples

    def exit_code(self) -> int:
        if self.violations:
            return 2
        if self.exhausted:
            return 3
        return 0

    def to_dict(self) -> dict:
        return {
            "config": asdict(self.config),
            "samplesRun": self.samples_run,
            "generatorFailures": self.generator_failures,
            "passed": self.passed,
            "violations": self.violations,
            "statistics": self.statistics,
        }

    def to_json(self) -> str:
        # worker count is excluded so reports from different pool sizes compare equal
        doc = self.to_dict()
        del doc["config"]["workers"]
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def table(self) -> str:
        c = self.config
        rows = [
            ("target", c.target),
            ("samples", f"{self.samples_run}/{c.samples}"),
            ("seed", str(c.seed)),
            ("generator failures", str(self.generator_failures)),
            ("violations", str(len(self.violations))),
            ("result", "PASS" if self.passed else "FAIL"),
        ]
        for name, hist in self.statistics.items():
            rows.append((name, " ".join(f"{k}:{v}" for k, v in hist)))
        width = max(len(r[0]) for r in rows)
        return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


@dataclass(frozen=True)
class RadonCounters:
    V: int
    I: int


def compute_I(f) -> RadonCounters:
    """Crossing count V of nonadjacent edges and the number I of vertices j lying in the mod-2 interior of f|C_j."""
    report = is_general_position(f, first_only=True)
    if not report.ok:
        raise NotGeneralPosition(f"drawing is not in general position: {report.issues[0]}", pair=None)
    V = crossing_number_V(f)
    I = sum(inside_mod2(restrict_cycle(f, K4_CYCLES[j]), f.vertices[j]) for j in (1, 2, 3, 4))
    return RadonCounters(V, I)


# -- per-target samplers -----------------------------------------------------------
#
# A sampler takes (rng, config) and returns (stats, violation_message, repro).
# ``stats`` maps statistic names to hashable values; ``violation_message`` is
# None when the sample satisfies the statement.


def _rand_point(rng: random.Random, half: int):
    return pt(rng.randint(-half, half), rng.randint(-half, half))


def _sample_t14(rng, cfg):
    half = cfg.grid_size // 2
    for _ in range(1000):
        O = _rand_point(rng, half // 4)
        k = rng.randint(1, 6)
        first = [_rand_point(rng, half) for _ in range(k)]
        pts = first + [O.scale(2) - p for p in first]
        l = ClosedPolyline(pts)
        if len(l.points) < 2 or l.contains_point(O):
            continue
        w = winding_number(l, O)
        repro = polylines_doc({"l": l}) | {"O": point_to_json(O)}
        msg = None if w % 2 else f"winding number {w} about the centre is even"
        return {"winding": w}, msg, repro
    raise ExhaustedRetries("no symmetric polyline avoided its centre", attempts=1000)


def _ray_far_point(O, A, reach: int):
    d = A - O
    return O + d.scale(reach)


def _avoids(poly: Polyline, ray) -> bool:
    return not any(segments_intersect(s, ray) for s in poly.segments())


def _sample_t18(rng, cfg):
    O = pt(0, 0)
    A = TRIANGLE_ARCS
    half = cfg.grid_size // 2
    rays = [(O, _ray_far_point(O, A[j], 4 * cfg.grid_size)) for j in range(3)]
    arcs = []
    for j in range(3):
        for _ in range(1000):
            bends = [_rand_point(rng, half) for _ in range(rng.randint(0, 3))]
            l = Polyline([A[(j + 1) % 3]] + bends + [A[(j + 2) % 3]])
            if _avoids(l, rays[j]):
                arcs.append(l)
                break
        else:
            raise ExhaustedRetries(f"arc {j} never avoided its ray", attempts=1000)
    loop = ClosedPolyline(chain(*arcs).points)
    w = winding_number(loop, O)
    repro = polylines_doc({"l0": arcs[0], "l1": arcs[1], "l2": arcs[2]})
    msg = None if abs(w) == 1 else f"w(l0 l1 l2) = {w}, expected +-1"
    return {"winding": w}, msg, repro


def _ae(rng, cfg, template):
    return random_almost_embedding(template, rng, move_budget=cfg.move_budget)


def _sample_t52(rng, cfg):
    f = _ae(rng, cfg, "K4")
    vec = W_f(f)
    I = sum(inside_mod2(restrict_cycle(f, K4_CYCLES[j]), f.vertices[j]) for j in (1, 2, 3, 4))
    msg = None
    if vec.W % 2 == 0:
        msg = f"W_f = {vec.W} is even"
    elif vec.W % 2 != I % 2:
        msg = f"parity of W_f = {vec.W} differs from parity of I = {I}"
    return {"W": vec.W, "I": I}, msg, drawing_to_dict(f)


def _k5_difference(f) -> int:
    return w_f(f, (1, 2, 3), 4) - w_f(f, (1, 2, 3), 5)


def _sample_t54a(rng, cfg):
    f = _ae(rng, cfg, "K5-45")
    d = _k5_difference(f)
    return {"difference": d}, (None if d % 2 else f"difference {d} is even"), drawing_to_dict(f)


def _sample_t54b(rng, cfg):
    f = _ae(rng, cfg, "K5-45")
    d = _k5_difference(f)
    return {"difference": d}, (None if abs(d) == 1 else f"difference {d} is not +-1"), drawing_to_dict(f)


def _k33_difference(f) -> int:
    return w_f(f, K33_CYCLE, 1) - w_f(f, K33_CYCLE, 4)


def _sample_t56a(rng, cfg):
    f = _ae(rng, cfg, "K3,3-ab")
    d = _k33_difference(f)
    return {"difference": d}, (None if d % 2 else f"difference {d} is even"), drawing_to_dict(f)


def _sample_radon(rng, cfg):
    f = random_drawing(Graph.complete(4), rng, grid_size=cfg.grid_size)
    rc = compute_I(f)
    msg = None if (rc.V + rc.I) % 2 else f"V + I = {rc.V} + {rc.I} is even"
    return {"V": rc.V, "I": rc.I}, msg, drawing_to_dict(f)


def _sample_vkf(rng, cfg):
    f = random_drawing(Graph.complete(5), rng, grid_size=cfg.grid_size)
    V = crossing_number_V(f)
    return {"V": V}, (None if V % 2 else f"V = {V} is even"), drawing_to_dict(f)


def _sample_wu(rng, cfg):
    star = random_drawing(Graph.star(3), rng, grid_size=cfg.grid_size)
    tri = random_drawing(Graph.complete(3), rng, grid_size=cfg.grid_size)
    msgs = []
    try:
        t = wu_triodic(*(restrict_path(star, (4, v)) for v in (1, 2, 3)))
    except AssertionError as exc:
        t, msgs = None, msgs + [f"triodic: {exc}"]
    try:
        c = wu_cyclic(restrict_path(tri, (1, 2)), restrict_path(tri, (2, 3)), restrict_path(tri, (3, 1)))
    except AssertionError as exc:
        c, msgs = None, msgs + [f"cyclic: {exc}"]
    for name, v in (("triodic", t), ("cyclic", c)):
        if v is not None and v % 2 == 0:
            msgs.append(f"{name} Wu number {v} is even")
    repro = {"star": drawing_to_dict(star), "triangle": drawing_to_dict(tri)}
    return {"triodic": t, "cyclic": c}, ("; ".join(msgs) or None), repro


def _sample_id72(rng, cfg):
    f = _ae(rng, cfg, "K4")
    vec = W_f(f)
    apex = [wu_f_star(f, a) for a in (4, 3, 2, 1)]
    cyc = wu_cyclic(restrict_path(f, (1, 2)), restrict_path(f, (2, 3)), restrict_path(f, (3, 4, 1)))
    wu123 = wu_f_cycle(f, (1, 2, 3))
    msgs = []
    if any(a != vec.W for a in apex):
        msgs.append(f"apex Wu numbers {apex} differ from W_f = {vec.W}")
    if sum(vec.values) != cyc:
        msgs.append(f"sum of w_f(C_j, j) = {sum(vec.values)} but wu(12, 23, 341) = {cyc}")
    if 2 * vec.n4 != wu123 + apex[0]:
        msgs.append(f"2 w_f(123, 4) = {2 * vec.n4} but wu_f(123) + wu_f(41, 42, 43) = {wu123 + apex[0]}")
    return {"W": vec.W, "wu123": wu123}, ("; ".join(msgs) or None), drawing_to_dict(f)


def _sample_id75(rng, cfg):
    f = _ae(rng, cfg, "K5-45")
    left = wu_f_triod(f, 4, (1, 2, 3)) - wu_f_triod(f, 5, (1, 2, 3))
    d = _k5_difference(f)
    msg = None if left == 2 * d else f"wu_f(41,42,43) - wu_f(51,52,53) = {left} but 2 * difference = {2 * d}"
    return {"difference": d}, msg, drawing_to_dict(f)


def _sample_cgs(rng, cfg):
    half = cfg.grid_size // 2
    for _ in range(1000):
        pts = [pt3(*(rng.randint(-half, half) for _ in range(3))) for _ in range(6)]
        if no_four_coplanar(pts):
            break
    else:
        raise ExhaustedRetries("no six points without four coplanar", attempts=1000)
    rep = cgs_check(pts)
    odd = len(rep.odd_pairs)
    repro = {"points": [point_to_json(p) for p in pts]}
    return {"oddPairs": odd}, (None if odd else "no linked pair of triangles"), repro


TARGETS: dict[str, Callable] = {
    "T1.4": _sample_t14,
    "T1.8": _sample_t18,
    "T5.2": _sample_t52,
    "T5.4a": _sample_t54a,
    "T5.4b": _sample_t54b,
    "T5.6a": _sample_t56a,
    "RADON": _sample_radon,
    "VKF": _sample_vkf,
    "WU-ODD": _sample_wu,
    "ID-7.2": _sample_id72,
    "ID-7.5": _sample_id75,
    "CGS": _sample_cgs,
}


def sample_seed(cfg: SweepConfig, index: int) -> str:
    return f"{cfg.seed}:{cfg.target}:{index}"


def run_sample(cfg: SweepConfig, index: int) -> dict:
    """One sample, replayable from (config, index)."""
    rng = random.Random(sample_seed(cfg, index))
    try:
        stats, msg, repro = TARGETS[cfg.target](rng, cfg)
    except (ExhaustedRetries, CannotRoute, InfeasibleTarget) as exc:
        return {"index": index, "failure": str(exc)}
    except (GeometryError, AssertionError) as exc:
        # an error on a drawing the generator accepted is an implementation fault
        return {"index": index, "stats": {}, "violation": f"{type(exc).__name__}: {exc}", "repro": None}
    out = {"index": index, "stats": stats}
    if msg is not None:
        out["violation"] = msg
        out["repro"] = repro
    return out


def _run_shard(args) -> list:
    cfg, indices = args
    return [run_sample(cfg, i) for i in indices]


def _histograms(results: Sequence[dict]) -> dict:
    counters: dict[str, Counter] = {}
    for r in results:
        for k, v in r.get("stats", {}).items():
            if v is not None:
                counters.setdefault(k, Counter())[v] += 1
    return {k: sorted(c.items()) for k, c in sorted(counters.items())}


def sweep(config: SweepConfig) -> SweepReport:
    config.check()
    indices = list(range(config.samples))
    if config.workers == 1:
        results = _run_shard((config, indices))
    else:
        shards = [(config, indices[w :: config.workers]) for w in range(config.workers)]
        with multiprocessing.get_context("fork").Pool(config.workers) as pool:
            results = [r for part in pool.map(_run_shard, shards) for r in part]
    results.sort(key=lambda r: r["index"])
    failures = sum(1 for r in results if "failure" in r)
    violations = [
        {"index": r["index"], "sampleSeed": sample_seed(config, r["index"]), "message": r["violation"],
         "drawing": r.get("repro")}
        for r in results if "violation" in r
    ]
    return SweepReport(
        config=config,
        samples_run=len(results) - failures,
        violations=violations,
        generator_failures=failures,
        statistics=_histograms(results),
    )


# -- conjecture searches -----------------------------------------------------------


@dataclass
class SearchReport:
    conjecture: str
    budget: int
    seed: int
    witnesses: dict  # target label -> {"source": ..., "drawing": ...}
    missing: list  # target labels without a witness
    frontier: list  # every invariant tuple seen during the search
    discoveries: list = field(default_factory=list)

    @property
    def exhausted(self) -> bool:
        return bool(self.missing)

    def to_dict(self) -> dict:
        return {
            "conjecture": self.conjecture,
            "budget": self.budget,
            "seed": self.seed,
            "witnesses": self.witnesses,
            "noWitnessWithinBudget": self.missing,
            "frontier": self.frontier,
            "discoveries": self.discoveries,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def exit_code(self) -> int:
        return 3 if self.exhausted else 0


DEFAULT_TARGETS = {
    "C5.3": [(0, 0, 0, 1), (1, 1, 1, 0), (0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 1, 2), (0, 1, 0, 2)],
    "C7.4": [(1, 1), (-1, -1), (1, -1), (3, 1), (1, 3)],
    "C5.6b": [],
}


def _label(t) -> str:
    return ",".join(str(x) for x in t)


def _k4_invariants(f) -> tuple:
    return W_f(f).values


def _c74_invariants(f) -> tuple:
    return (wu_f_cycle(f, (1, 2, 3)), wu_f_star(f, 4))


def _deterministic_c53(target):
    if target == (0, 0, 0, 1):
        return "triangle with centre", triangle_with_centre()
    try:
        return "constructive generator", gen_example_5_10(*target)
    except (InfeasibleTarget, CannotRoute, ValueError):
        return None


def _deterministic_c74(target):
    f = triangle_with_centre()
    if _c74_invariants(f) == tuple(target):
        return "triangle with centre", f
    return None


def _check_target(conjecture: str, t: tuple) -> None:
    if conjecture == "C5.3" and (len(t) != 4 or sum(t) % 2 == 0):
        raise ValueError(f"C5.3 targets are four integers with odd sum, got {t}")
    if conjecture == "C7.4" and (len(t) != 2 or t[0] % 2 == 0 or t[1] % 2 == 0):
        raise ValueError(f"C7.4 targets are two odd integers (t, n), got {t}")


def _verified(f, invariants: Callable, target) -> bool:
    return validate(f).grade is Grade.ALMOST_EMBEDDING and invariants(f) == tuple(target)


def search_conjecture(conjecture: str, budget: int, seed: int = 0, targets=None, move_budget: int = 6) -> SearchReport:
    """Look for drawings realizing the requested invariant tuples.

    Deterministic generators are tried first, then ``budget`` random almost
    embeddings built from up to ``move_budget`` moves. A tuple left without a
    witness is reported as such; nothing is inferred about its realizability.
    For C5.6b the search instead collects drawings whose difference is not +-1.
    """
    if conjecture not in DEFAULT_TARGETS:
        raise ValueError(f"unknown conjecture {conjecture!r}; choose from {', '.join(DEFAULT_TARGETS)}")
    if budget < 0:
        raise ValueError("budget must be non-negative")
    rng = random.Random(f"{seed}:{conjecture}")
    if conjecture == "C5.6b":
        return _search_c56b(budget, seed, rng, move_budget)
    template, invariants, deterministic = {
        "C5.3": ("K4", _k4_invariants, _deterministic_c53),
        "C7.4": ("K4", _c74_invariants, _deterministic_c74),
    }[conjecture]
    wanted = [tuple(int(x) for x in t) for t in (targets if targets is not None else DEFAULT_TARGETS[conjecture])]
    for t in wanted:
        _check_target(conjecture, t)
    witnesses = {}
    seen = set()
    for t in wanted:
        found = deterministic(t)
        if found and _verified(found[1], invariants, t):
            witnesses[_label(t)] = {"source": found[0], "drawing": drawing_to_dict(found[1])}
            seen.add(t)
    open_targets = {t for t in wanted if _label(t) not in witnesses}
    for i in range(budget):
        if not open_targets:
            break
        try:
            f = random_almost_embedding(template, rng, move_budget=rng.randint(1, move_budget))
        except (ExhaustedRetries, CannotRoute):
            continue
        inv = invariants(f)
        seen.add(inv)
        if inv in open_targets and _verified(f, invariants, inv):
            witnesses[_label(inv)] = {"source": f"random search, attempt {i}", "drawing": drawing_to_dict(f)}
            open_targets.discard(inv)
    missing = [_label(t) for t in wanted if _label(t) not in witnesses]
    return SearchReport(conjecture, budget, seed, witnesses, missing, sorted(list(x) for x in seen))


def _search_c56b(budget: int, seed: int, rng: random.Random, move_budget: int) -> SearchReport:
    seen = Counter()
    discoveries = []
    for i in range(budget):
        try:
            f = random_almost_embedding("K3,3-ab", rng, move_budget=rng.randint(1, move_budget))
        except (ExhaustedRetries, CannotRoute):
            continue
        d = _k33_difference(f)
        seen[d] += 1
        if abs(d) != 1 and validate(f).grade is Grade.ALMOST_EMBEDDING:
            discoveries.append({"attempt": i, "difference": d, "drawing": drawing_to_dict(f)})
    frontier = [[d, c] for d, c in sorted(seen.items())]
    return SearchReport("C5.6b", budget, seed, {}, [], frontier, discoveries)


__all__ = [
    "SweepConfig", "SweepReport", "RadonCounters", "compute_I", "sweep", "run_sample", "TARGETS",
    "SearchReport", "search_conjecture", "DEFAULT_TARGETS", "EXHAUSTION_THRESHOLD",
]
