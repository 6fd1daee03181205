"""Engine selection and single-instance runs shared by the CLI and the bench."""

from __future__ import annotations

import dataclasses
import os
import time
from dataclasses import dataclass

from .branching import solve_branch_kx
from .component_dp import solve_y
from .decomposition import NiceTreeDecomposition, heuristic_decomposition
from .graph import Graph, InputError, Refusal, connected_pairs, verify_solution
from .instance_io import CncInstance
from .oracle import DEFAULT_CAP, oracle_min_pairs
from .reductions import DEFAULT_MATERIALIZE_CAP
from .treewidth_dp import solve_wx

ENGINES = ("oracle", "branch-kx", "dp-y", "dp-wx")


class EngineRefusal(Refusal):
    """No engine is willing to touch the instance at the configured thresholds."""


@dataclass(frozen=True)
class HarnessConfig:
    oracle_max_n: int = 14
    dp_y_max: int = 22
    branch_kx_max: int = 24
    dp_wx_max: int = 18
    oracle_cap: int = DEFAULT_CAP
    materialize_cap: int = DEFAULT_MATERIALIZE_CAP
    workers: int = 1

    @staticmethod
    def from_env(environ=None) -> HarnessConfig:
        """Read overrides from the key=value file named by CNC_CONFIG, if any."""
        environ = os.environ if environ is None else environ
        path = environ.get("CNC_CONFIG")
        if not path:
            return HarnessConfig()
        fields = {f.name for f in dataclasses.fields(HarnessConfig)}
        overrides: dict[str, int] = {}
        with open(path, encoding="utf-8") as fh:
            for line_no, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise InputError(f"{path}:{line_no}: expected key=value")
                key, _, value = line.partition("=")
                key, value = key.strip(), value.strip()
                if key not in fields:
                    raise InputError(f"{path}:{line_no}: unknown config key {key!r}")
                try:
                    overrides[key] = int(value)
                except ValueError:
                    raise InputError(
                        f"{path}:{line_no}: value for {key} is not an integer"
                    ) from None
        return HarnessConfig(**overrides)


@dataclass(frozen=True)
class RunReport:
    answer: str  # YES or NO
    cut: tuple[int, ...] | None
    residual_pairs: int | None
    pairs_removed: int | None
    algorithm: str
    stats: dict
    wall_ms: float
    config: dict

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        if d["cut"] is not None:
            d["cut"] = [v + 1 for v in d["cut"]]  # 1-indexed outward
        return d


def select_algorithm(
    g: Graph,
    k: int,
    x: int | None,
    y: int | None,
    user_choice: str = "auto",
    config: HarnessConfig | None = None,
) -> str:
    """Pick an engine. An explicit choice wins; auto walks the thresholds.

    Auto order: oracle by vertex count, then dp-y when the instance is
    y-shaped and small, then dp-wx when heuristic width keeps w+x small,
    then branch-kx on x+k. Structure is consulted before branching so that
    near-tree graphs with moderate x go to the width engine.
    """
    if user_choice != "auto":
        if user_choice not in ENGINES:
            raise InputError(f"unknown engine {user_choice!r}")
        return user_choice
    config = config or HarnessConfig()
    if g.n <= config.oracle_max_n:
        return "oracle"
    if y is not None and y <= config.dp_y_max:
        return "dp-y"
    x_eff = x if x is not None else max(connected_pairs(g) - y, 0)
    width = heuristic_decomposition(g).width
    if width + x_eff <= config.dp_wx_max:
        return "dp-wx"
    if x_eff + k <= config.branch_kx_max:
        return "branch-kx"
    reasons = [f"n={g.n} > {config.oracle_max_n}"]
    if y is not None:
        reasons.append(f"y={y} > {config.dp_y_max}")
    reasons.append(f"w+x={width}+{x_eff} > {config.dp_wx_max}")
    reasons.append(f"x+k={x_eff}+{k} > {config.branch_kx_max}")
    raise EngineRefusal("instance outside every engine envelope: " + "; ".join(reasons))


def run_instance(
    inst: CncInstance,
    algo: str = "auto",
    config: HarnessConfig | None = None,
    ntd: NiceTreeDecomposition | None = None,
) -> RunReport:
    """Solve one instance and emit a verified report.

    Raises Refusal subclasses when the instance is outside the engine
    envelopes or a cap is hit; those are reports for the caller, not bugs.
    """
    config = config or HarnessConfig.from_env()
    g, k = inst.graph, inst.k
    total = connected_pairs(g)
    x_eff = inst.x_equivalent()
    start = time.perf_counter()

    def finish(answer, cut_vertices, residual, algorithm, stats) -> RunReport:
        wall = (time.perf_counter() - start) * 1e3
        removed = None
        cut_out = None
        if answer == "YES":
            cut_out = tuple(sorted(cut_vertices))
            report = verify_solution(g, cut_out, k, x_eff)
            if not report:
                raise AssertionError(
                    f"engine {algorithm} produced a cut that fails verification"
                )
            residual = report.residual_pairs
            removed = total - residual
        return RunReport(
            answer=answer,
            cut=cut_out,
            residual_pairs=residual,
            pairs_removed=removed,
            algorithm=algorithm,
            stats=stats,
            wall_ms=wall,
            config=dataclasses.asdict(config),
        )

    # Degenerate targets never reach an engine.
    if x_eff < 0:
        return finish("NO", None, None, "trivial", {"reason": "x-equivalent below zero"})
    if x_eff >= total:
        return finish("YES", (), total, "trivial", {"reason": "bound already met"})

    engine = select_algorithm(g, k, inst.x, inst.y, algo, config)

    if engine == "oracle":
        res = oracle_min_pairs(g, k, cap=config.oracle_cap)
        stats = {"explored": res.explored, "min_residual_pairs": res.min_residual_pairs}
        if res.min_residual_pairs <= x_eff:
            return finish("YES", res.best_cut.vertices, res.best_cut.residual_pairs,
                          engine, stats)
        return finish("NO", None, None, engine, stats)

    if engine == "branch-kx":
        d = solve_branch_kx(g, k, x_eff)
        stats = dataclasses.asdict(d.stats)
        if d.answer:
            return finish("YES", d.cut.vertices, d.cut.residual_pairs, engine, stats)
        return finish("NO", None, None, engine, stats)

    if engine == "dp-y":
        y_eff = inst.y if inst.y is not None else total - x_eff
        d = solve_y(g, k, y_eff, cap=config.oracle_cap)
        stats = dataclasses.asdict(d.stats)
        if d.answer:
            return finish("YES", d.cut.vertices, d.cut.residual_pairs, engine, stats)
        return finish("NO", None, None, engine, stats)

    d = solve_wx(g, k, x_eff, ntd=ntd)
    stats = dataclasses.asdict(d.stats)
    if d.answer:
        return finish("YES", d.cut.vertices, d.cut.residual_pairs, engine, stats)
    return finish("NO", None, None, engine, stats)
