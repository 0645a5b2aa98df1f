"""Named scenario and sweep presets.

The fig* names index the qualitative regimes of the model at n=300, T=50:

* fig3..fig6 -- homogeneous traits on the complete graph, crossing low/high
  openness (0.1, 0.25) with low/high commitment (0.3, 0.7);
* fig8, fig9 -- the consensus regime (0.25, 0.7) on a small-world and a
  scale-free network;
* fig10..fig12 -- a 20% committed minority pinned at opinion = action = 1
  among flexible agents drawn from trait intervals (adoption, rejection,
  and unpopular-norm regimes);
* sweep, sweep-desk -- the full sensitivity grid and a reduced profile
  that finishes in minutes.

Presets carry no baked-in seed; the caller always supplies one (the CLI
defaults to 0).
"""

from __future__ import annotations

from typing import Callable, Union

from .engine import (
    CompleteTopology,
    MinorityConfig,
    ScaleFreeTopology,
    ScenarioConfig,
    SmallWorldTopology,
    Topology,
)
from .errors import ConfigurationError
from .sweep import SweepSpec

PresetValue = Union[ScenarioConfig, SweepSpec]

INNOVATOR_BLOCK = MinorityConfig(fraction=0.2, opinion=1.0, openness=0.0, commitment=1.0)


def _homogeneous(openness: float, commitment: float, topology: Topology | None = None):
    def build(seed: int) -> ScenarioConfig:
        return ScenarioConfig(
            n=300,
            openness=openness,
            commitment=commitment,
            horizon=50,
            master_seed=seed,
            topology=topology if topology is not None else CompleteTopology(),
        )

    return build


def _minority(openness: tuple[float, float], commitment: tuple[float, float]):
    def build(seed: int) -> ScenarioConfig:
        return ScenarioConfig(
            n=300,
            openness=openness,
            commitment=commitment,
            horizon=50,
            master_seed=seed,
            opinion_init=(0.0, 0.5),
            minority=INNOVATOR_BLOCK,
        )

    return build


def _sweep_full(seed: int) -> SweepSpec:
    base = ScenarioConfig(n=300, openness=0.0, commitment=0.0, horizon=50)
    return SweepSpec.from_ranges(
        base=base,
        epsilon=(0.0, 0.5, 0.05),
        phi=(0.0, 1.0, 0.05),
        runs_per_cell=10,
        master_seed=seed,
    )


def _sweep_desk(seed: int) -> SweepSpec:
    base = ScenarioConfig(n=100, openness=0.0, commitment=0.0, horizon=50)
    return SweepSpec.from_ranges(
        base=base,
        epsilon=(0.0, 0.5, 0.1),
        phi=(0.0, 1.0, 0.1),
        runs_per_cell=5,
        master_seed=seed,
    )


PRESETS: dict[str, Callable[[int], PresetValue]] = {
    "fig3": _homogeneous(0.1, 0.3),
    "fig4": _homogeneous(0.1, 0.7),
    "fig5": _homogeneous(0.25, 0.3),
    "fig6": _homogeneous(0.25, 0.7),
    "fig8": _homogeneous(0.25, 0.7, SmallWorldTopology(k=6, p=0.8)),
    "fig9": _homogeneous(0.25, 0.7, ScaleFreeTopology(m0=9, m=6)),
    "fig10": _minority((0.25, 0.3), (0.7, 0.8)),
    "fig11": _minority((0.05, 0.1), (0.7, 0.8)),
    "fig12": _minority((0.05, 0.1), (0.1, 0.2)),
    "sweep": _sweep_full,
    "sweep-desk": _sweep_desk,
}


def preset_names() -> tuple[str, ...]:
    return tuple(PRESETS)


def expand(name: str, seed: int = 0) -> PresetValue:
    """Materialize a preset with the given master seed."""
    try:
        build = PRESETS[name]
    except KeyError:
        raise ConfigurationError(
            f"unknown preset {name!r}; available: {', '.join(PRESETS)}"
        ) from None
    return build(seed)
