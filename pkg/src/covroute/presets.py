"""Built-in condition presets mapping a clinical picture to planner knobs.

Alpha weighs connectivity loss against transport time: a hemorrhagic
stroke is mainly a race to the hospital (low alpha), an ischemic stroke
benefits from continuous remote supervision (high alpha). The numeric
values are artifact defaults, overridable from the CLI and service.
"""

from __future__ import annotations

from dataclasses import dataclass

from .constraints import Requirements
from .planner import PlannerConfig


@dataclass(frozen=True)
class DiseasePreset:
    name: str
    alpha: float
    d1_s: float
    d2_s: float

    def config(self, **overrides) -> PlannerConfig:
        base = PlannerConfig(
            alpha=self.alpha, requirements=Requirements(d1_s=self.d1_s, d2_s=self.d2_s)
        )
        if not overrides:
            return base
        from dataclasses import replace

        return replace(base, **overrides)


PRESETS: dict[str, DiseasePreset] = {
    "hemorrhagic": DiseasePreset("hemorrhagic", alpha=0.5, d1_s=900.0, d2_s=600.0),
    "ischemic": DiseasePreset("ischemic", alpha=4.0, d1_s=900.0, d2_s=600.0),
}


def get_preset(name: str) -> DiseasePreset:
    try:
        return PRESETS[name]
    except KeyError:
        known = ", ".join(sorted(PRESETS))
        raise ValueError(f"unknown preset {name!r}; available: {known}") from None
