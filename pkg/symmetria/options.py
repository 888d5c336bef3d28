"""
Validated configuration objects for the measure engines and the annealing search.
"""
from pydantic import BaseModel, ConfigDict, Field


class MeasureOptions(BaseModel):
    model_config = ConfigDict(frozen=True)

    angle_samples: int = Field(720, gt=0)
    # relative to the polygon's diameter
    offset_tolerance: float = Field(1e-10, gt=0, lt=1)
    refine_brackets: int = Field(5, gt=0)
    refine_rounds: int = Field(60, gt=0)
    fold_offset_samples: int = Field(512, gt=0)
    workers: int = Field(1, gt=0)


def search_measure_options():
    """Reduced-resolution options used inside annealing loops."""
    return MeasureOptions(angle_samples=180, offset_tolerance=1e-7, refine_brackets=2, refine_rounds=30)


class AnnealConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_vertices: int = Field(4, ge=3)
    iterations: int = Field(20000, ge=0)
    initial_temperature: float = Field(0.01, gt=0)
    cooling_rate: float = Field(0.9997, gt=0, lt=1)
    step_scale: float = Field(0.05, gt=0)
    seed: int = Field(0, ge=0, lt=2 ** 64)
    measure_opts: MeasureOptions = Field(default_factory=search_measure_options)
    final_opts: MeasureOptions = Field(default_factory=MeasureOptions)
