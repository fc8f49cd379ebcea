"""Metric k-center clustering: sequential greedy, multi-round MapReduce greedy
and iterative sampling, on a simulated MapReduce substrate."""
from .datagen import GenSpec, gen_gau, gen_unb, gen_unif, generate
from .eim import (EimConfig, EimResult, EimSample, critical_phi, eim, eim_sample, phi_feasible,
                  select)
from .gonzalez import GonConfig, gon, gon_farthest_sequence
from .harness import Harness, MrConfig, MrTrace, RoundRecord, partition, run_round
from .metric import CenterSolution, CostCounter, PointSet, covering_radius, read_points_csv
from .mrg import MrgResult, machine_bound, mrg, predict_rounds
from .oracle import OracleResult, approx_factor, exact_kcenter

__all__ = [
    "CenterSolution", "CostCounter", "EimConfig", "EimResult", "EimSample", "GenSpec",
    "GonConfig", "Harness", "MrConfig", "MrTrace", "MrgResult", "OracleResult", "PointSet",
    "RoundRecord", "approx_factor", "covering_radius", "critical_phi", "eim", "eim_sample",
    "exact_kcenter", "gen_gau", "gen_unb", "gen_unif", "generate", "gon",
    "gon_farthest_sequence", "machine_bound", "mrg", "partition", "phi_feasible",
    "predict_rounds", "read_points_csv", "run_round", "select",
]
