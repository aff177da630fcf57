"""Core-periphery partitioning via a density-normalized objective,
equivalent QUBO matrices, classical QUBO solvers, and coreness baselines."""

from .graph import Graph, GraphStats, load_graph, remove_isolated, stats
from .objective import (Partition, SweepCurve, eval_max_count, eval_normalized,
                        eval_rescaled, eval_unnormalized, sweep_prefix)
from .qubo import (QuboMatrix, QuboProblem, build_q, build_qhat, export_qubo,
                   quad_form, read_qubo, value_numerator)
from .solvers import (AnnealSchedule, Sample, SampleSet, default_schedule,
                      greedy_ascent, solve_anneal, solve_exhaustive)
from .baselines import (CorenessVector, coreness_degree, coreness_eig_a,
                        coreness_eig_q, coreness_gen_be, coreness_h_index,
                        coreness_nonlin_pm, genbe_transition_scores,
                        threshold_optimal, threshold_order)
from .sbm import SbmSpec, node_labels, planted_partition, sample_sbm
from .harness import ALL_METHODS, BenchReport, RunResult, bench, run_method

__version__ = "0.1.0"
