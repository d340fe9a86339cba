"""Many-to-one (Dunnett-type) comparisons with a control, including
modifications that remain valid under heterogeneous variances, and a
simulation engine for their size and power.
"""

from .contrasts import (ContrastMatrix, correlation_plugin, correlation_pooled,
                        dunnett_contrasts, validate)
from .data import Dataset, GroupSummary, load_example, parse_dataset, summarize
from .mvt import MvtProblem, MvtResult, equicoordinate_quantile, mvt_prob, t_cdf
from .procedures import (ComparisonResult, TestReport, TestSpec, bonferroni_welch,
                         dunnett_original, hc_covariance, run_test, sandwich_maxt,
                         welch_df, welch_pi)
from .sim import Scenario, SimReport, reproduce_table, run_scenario

__version__ = "0.1.0"
