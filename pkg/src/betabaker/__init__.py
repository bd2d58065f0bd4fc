"""Beta-expansions, symmetric beta-shifts, transversality certification
and baker-like skew-product simulation."""

from .digits import EPWord, lex_compare, word
from .beta_shift import (BetaSystem, greedy_expansion, is_admissible,
                         phi_eval, quasi_greedy_one, solve_beta)
from .derived import (DerivationOutcome, Derivability, beta_n_word, derive,
                      derivability_status, is_allowable)
from .transversality import (Certified, DiffSeries, Randomized,
                             TransversalityReport, check_epsilon_condition,
                             epsilon_bound, eval_series, find_delta,
                             verify_transversality)
from .baker import (GridRaster, Point, PointCloud, TwoSidedWord,
                    attractor_cloud, cloud_to_csv, project, raster_to_pgm,
                    rasterize, srb_sample, step)
from .analysis import (DensityReport, DimensionEstimate, box_dimension,
                       cylinder_decay, dimension_formula, marginal_density)

__version__ = "0.1.0"
