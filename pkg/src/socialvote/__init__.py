"""Stochastic model of social news voting: simulation, fitting and prediction."""

from .baselines import (DecisionTree, InfluenceFeatures, classify, extrapolate,
                        fan_vote_count, train_tree)
from .estimation import FitResult, fit_lognormal, fit_r, fit_r_from_events
from .exceptions import (DegenerateInputError, DomainError, NotFittedError,
                         SocialVoteError, StepSizeError)
from .metrics import EvalReport, evaluate
from .model import (ExposureRates, StoryState, exposure_rates, fan_increment,
                    list_position, page_visibility, vote_rate)
from .params import ModelParams, StoryParams
from .prediction import NEVER, Prediction, classify_success, predict, promotion_boundary
from .solver import (SolveResult, Trajectory, VoteEvent, VoteEventStream, ensemble_mean,
                     simulate, solve)
from .synthgen import FanSpec, PopulationSpec, generate_dataset, sample_population

__version__ = "0.1.0"
