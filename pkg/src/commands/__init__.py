"""
Command handlers for the CLI application
"""

from .run_config import RunConfig
from .classify_command import ClassifyCommand
from .construct_command import ConstructCommand
from .verify_command import VerifyCommand
from .assemble_command import AssembleCommand
from .estimate_command import EstimateCommand
from .experiment_command import ExperimentCommand

__all__ = [
    'RunConfig',
    'ClassifyCommand',
    'ConstructCommand',
    'VerifyCommand',
    'AssembleCommand',
    'EstimateCommand',
    'ExperimentCommand',
]
