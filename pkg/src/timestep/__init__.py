from src.timestep.ssp_rk import SUBSTEPS_PER_STEP, TimeLoopConfig, rk_substep_update
from src.timestep.stepper import Stepper
