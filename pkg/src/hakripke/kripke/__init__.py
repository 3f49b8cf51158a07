from .model import (
    Diagram, Forcing, KripkeModel, ModelError, Structure, Violation,
    check_monotonicity, classical_sat, diagram, forces, validate_model,
)
from .io import ModelFormatError, dumps_model, load_model, loads_model
