"""Node-and-choice forms: validation, derived entities, morphisms, style
conversion, and exhaustive small-scale verification."""

from .errors import (
    AbsentmindedInput,
    NCFError,
    NCFSyntaxError,
    ParseFailure,
    TheoremViolation,
    ValidationFailure,
)
from .form import Form, as_one_player_form, validate_form
from .formio import parse, serialize
from .morphism import (
    FormMorphism,
    IsoWitness,
    PreformMorphism,
    compose,
    find_isomorphism,
    identity_morphism,
    invert,
    is_isomorphism,
    validate_form_morphism,
)
from .nodes import Atom, SeqNode, SetNode, cset, seq
from .preform import Preform, validate_preform
from .properties import PropertyId, has_no_absentmindedness, has_perfect_information
from .transport import TransportSpec, convert_any_to, to_choice_sequence, to_choice_set
from .tree import Tree, validate_tree

__all__ = [
    "AbsentmindedInput",
    "Atom",
    "Form",
    "FormMorphism",
    "IsoWitness",
    "NCFError",
    "NCFSyntaxError",
    "ParseFailure",
    "Preform",
    "PreformMorphism",
    "PropertyId",
    "SeqNode",
    "SetNode",
    "TheoremViolation",
    "TransportSpec",
    "Tree",
    "ValidationFailure",
    "as_one_player_form",
    "compose",
    "convert_any_to",
    "cset",
    "find_isomorphism",
    "has_no_absentmindedness",
    "has_perfect_information",
    "identity_morphism",
    "invert",
    "is_isomorphism",
    "parse",
    "seq",
    "serialize",
    "to_choice_sequence",
    "to_choice_set",
    "validate_form",
    "validate_form_morphism",
    "validate_preform",
    "validate_tree",
]
