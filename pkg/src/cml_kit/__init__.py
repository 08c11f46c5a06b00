"""cml-kit: exact-rational tooling for slack-parameterized Markovian logic."""

from .rational import Rate, ensure_rate, format_rate, parse_rate
from .errors import (
    CMLError,
    FormulaSyntaxError,
    InternalCheckError,
    KernelError,
    ProofCheckError,
    RateError,
    SearchBudgetExceeded,
)
from .kernel import (
    Kernel,
    closure,
    disjoint_union,
    dumps_kernel,
    kernel_to_doc,
    left_tag,
    load_kernel,
    loads_kernel,
    measure,
    right_tag,
    validate,
)
from .formula import (
    And,
    Bot,
    Formula,
    Fragment,
    Implies,
    L,
    Not,
    Or,
    Top,
    encode_abs,
    encode_down,
    encode_up,
    in_fragment,
    normal_form,
    parse,
    print_formula,
    strip_sugar,
)
from .semantics import (
    Evaluator,
    Extension,
    default_rate_grid,
    eval_formula,
    extension_of,
    sat,
    search_model,
    valid_on,
)
from .equivalence import (
    GeneratorFamily,
    Partition,
    bisimilar,
    bisimulation,
    generators,
    partition_from_family,
)
from .orders import EpsilonOrder, OrderSolver, holds, largest_order
from .metric import Distance, distance
from .proofcheck import (
    Axiom,
    Hypothesis,
    ModusPonens,
    Proof,
    ProofLine,
    RuleR1,
    Tautology,
    axiom_instance,
    check,
    check_result,
    dumps_proof,
    load_proof,
    loads_proof,
    translate_proof,
)

__version__ = "0.1.0"
