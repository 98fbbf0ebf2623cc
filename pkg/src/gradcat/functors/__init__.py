from gradcat.functors.analysis import (
    Classification,
    ExponentForm,
    Kind,
    Verdict,
    classify_functor,
    distinguished_elements,
    is_distinguished,
    preserves_equalizers_upto,
    preserves_products_upto,
    preserves_pullbacks_upto,
    recover_right_adjoint_form,
)
from gradcat.functors.evseq import EvSeq, EvSeqFunctor, ev_countable_witness, ev_eval
from gradcat.functors.presentation import (
    BUILTIN_NAMES,
    Presentation,
    SetFunctor,
    Term,
    builtin,
    eval_mor,
    eval_obj,
    evaluate,
    guard_limit,
    set_guard,
)

__all__ = [
    "BUILTIN_NAMES", "Classification", "EvSeq", "EvSeqFunctor", "ExponentForm", "Kind",
    "Presentation", "SetFunctor", "Term", "Verdict", "builtin", "classify_functor",
    "distinguished_elements", "ev_countable_witness", "ev_eval", "eval_mor", "eval_obj",
    "evaluate", "guard_limit", "is_distinguished", "preserves_equalizers_upto",
    "preserves_products_upto", "preserves_pullbacks_upto", "recover_right_adjoint_form",
    "set_guard",
]
