from .operator_poly import (
    OperatorPoly,
    normal_order_product,
    commutator,
    dagger,
    fock_matrix_element,
    fock_matrix,
    render,
)
from .eigenoperator import (
    EigenoperatorSolution,
    SolveReport,
    solve_tilde_a,
    quartic_hamiltonian,
    relation_residual,
    normalization_residual,
    commutation_residual,
    verify_power_identity,
)
