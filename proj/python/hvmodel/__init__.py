"""Non-contextual hidden-variable model for finite-dimensional quantum mechanics."""

from ._core import (
    HvmError,
    basis_ket,
    born_experiment,
    chsh_experiment,
    column_product_experiment,
    commutes,
    draw_hidden,
    implications_demo,
    no_go_search,
    pauli,
    peres_mermin,
    predict,
    replay_table1,
    run_cli,
    spectral,
    strong_fc,
    tensor,
    update,
    verify_proposition,
    weak_fc_sweep,
)

__all__ = [
    "HvmError",
    "basis_ket",
    "born_experiment",
    "chsh_experiment",
    "column_product_experiment",
    "commutes",
    "draw_hidden",
    "implications_demo",
    "no_go_search",
    "pauli",
    "peres_mermin",
    "predict",
    "replay_table1",
    "run_cli",
    "spectral",
    "strong_fc",
    "tensor",
    "update",
    "verify_proposition",
    "weak_fc_sweep",
]
