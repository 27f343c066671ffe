from .oracle import ExactModel, exact_lml, posterior_cov, brute_force_snapshot, brute_force_bounds
