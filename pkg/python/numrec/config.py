"""Configuration handling for numrec."""


class Config:
    """Default limits for the decision procedures.

    Attributes:
        v_max: Largest exponent tried by ``smallest_v_exceeding``.
        max_period: Largest candidate period examined by a decision.
        sample_window: Number of bits compared for each candidate period before
            the exact automaton check.
        max_depth: Depth of count tables and hypothesis checks.
        validation_depth: Depth of the positional system validation run before a decision.
        hd0l_validation_letters: Letters of the fixed point compared against an HD0L presentation.
        gap_scan_budget: Elements scanned while looking for a long run of equal bits.
        max_modulus: Largest modulus for which a residue profile is computed while bounding preperiods.
        sharp_bounds: Use the sharpened period bounds (``N(p^v) <= N(p_X)``) instead of the ``d^k`` ones.
        certify_unbounded: When the growth hypotheses fail, still search for an exactly verified
            period below ``max_period`` instead of answering ``Inapplicable`` at once.
        parallel: Verify surviving candidates in a thread pool.
        thread_count: Worker threads used when ``parallel`` is set.

    """

    def __init__(self) -> None:
        """Initialize configuration with default values."""
        self.v_max: int = 64

        # Candidate search
        self.max_period: int = 4096
        self.sample_window: int = 4096
        self.gap_scan_budget: int = 4096

        # Tables and checks
        self.max_depth: int = 64
        self.validation_depth: int = 12
        self.hd0l_validation_letters: int = 500
        self.max_modulus: int = 10**6

        self.sharp_bounds: bool = True
        self.certify_unbounded: bool = False

        # Threading
        self.parallel: bool = False
        self.thread_count: int = 4

    def __repr__(self) -> str:
        """Return string representation of configuration."""
        return (
            f"Config(v_max={self.v_max}, "
            f"max_period={self.max_period}, "
            f"sample_window={self.sample_window}, "
            f"gap_scan_budget={self.gap_scan_budget}, "
            f"max_depth={self.max_depth}, "
            f"validation_depth={self.validation_depth}, "
            f"hd0l_validation_letters={self.hd0l_validation_letters}, "
            f"max_modulus={self.max_modulus}, "
            f"sharp_bounds={self.sharp_bounds}, "
            f"certify_unbounded={self.certify_unbounded}, "
            f"parallel={self.parallel}, "
            f"thread_count={self.thread_count})"
        )
