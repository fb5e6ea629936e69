from dataclasses import dataclass

DEFAULT_MAX_ORDER = 20000
DEFAULT_HEIGHT_BOUND = 8
# relation bound D = factor * (largest generator weight)
DEFAULT_RELATION_FACTOR = 2
# Molien audit runs up to factor * |W|
DEFAULT_AUDIT_FACTOR = 2
VERIFY_CHARACTERISTICS = (0, 5, 7, 11)
MIN_RANK = 1
MAX_RANK = 6
# weight w of the polynomial grading sits in cohomological codegree 2w
CODEGREE_PER_WEIGHT = 2


@dataclass(frozen = True)
class Limits:
    """
    Search and truncation limits shared by every computation.
    Attributes:
        max_order (int): Largest group order close() accepts.
        height_bound (int): Largest coefficient height tried by representative_point().
        relation_bound (int | None): Relation degree bound D; None derives it from the
            generator weights (DEFAULT_RELATION_FACTOR * max weight).
    """
    max_order: int = DEFAULT_MAX_ORDER
    height_bound: int = DEFAULT_HEIGHT_BOUND
    relation_bound: int | None = None

    def __post_init__(self):
        if self.max_order < 1:
            raise ValueError(f"max_order must be >= 1 (got: {self.max_order})")
        if self.height_bound < 1:
            raise ValueError(f"height_bound must be >= 1 (got: {self.height_bound})")
        if self.relation_bound is not None and self.relation_bound < 0:
            raise ValueError(f"relation_bound must be >= 0 (got: {self.relation_bound})")


DEFAULT_LIMITS = Limits()
