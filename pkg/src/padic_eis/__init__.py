__all__ = ["cli", "config", "logging", "utils", "arith", "series", "qexp", "residue", "eis", "surfaces", "jobs"]
__version__ = "0.1.0"
