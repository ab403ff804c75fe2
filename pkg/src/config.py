import os
from dotenv import load_dotenv

load_dotenv()


class Config:
    QKV_JOBS = os.getenv("QKV_JOBS", str(os.cpu_count() or 1))
    QKV_LOG_LEVEL = os.getenv("QKV_LOG_LEVEL", "WARNING")
    QKV_JSON_LOGS = os.getenv("QKV_JSON_LOGS", "false")
    QKV_FLOAT_TOL = os.getenv("QKV_FLOAT_TOL", "1e-12")
    QKV_SEED = os.getenv("QKV_SEED", "20240601")
    QKV_RANDOM_TUPLES = os.getenv("QKV_RANDOM_TUPLES", "50")

    REPORT_VERSION = 1
    KAPPA_NORMALIZATION = "16n(n+2)"

    @classmethod
    def jobs(cls) -> int:
        return int(cls.QKV_JOBS)

    @classmethod
    def json_logs(cls) -> bool:
        return cls.QKV_JSON_LOGS.lower() == "true"

    @classmethod
    def float_tolerance(cls) -> float:
        return float(cls.QKV_FLOAT_TOL)

    @classmethod
    def seed(cls) -> int:
        return int(cls.QKV_SEED)

    @classmethod
    def random_tuples(cls) -> int:
        return int(cls.QKV_RANDOM_TUPLES)

    @classmethod
    def validate(cls):
        """Ensure every configured value parses and lies in range."""
        problems = []
        for key, parse, ok in (
            ("QKV_JOBS", int, lambda v: v >= 1),
            ("QKV_FLOAT_TOL", float, lambda v: v >= 0),
            ("QKV_SEED", int, lambda v: True),
            ("QKV_RANDOM_TUPLES", int, lambda v: v >= 1),
        ):
            try:
                if not ok(parse(getattr(cls, key))):
                    problems.append(f"{key}={getattr(cls, key)} out of range")
            except ValueError:
                problems.append(f"{key}={getattr(cls, key)} is not a number")
        if cls.QKV_LOG_LEVEL.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            problems.append(f"QKV_LOG_LEVEL={cls.QKV_LOG_LEVEL} is not a log level")
        if problems:
            raise ValueError(f"Invalid environment variables: {', '.join(problems)}")
