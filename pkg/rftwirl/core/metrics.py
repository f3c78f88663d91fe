from prometheus_client import CollectorRegistry, Counter, Histogram, write_to_textfile

REGISTRY = CollectorRegistry()

TWIRL_APPLICATIONS = Counter(
    "rftwirl_twirl_applications_total",
    "Exact and sampled twirl evaluations",
    ["kind"],
    registry=REGISTRY,
)
CERTIFICATIONS = Counter(
    "rftwirl_certifications_total",
    "Scheme certifications by kind and verdict",
    ["kind", "result"],
    registry=REGISTRY,
)
CERTIFICATION_SECONDS = Histogram(
    "rftwirl_certification_seconds",
    "Wall time spent certifying a scheme",
    registry=REGISTRY,
)
PROTOCOL_TRIALS = Counter(
    "rftwirl_protocol_trials_total",
    "Simulated protocol trials by party",
    ["role"],
    registry=REGISTRY,
)


def write_metrics(path: str) -> None:
    write_to_textfile(path, REGISTRY)
