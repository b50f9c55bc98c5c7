from .RunConfig import RunConfig


class ClassifyRequest(RunConfig):
    # named operator, JSON list of columns, or {"b_table": [...]}
    Q: str
