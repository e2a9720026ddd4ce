"""Exception hierarchy shared by all scheduling modules."""


class SchedError(Exception):
    """Base class for every error raised by dagsched."""


class GraphError(SchedError):
    pass


class CycleDetected(GraphError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("cycle detected through tasks " + " -> ".join(map(str, self.cycle)))


class BadWeight(GraphError):
    def __init__(self, task, weight):
        self.task = task
        self.weight = weight
        super().__init__(f"task {task} has weight {weight!r}; weights must be integers >= 1")


class DanglingEdge(GraphError):
    def __init__(self, edge, n):
        self.edge = tuple(edge)
        super().__init__(f"edge {self.edge[0]}->{self.edge[1]} references a task outside 0..{n - 1}")


class InvalidParams(SchedError):
    pass


class ParseError(SchedError):
    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


class ScheduleError(SchedError):
    """Raised by schedule validation; ``tasks`` names the offending task ids."""

    def __init__(self, message, tasks=()):
        self.tasks = tuple(tasks)
        super().__init__(message)


class MissingTask(ScheduleError):
    pass


class DuplicateTask(ScheduleError):
    pass


class ProcessorOverlap(ScheduleError):
    pass


class PrecedenceViolation(ScheduleError):
    pass


class BadDuration(ScheduleError):
    pass


class NotAPartition(ScheduleError):
    pass


class Deadlock(ScheduleError):
    pass


class InvalidProcessorCount(SchedError):
    pass


class TooLarge(SchedError):
    pass


class EmptyInput(SchedError):
    pass
