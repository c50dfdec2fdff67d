"""
Core Pipeline Framework

Post-editing one sentence pair runs as a short chain of steps over a shared
ProcessingContext: pairs are extracted, judged, then written back into the
target. Steps declare which steps must precede them, the pipeline checks that
ordering before it runs, and failures are recorded on the context or raised.
"""

import logging
import time
from abc import ABC, abstractmethod
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, TypeVar

from ..models import Direction, NumericPair

T = TypeVar("T")
R = TypeVar("R")

StepHook = Callable[["PipelineStep", "ProcessingContext"], None]


@dataclass
class ProcessingContext:
    """One sentence pair on its way through post-editing."""

    source: str
    target: str
    direction: Direction
    style: str = "digits"

    pairs: List[NumericPair] = field(default_factory=list)
    edited: Optional[str] = None
    edit_count: int = 0

    # Step name -> seconds, in execution order
    step_timings: Dict[str, float] = field(default_factory=dict)
    properties: Dict[str, Any] = field(default_factory=dict)
    errors: List[Dict[str, Any]] = field(default_factory=list)

    def add_error(self, error: Exception, step: Optional[str] = None,
                  pair: Optional[NumericPair] = None):
        """Record a failure, optionally tied to the pair being processed."""
        self.errors.append({
            'error': str(error),
            'type': type(error).__name__,
            'step': step,
            'source_surface': pair.source.surface if pair is not None else None,
        })

    def verdict_counts(self) -> Dict[str, int]:
        """Pairs per verdict kind; pairs not yet verified count as 'pending'."""
        tally = Counter(p.verdict.kind.value if p.verdict else 'pending' for p in self.pairs)
        return dict(sorted(tally.items()))

    def get_status_summary(self) -> Dict[str, Any]:
        return {
            'direction': self.direction.value,
            'pairs': len(self.pairs),
            'verdicts': self.verdict_counts(),
            'edit_count': self.edit_count,
            'errors_count': len(self.errors),
            'elapsed_time': sum(self.step_timings.values()),
            'status': 'failed' if self.errors else
                      'completed' if self.edited is not None else 'partial',
        }


class PipelineStep(ABC):
    """A unit of work over a ProcessingContext."""

    # Names of steps that must run earlier in the same pipeline
    requires: Tuple[str, ...] = ()

    def __init__(self, name: str, description: Optional[str] = None):
        self.name = name
        self.description = description or name
        self.logger = logging.getLogger(f"pipeline.{name}")

    @abstractmethod
    def execute(self, context: ProcessingContext) -> ProcessingContext:
        """Run the step and return the (possibly replaced) context."""

    def can_execute(self, context: ProcessingContext) -> bool:
        return True

    def get_requirements(self) -> List[str]:
        return list(self.requires)

    def on_error(self, context: ProcessingContext, error: Exception):
        self.logger.error(f"Error in step {self.name}: {error}")
        context.add_error(error, step=self.name)


class Pipeline:
    """Ordered steps plus the error policy they run under."""

    def __init__(self, name: str, description: Optional[str] = None):
        self.name = name
        self.description = description or name
        self.steps: List[PipelineStep] = []
        self.logger = logging.getLogger(f"pipeline.{name}")

        # Record step failures on the context instead of raising
        self.continue_on_error = True
        self.on_step_complete: Optional[StepHook] = None

    def add_step(self, step: PipelineStep) -> 'Pipeline':
        self.steps.append(step)
        return self

    def validate_pipeline(self) -> List[str]:
        """Configuration problems, empty when the pipeline can run."""
        if not self.steps:
            return ["Pipeline has no steps"]

        issues = []
        repeated = sorted(name for name, n in Counter(s.name for s in self.steps).items() if n > 1)
        if repeated:
            issues.append(f"Duplicate step names: {repeated}")

        earlier: List[str] = []
        for step in self.steps:
            missing = sorted(set(step.get_requirements()).difference(earlier))
            if missing:
                issues.append(f"Step '{step.name}' missing requirements: {missing}")
            earlier.append(step.name)
        return issues

    def execute(self, context: ProcessingContext) -> ProcessingContext:
        """Run every step over the context.

        Raises:
            ValueError: the pipeline is misconfigured
            Exception: whatever a step raised, when continue_on_error is off
        """
        issues = self.validate_pipeline()
        if issues:
            raise ValueError(f"Pipeline validation failed: {issues}")

        self.logger.debug(f"Running '{self.name}' on a {context.direction.value} pair")
        for step in self.steps:
            if not step.can_execute(context):
                self.logger.warning(f"Skipping step {step.name}: preconditions not met")
                continue
            started = time.perf_counter()
            try:
                context = step.execute(context)
            except Exception as e:
                step.on_error(context, e)
                if not self.continue_on_error:
                    raise
                self.logger.warning(f"Step {step.name} failed, continuing: {e}")
                continue
            finally:
                context.step_timings[step.name] = time.perf_counter() - started
            if self.on_step_complete:
                self.on_step_complete(step, context)

        self.logger.debug(f"'{self.name}' finished with {len(context.pairs)} pairs, "
                          f"{context.edit_count} edits")
        return context

    def get_pipeline_info(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'description': self.description,
            'continue_on_error': self.continue_on_error,
            'steps_count': len(self.steps),
            'steps': [
                {'name': s.name, 'description': s.description, 'requirements': s.get_requirements()}
                for s in self.steps
            ],
        }


class PipelineBuilder:
    """Fluent construction of post-edit pipelines."""

    def __init__(self, name: str, description: Optional[str] = None):
        self.pipeline = Pipeline(name, description)

    def step(self, step: PipelineStep) -> 'PipelineBuilder':
        self.pipeline.add_step(step)
        return self

    def extract_pairs(self, extractor="rules", name: str = "extract_pairs",
                      **extractor_options) -> 'PipelineBuilder':
        """Add pair extraction; extractor is a registry name or an instance."""
        from .steps import ExtractPairsStep
        return self.step(ExtractPairsStep(extractor, name, **extractor_options))

    def verify_pairs(self, name: str = "verify_pairs") -> 'PipelineBuilder':
        from .steps import VerifyPairsStep
        return self.step(VerifyPairsStep(name))

    def apply_edits(self, name: str = "apply_edits") -> 'PipelineBuilder':
        from .steps import ApplyEditsStep
        return self.step(ApplyEditsStep(name))

    def configure(self, continue_on_error: Optional[bool] = None) -> 'PipelineBuilder':
        if continue_on_error is not None:
            self.pipeline.continue_on_error = continue_on_error
        return self

    def build(self) -> Pipeline:
        return self.pipeline


def process_batch_parallel(items: Sequence[T], process_func: Callable[[T], R],
                           max_workers: int = 4) -> List[R]:
    """Apply process_func to every item on a thread pool; results keep input order."""
    if max_workers < 1:
        raise ValueError("max_workers must be at least 1")
    if max_workers == 1 or len(items) <= 1:
        return [process_func(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(max_workers, len(items))) as executor:
        return list(executor.map(process_func, items))


def create_pipeline(name: str, description: Optional[str] = None) -> PipelineBuilder:
    return PipelineBuilder(name, description)
