"""
LangGraph Orchestration for Theorem Fuzz Suites
Runs each trial through the generate -> construct -> audit state graph.
"""

import logging
import time
from typing import Any, Dict, List, Optional, TypedDict

from langgraph.graph import StateGraph, END
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

from config import config
from harness.auditor import EnvelopeAuditor
from harness.generator import Dims, InstanceGenerator, TrialConfig
from harness.report import DiscrepancyRow, Report, TrialRecord
from harness.runner import ConstructionRunner
from harness.scenario import Scenario, canonical_kind

# Configure logging
logger = logging.getLogger(__name__)


# Define the state structure
class TrialState(TypedDict):
    """State object shared across the stages of one trial."""
    kind: str                               # Construction kind under test
    master_seed: int                        # Campaign seed
    trial_index: int                        # Trial number, also the RNG stream
    trial_config: TrialConfig               # Dimension ranges and tolerance override
    tol: Optional[float]                    # Numerical tolerance (None -> config default)
    dims: Optional[Dims]                    # Sampled instance sizes
    scenario: Optional[Scenario]            # Generated instance
    skipped: bool                           # Rejection sampling exhausted
    outcome: Any                            # ConstructionResult or Verdict
    error: Optional[str]                    # Exception raised by the construction
    record: Optional[TrialRecord]           # Audited verdict
    discrepancies: List[DiscrepancyRow]     # Stated vs certified constants


class TheoremSuiteGraph:
    """
    Trial orchestration using LangGraph.
    Manages the stages of a fuzz trial and the merge of a whole campaign.
    """

    def __init__(self):
        """Initialize all stages and build the graph."""
        logger.info("=" * 70)
        logger.info("Initializing Theorem Suite")
        logger.info("=" * 70)

        # Initialize stages
        self.generator = InstanceGenerator()
        self.runner = ConstructionRunner()
        self.auditor = EnvelopeAuditor()

        # Build the state graph
        self.graph = self._build_graph()

        logger.info("Theorem Suite Ready")
        logger.info("=" * 70)

    def _build_graph(self):
        """
        Build the LangGraph state graph of one trial.

        Workflow:
        1. Generator: Draw dims and a seeded instance
        2. Runner: Execute the construction (skipped when sampling was exhausted)
        3. Auditor: Grade envelopes and collect discrepancies
        """
        logger.info("Building LangGraph workflow...")

        workflow = StateGraph(TrialState)

        workflow.add_node("generate", self._generate_node)
        workflow.add_node("construct", self._construct_node)
        workflow.add_node("audit", self._audit_node)

        workflow.set_entry_point("generate")

        # A skipped trial goes straight to the auditor
        workflow.add_conditional_edges(
            "generate",
            self._route_after_generate,
            {
                "construct": "construct",
                "audit": "audit",
            }
        )
        workflow.add_edge("construct", "audit")
        workflow.add_edge("audit", END)

        logger.info("LangGraph workflow built successfully")

        return workflow.compile()

    def _generate_node(self, state: TrialState) -> TrialState:
        """Execute instance generator."""
        logger.info("STEP 1: Instance Generator")
        return self.generator.execute(state)

    def _construct_node(self, state: TrialState) -> TrialState:
        """Execute construction runner."""
        logger.info("STEP 2: Construction Runner")
        return self.runner.execute(state)

    def _audit_node(self, state: TrialState) -> TrialState:
        """Execute envelope auditor."""
        logger.info("STEP 3: Envelope Auditor")
        return self.auditor.execute(state)

    def _route_after_generate(self, state: TrialState) -> str:
        if state.get("skipped"):
            logger.info("[ROUTER] → Instance skipped, auditing directly")
            return "audit"
        logger.info("[ROUTER] → Running construction")
        return "construct"

    def run_trial(self, kind: str, trial_config: TrialConfig, trial_index: int) -> TrialState:
        """
        Run one trial through the graph.

        Args:
            kind: Kind id or alias
            trial_config: Campaign configuration
            trial_index: Trial number

        Returns:
            Final state with record and discrepancies
        """
        kind = canonical_kind(kind)
        initial_state: TrialState = {
            "kind": kind,
            "master_seed": trial_config.master_seed,
            "trial_index": trial_index,
            "trial_config": trial_config,
            "tol": trial_config.tol,
            "dims": None,
            "scenario": None,
            "skipped": False,
            "outcome": None,
            "error": None,
            "record": None,
            "discrepancies": [],
        }
        return self.graph.invoke(initial_state)

    def run_suite(self, kind: str, trial_config: TrialConfig) -> Report:
        """
        Run every trial of a campaign and merge the results by trial index.

        Raises:
            UnsupportedKind: If kind is not implemented
        """
        kind = canonical_kind(kind)

        logger.info("#" * 70)
        logger.info(f"[SUITE] {kind}: {trial_config.trials} trials, seed {trial_config.master_seed}")
        logger.info("#" * 70)

        started = time.perf_counter()
        states = [self.run_trial(kind, trial_config, index) for index in range(trial_config.trials)]
        elapsed = time.perf_counter() - started

        records = [state["record"] for state in states]
        discrepancies = [row for state in states for row in state["discrepancies"]]
        report = Report(
            kind=kind,
            master_seed=trial_config.master_seed,
            trials=trial_config.trials,
            settings=_settings(trial_config),
            records=records,
            discrepancies=discrepancies,
            wall_clock=elapsed,
        )
        logger.info(f"[SUITE] passed {report.passed}, failed {report.failed}, skipped {report.skipped}")
        return report


def _settings(trial_config: TrialConfig) -> Dict[str, Any]:
    def span(bounds) -> str:
        return f"{bounds[0]}-{bounds[1]}"

    return {
        "tol": config.tol(trial_config.tol),
        "d": span(trial_config.dim_range),
        "n": span(trial_config.length_range),
        "atoms": span(trial_config.atom_range),
        "fiber": span(trial_config.fiber_range),
        "eigen_kernel": config.EIGEN_KERNEL,
    }


def create_suite_graph() -> TheoremSuiteGraph:
    """
    Factory function to create a theorem suite instance.

    Returns:
        Initialized TheoremSuiteGraph
    """
    return TheoremSuiteGraph()


def run_theorem_suite(kind: str, trial_config: TrialConfig) -> Report:
    """Run a fuzz campaign for one construction kind."""
    return create_suite_graph().run_suite(kind, trial_config)


# Example usage
if __name__ == "__main__":
    from harness.report import render_text

    logging.basicConfig(level=config.LOG_LEVEL, format=config.LOG_FORMAT)
    suite = create_suite_graph()
    for kind in ("frame-check", "2.1", "3.1i"):
        print(render_text(suite.run_suite(kind, TrialConfig(master_seed=7, trials=5))))
