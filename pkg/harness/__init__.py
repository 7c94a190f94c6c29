from harness.proposition_harness import ConfigurationScan, PropositionHarness

__all__ = ["ConfigurationScan", "PropositionHarness"]
