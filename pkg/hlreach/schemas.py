from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field


# Generator / search configuration
class GenConfig(BaseModel):
    n: int = Field(..., ge=1)
    m: int = Field(..., ge=1)
    max_size: int = Field(..., ge=1)
    bias: float = Field(0.5, ge=0.0, le=1.0)
    seed: int = 0


class SearchConfig(BaseModel):
    neighbor_mode: Literal["on-the-fly", "precomputed"] = "on-the-fly"
    early_global_cutoff: bool = True


class SearchStats(BaseModel):
    queries: int = 0
    pops: int = 0
    pushes: int = 0
    neighbor_scans: int = 0


# Graph schemas
class GraphStats(BaseModel):
    n: int
    m: int
    d: int
    delta: int
    eta_max: int
    eta_avg: float
    total_incidence: int


class CompactionReport(BaseModel):
    m_before: int
    m_after: int
    removed: List[int] = []
    keeper_of: Dict[int, int] = {}


# Index schemas
class ConstructionStats(BaseModel):
    method: str
    total_labels: int = 0
    queue_pushes: int = 0
    neighbor_index_peak: int = 0
    neighbor_index_insertions: int = 0
    skipped_by_mcd: int = 0
    wall_time_s: float = 0.0
    mcd_at_epoch: Optional[List[int]] = None


class MinimizeStats(BaseModel):
    labels_examined: int = 0
    labels_removed: int = 0
    labels_kept: int = 0
    theta: int = 0
    beta: int = 0
    l_v: int = 0
    wall_time_s: float = 0.0


class IndexStats(BaseModel):
    flavor: str
    n: int
    m: int
    total_labels: int
    l_v: int
    mean_labels: float
    theta: int


# Verification schemas
class Mismatch(BaseModel):
    u: int
    v: int
    expected: int
    got: int


class CompletenessReport(BaseModel):
    pairs_checked: int = 0
    mismatches: List[Mismatch] = []

    @property
    def passed(self) -> bool:
        return not self.mismatches


class RedundantLabel(BaseModel):
    vertex: int
    hyperedge: int
    s: int


class NecessityReport(BaseModel):
    labels_checked: int = 0
    redundant: List[RedundantLabel] = []

    @property
    def passed(self) -> bool:
        return not self.redundant


class GraphCheck(BaseModel):
    seed: int
    n: int
    m: int
    pairs: int
    mismatches: int
    fast_labels: int
    minimal_labels: int
    neighbor_index_peak: int
    neighbor_total: int


class SuiteReport(BaseModel):
    graphs: int = 0
    pairs_checked: int = 0
    mismatches: int = 0
    failures: List[GraphCheck] = []
    economy_violations: int = 0
    strict_economy: int = 0


# Benchmark schemas
class EngineLatency(BaseModel):
    engine: str
    queries: int
    mean_us: float
    p50_us: float
    p95_us: float
    max_us: float
    speedup_vs_online: Optional[float] = None


class BenchReport(BaseModel):
    graph: GraphStats
    graph_bytes: int
    build_times_s: Dict[str, float] = {}
    index_labels: Dict[str, int] = {}
    index_bytes: Dict[str, int] = {}
    neighbor_index_peak: int = 0
    latencies: List[EngineLatency] = []
    s_reach_latencies: List[EngineLatency] = []
    disagreements: int = 0

    @property
    def consistent(self) -> bool:
        return self.disagreements == 0


class ScalePoint(BaseModel):
    fraction: float
    n: int
    m: int
    fast_labels: int
    minimal_labels: int
    fast_bytes: int
    minimal_bytes: int
    fast_time_s: float
    minimal_time_s: float
