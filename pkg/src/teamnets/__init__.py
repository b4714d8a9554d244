"""teamnets: mine team chat and version-control artifacts into communication
networks, triad censuses, and socio-technical congruence scores."""

from .config import AnomalyThresholds, PipelineConfig, TeamConfig, load_config
from .errors import InputError, ValidationError
from .ingestion import (
    Commit,
    Dataset,
    Diagnostics,
    FeedbackRecord,
    MergeRequest,
    Message,
    MessageLog,
    OutcomeRecord,
    RepoActivity,
    Roster,
    Sprint,
    SprintCalendar,
    TeamData,
    Week,
    assign_week,
    load_dataset,
    parse_chat_export,
    parse_feedback,
    parse_outcomes,
    parse_repo_activity,
    parse_work_logs,
    save_dataset,
)
from .network import (
    CommEvent,
    CommunicationNetwork,
    CoordinationMatrix,
    Window,
    actual_coordination,
    build_network,
    derive_comm_events,
    sprint_window,
    week_window,
    write_edge_list,
)
from .report import (
    AnalysisReport,
    AnomalyFlag,
    CorrelationCell,
    TeamSummary,
    UTestSummary,
    detect_anomalies,
    emit,
    load_report,
    run_pipeline,
)
from .stats import (
    CorrelationResult,
    TrendLine,
    UTestResult,
    mann_whitney_u,
    ols,
    p_stars,
    pearson,
    t_sf,
)
from .stc import (
    AssignmentMatrix,
    DependencyMatrix,
    RequirementMatrix,
    StcScore,
    YearSummary,
    assignment_matrix,
    coordination_requirements,
    dependency_matrix,
    stc_scores,
    weekly_team_scores,
    write_weekly_scores,
    year_summary,
)
from .triad import (
    RelativeTriadCensus,
    TriadCensus,
    census_closed_form,
    mean_weekly_relative_census,
    relative_census,
    triad_census,
)

__version__ = "0.1.0"
