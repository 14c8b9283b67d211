"""Team discovery in expert networks.

Find connected teams of experts that cover a required skill set while
minimizing communication cost combined with connector and skill-holder
authority.  The search enumerates every expert as a potential team root,
greedily attaches the cheapest holder of each skill through an exact
2-hop-cover distance index, and ranks the per-root teams; authority-aware
objectives run the same search on a transformed graph whose edge weights
absorb node authorities.
"""

from .corpus import PublicationRecord, ingest_corpus, load_corpus_file, tokenize_title
from .distances import (
    DistanceIndex,
    build_index,
    cached_index,
    dijkstra_distances,
    load_index,
    query_distance,
    reconstruct_path,
    save_index,
)
from .errors import (
    BudgetExceededError,
    ExpertTeamsError,
    InfeasibleProjectError,
    LoadError,
    UnknownSkillError,
    UnreachableError,
)
from .exact import OracleBudget, enumerate_feasible_teams, exact_best_team
from .fixtures import desk_graph_d1
from .network import (
    Expert,
    ExpertNetwork,
    Project,
    jaccard_edge_weight,
    load_network,
    load_network_files,
    normalize,
    skill_index,
    write_network_files,
)
from .objectives import (
    Mode,
    ScoreMode,
    SearchParams,
    Team,
    TransformedNetwork,
    adjusted_skill_cost,
    ca_cc,
    communication_cost,
    connector_authority,
    sa_ca_cc,
    skill_holder_authority,
    team_score,
    transform_graph,
    validate_team,
)
from .search import (
    ScoredTeam,
    TeamFinder,
    TopKList,
    best_team,
    max_authority_team,
    random_baseline,
    top_k_teams,
)
from .synthetic import generate_network, sample_projects

__version__ = "0.1.0"
