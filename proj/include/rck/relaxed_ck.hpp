#ifndef RCK_RELAXED_CK_HPP
#define RCK_RELAXED_CK_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rck/history_partition.hpp"
#include "rck/profile.hpp"

namespace rck {

/// diamond(psi) & box(psi -> K_i phi). psi must be i-local.
Event knows_at(PlayerId i, const Event& psi, const Event& phi);

/// Intersection of knows_at over the profile.
Event everyone_at(const Profile& profile, const Event& phi);

enum class CkAlgorithm { kleene, reachability };

CkAlgorithm parse_algorithm(std::string_view name);
std::string_view to_string(CkAlgorithm a);

/// Relaxed common knowledge of phi between the anchored players.
Event ck_at(const Profile& profile, const Event& phi, CkAlgorithm algorithm = CkAlgorithm::reachability);

struct KleeneTrace {
  Event result;
  /// chi_1, chi_2, ... where chi_{m+1} = everyone_at(phi & chi_m), chi_0 = all points.
  std::vector<Event> iterates;
  /// Literal E^m phi for m = 1, 2, ... until a layer repeats (the sequence is
  /// eventually periodic because E is not deflationary).
  std::vector<Event> layers;
};

KleeneTrace ck_at_trace(const Profile& profile, const Event& phi);

/// anchor_i & ck_at(profile, phi), with the local/history/subset postconditions asserted.
Event individualized(PlayerId i, const Profile& profile, const Event& phi,
                     CkAlgorithm algorithm = CkAlgorithm::reachability);

/// Why relaxed common knowledge fails (or holds) in one history.
struct CkDiagnosis {
  enum class Failure { none, occurrence, cooccurrence, outside_phi };
  Failure failure = Failure::none;
  HistoryId history;
  std::size_t component = 0;
  /// co-occurrence: a history in the component where `player`'s anchor is missing.
  std::optional<HistoryId> witness_history;
  std::optional<PlayerId> player;
  /// outside_phi: an anchor point reachable from the history that misses phi.
  std::optional<Point> witness_point;
  std::string message;
};

CkDiagnosis diagnose(const Profile& profile, const Event& phi, HistoryId history);
std::string_view to_string(CkDiagnosis::Failure f);

struct InductionReport {
  bool premise_holds = false;     // phi <= E(phi)
  bool conclusion_holds = false;  // phi <= C(phi)
  std::optional<bool> lemma_premise_holds;     // xi <= E(phi & xi)
  std::optional<bool> lemma_conclusion_holds;  // xi <= C(phi)
};

InductionReport check_induction_rule(const Profile& profile, const Event& phi,
                                     const std::optional<Event>& xi = std::nullopt);

/// For every history of the set: some anchor occurs => every anchor occurs.
bool co_occurs(const Profile& profile, const HistorySet& histories);

struct ReachabilityEdge {
  HistoryId a, b;  // a <= b; a == b is a self-loop
  PlayerId player;
  Point from, to;
};

struct ReachabilityGraph {
  std::size_t history_count = 0;
  std::vector<ReachabilityEdge> edges;  // one witness per unordered pair, sorted by (a, b)
};

ReachabilityGraph reachability_graph(const Profile& profile);
/// Connected components numbered by smallest history index.
HistoryPartition components(const ReachabilityGraph& g);
/// Same components without materializing the edge list.
HistoryPartition reachability_components(const Profile& profile);

struct CooccurrenceReport {
  bool anchors_in_ck = false;     // every anchor is contained in ck_at(profile, phi)
  bool cooccurs_everywhere = false;
};

/// Requires diamond(anchor_l) <= phi; throws HypothesisViolation otherwise.
CooccurrenceReport check_cooccurrence_theorem(const Profile& profile, const Event& phi, PlayerId l);

}  // namespace rck

#endif
