#ifndef RCK_SCENARIO_HPP
#define RCK_SCENARIO_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "rck/attack_game.hpp"
#include "rck/bdtf.hpp"
#include "rck/probability.hpp"

namespace rck::scenario {

using Json = nlohmann::ordered_json;

/// Malformed or schema-invalid scenario content (exit status 2).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int { kOk = 0, kMismatch = 1, kSchema = 2, kExecution = 3 };

Json to_json(const Frame& f);
FramePtr frame_from_json(const Json& j);
Json to_json(const ProbFrame& pf);
ProbFrame prob_frame_from_json(const Json& j);
Json to_json(const BdtfSpec& s);
BdtfSpec bdtf_spec_from_json(const Json& j);
Json to_json(const AttackGameSpec& g);
/// Explicit rows, or {"generator": "example1" | "example2" | "example3" | "tiny", ...}.
AttackGameSpec game_spec_from_json(const Json& j);

/// Per-history sorted time lists, histories without members omitted.
Json event_to_json(const Event& e);

struct Options {
  std::string algorithm = "both";  // kleene | reachability | both
  int verbosity = 1;
  std::uint64_t seed = 0;
  std::size_t cap = std::size_t{1} << 20;
};

struct RunOutcome {
  int exit_code = kOk;
  Json report;
  std::string summary;
};

/// Validates, then executes the queries in order. Never throws for scenario problems;
/// they are mapped to exit codes and described in the summary.
RunOutcome run(const Json& scenario, const Options& options);
RunOutcome run_text(const std::string& text, const Options& options);

/// The shipped fixtures as ready-to-check scenarios, keyed by file stem.
std::map<std::string, Json> shipped_examples();

}  // namespace rck::scenario

#endif
