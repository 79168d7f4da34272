#ifndef RCK_ATTACK_GAME_HPP
#define RCK_ATTACK_GAME_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rck/profile.hpp"
#include "rck/rational.hpp"

namespace rck {

/// One state of nature. The value `periods` encodes "never" for births and
/// observations, and "never delivered" for delays.
struct StateOfNature {
  std::string name;
  int q = 0;
  std::array<std::size_t, 2> birth{0, 0};
  std::array<std::size_t, 2> observation{0, 0};
  /// delays[i][t]: delay of the message received by i that the other player sends at t.
  std::array<std::vector<std::size_t>, 2> delays;
  friend bool operator==(const StateOfNature&, const StateOfNature&) = default;
};

struct PriorRow {
  StateOfNature state;
  Rational weight;
  friend bool operator==(const PriorRow&, const PriorRow&) = default;
};

struct AttackGameSpec {
  std::size_t periods = 100;
  std::array<std::size_t, 2> deadline{49, 99};
  std::vector<PriorRow> prior;
  std::size_t history_cap = 100000;
  friend bool operator==(const AttackGameSpec&, const AttackGameSpec&) = default;
};

/// The knowledge frame induced by both players sending everything they know every period.
struct GameFrame {
  FramePtr frame;
  AttackGameSpec spec;
  /// Ken of each player shared by all pre-birth points (if any).
  std::array<std::optional<KenId>, 2> pre_birth_ken;

  const StateOfNature& state(HistoryId h) const { return spec.prior.at(h.index).state; }
  bool born(PlayerId i, Point p) const { return p.time >= state(p.history).birth[i.index]; }
  /// [q = 1]
  Event prospect_one() const;
};

GameFrame build_game_frame(const AttackGameSpec& spec);

/// Per player, the kens at which the player initiates an attack (at the first such point of a history).
struct AttackStrategyPair {
  std::array<std::vector<char>, 2> initiate;
  static AttackStrategyPair never(const GameFrame& g);
  /// Initiate at every post-birth ken contained in the event.
  static AttackStrategyPair from_events(const GameFrame& g, const Event& alpha, const Event& beta);
};

struct Outcome {
  std::array<std::optional<std::size_t>, 2> attack_time;
  bool attacked = false;
  bool success = false;
  ExtendedRational utility;  // identical for both players
};

Outcome play(const GameFrame& g, const AttackStrategyPair& s, HistoryId state);

struct Welfare {
  std::vector<ExtendedRational> per_state;
  ExtendedRational expected;  // per-player expected utility
};

Welfare expected_welfare(const GameFrame& g, const AttackStrategyPair& s);
bool verify_never_unsuccessful(const GameFrame& g, const AttackStrategyPair& s);

/// [q=1] & [t_psi_alpha <= deadline_alpha] & [t_psi_beta <= deadline_beta]
Event deadline_fact(const GameFrame& g, const Event& psi_alpha, const Event& psi_beta);

struct SckResult {
  AttackStrategyPair strategies;
  Profile witness;  // first points of the maximal valid attack sets
  Event fact;       // deadline_fact of the witness
  Event ck;         // ck_at(witness, fact)
  std::size_t elimination_rounds = 0;
};

/// Maximal valid attack pair by greatest-fixed-point elimination, cross-validated
/// against the individualized relaxed common knowledge (InvariantViolation on mismatch).
SckResult compute_sck(const GameFrame& g);

struct FrontierReport {
  std::size_t alpha_strategies = 0;
  std::size_t beta_strategies = 0;
  std::size_t never_unsuccessful_pairs = 0;
  bool sck_never_unsuccessful = false;
  bool pareto = false;
  bool nash = false;
  bool positive_welfare_equilibrium = false;
  bool ck_nonempty = false;
  bool corollary = false;       // positive_welfare_equilibrium == ck_nonempty
  bool earliest = false;        // s^CK attacks no later than any never-unsuccessful pair
  bool success_iff_ck = false;  // every never-unsuccessful pair is individualized CK of its own anchors
  bool all_hold() const {
    return sck_never_unsuccessful && pareto && nash && corollary && earliest && success_iff_ck;
  }
};

/// Exhaustive check over outcome-distinct attack strategies. Throws CapExceeded
/// when the number of strategy pairs exceeds `cap`.
FrontierReport brute_force_frontier(const GameFrame& g, std::size_t cap = std::size_t{1} << 20);

}  // namespace rck

#endif
