#ifndef RCK_BDTF_HPP
#define RCK_BDTF_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rck/history_partition.hpp"
#include "rck/profile.hpp"
#include "rck/rational.hpp"

namespace rck {

/// What a conscious player signals each period, as a function of its current ken.
enum class SignalRule {
  none,          // nothing (only timestamps, if enabled)
  heartbeat,     // a constant "I am here"
  ken,           // the sender's current ken label
  initial_cell,  // the sender's initial-partition cell
  posterior      // the sender's current posterior of the target initial conditions
};

std::string to_string(SignalRule r);
SignalRule parse_signal_rule(std::string_view s);

/// Two-player model with unknown birth dates and per-player delivery delays.
/// delays: d[i] is the delay of every signal received by player i.
struct BdtfSpec {
  std::vector<std::string> initial_conditions;
  /// Initial-partition labels per player, one per initial condition.
  std::array<std::vector<std::int64_t>, 2> initial_partition;
  std::size_t z_max = 0;
  std::size_t d_max = 1;
  std::size_t horizon = 1;
  std::array<SignalRule, 2> signals{SignalRule::heartbeat, SignalRule::heartbeat};
  bool timestamps = false;
  /// Single-dimensional restriction with round-trip D: z_alpha = 0, z_beta = d_beta, d_alpha = D - d_beta.
  std::optional<std::size_t> single_dimensional;
  std::size_t margin = 2;
  std::size_t history_cap = 20000;
  /// Posterior signals: the target initial conditions and the prior over O
  /// (empty prior = uniform). Timing parameters are uniform given o.
  std::vector<std::string> posterior_target;
  std::vector<Rational> prior;

  friend bool operator==(const BdtfSpec&, const BdtfSpec&) = default;
};

struct BdtfHistory {
  std::size_t o = 0;
  std::array<std::size_t, 2> z{0, 0};
  std::array<std::size_t, 2> d{1, 1};
  friend bool operator==(const BdtfHistory&, const BdtfHistory&) = default;
};

/// Decoded signal. stamp/quote are -1 when absent.
struct SignalInfo {
  std::int64_t stamp = -1;
  std::int64_t quote = -1;
  std::int64_t payload = 0;
  std::string payload_text;
};

class BdtfFrame {
 public:
  FramePtr frame;
  BdtfSpec spec;
  std::vector<BdtfHistory> histories;

  const BdtfHistory& history(HistoryId h) const { return histories.at(h.index); }
  std::optional<HistoryId> find(const BdtfHistory& h) const;

  /// t - z_i; negative before birth.
  std::int64_t subjective_time(PlayerId i, Point p) const {
    return static_cast<std::int64_t>(p.time) - static_cast<std::int64_t>(histories[p.history.index].z[i.index]);
  }
  /// [tau_i = s]
  Event subjective_time_event(PlayerId i, std::int64_t s) const;
  /// Id of the signal received by i at p (0 = empty signal).
  std::uint32_t received(PlayerId i, Point p) const { return received_[i.index][frame->index_of(p)]; }
  /// Decoding of a signal id sent by `sender` (id 0 is the empty signal).
  const SignalInfo& signal(PlayerId sender, std::uint32_t id) const { return signals_[sender.index].at(id); }
  std::string signal_text(PlayerId sender, std::uint32_t id) const;

  /// Set by the builder.
  std::array<std::vector<std::uint32_t>, 2> received_;
  std::array<std::vector<SignalInfo>, 2> signals_;
};

/// Enumerates histories and computes kens by forward induction on subjective time.
/// Throws CapExceeded, HorizonInadequate (timestamped specs whose round trips
/// do not fit), PreconditionError (invalid spec, cyclic signal dependencies).
BdtfFrame build_bdtf_frame(const BdtfSpec& spec);

/// Number of timing combinations per initial condition.
std::size_t timing_combinations(const BdtfSpec& spec);

std::string history_label(const BdtfSpec& spec, const BdtfHistory& h);

struct NoNewCkReport {
  bool ck_at_zero = false;
  std::optional<std::size_t> first_violation;  // t with (w,t) outside C and (w,t+1) inside
};

/// Requires d_alpha + d_beta > 2 in the history (HypothesisViolation otherwise).
NoNewCkReport verify_no_new_ck(const BdtfFrame& bf, HistoryId w, const Event& phi);

struct RoundTrip {
  HistoryId history;
  PlayerId a_role;  // the later-born player (alpha on ties)
  PlayerId b_role;
  std::size_t t1 = 0, t2 = 0, t3 = 0, Z = 0;
  Event psi_a, psi_b;  // [tau_A = t2], [tau_B = t3]
  Event phi;           // the round-trip fact
  Event sigma_d, sigma_z;
  bool induction_premise = false;  // phi <= E(phi)
  bool sigma_d_ck = false;         // history inside C(sigma_d)
  bool sigma_z_ck = false;
  Profile profile() const;
  bool verified() const { return induction_premise && sigma_d_ck && sigma_z_ck; }
};

/// Requires timestamps; throws HorizonInadequate when an anchor would fall
/// outside the horizon for a history of the round-trip fact.
RoundTrip roundtrip_ck_facts(const BdtfFrame& bf, HistoryId w);

struct SlicePartition {
  PlayerId player;
  Event anchor;
  HistoryPartition cells;
};

/// Histories grouped by i's ken at the (unique) time xi occurs. xi must be
/// singular and i-local and occur in every history of the domain (default: all).
SlicePartition slice_partition(PlayerId i, const Event& xi, const std::optional<HistorySet>& domain = std::nullopt);

struct GetCkTimes {
  RoundTrip roundtrip;
  HistorySet cell;  // component of the history for the round-trip anchors
  std::size_t ell_prime = 0, ell_max = 0;
  std::array<std::size_t, 2> t_hat{0, 0};  // subjective, indexed by player
  Profile anchors;                         // ([tau_alpha = t_hat_alpha], [tau_beta = t_hat_beta])
  Event future_signals;                    // received signals in the stable windows equal the history's
  bool verified = false;                   // history inside ck_at(anchors, future_signals)
};

/// Throws StabilizationNotReached when the slice partitions keep refining
/// within `margin` periods of the horizon.
GetCkTimes getck_times(const BdtfFrame& bf, HistoryId w);

}  // namespace rck

#endif
